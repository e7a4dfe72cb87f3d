#pragma once

#include <cstddef>
#include <functional>

namespace hkbec::quad {

using Integrand = std::function<double(double)>;

struct Estimate {
  double value = 0.0;
  double error = 0.0;   // absolute error estimate reported by the rule
  double l1 = 0.0;      // integral of |f|, used for relative error checks
  std::size_t levels = 0;
};

/// Finite interval with possible integrable endpoint singularities (tanh-sinh).
Estimate endpoint_singular(const Integrand& f, double a, double b, double rel_tol);

/// Smooth integrand on a finite interval (adaptive 61-point Gauss-Kronrod).
Estimate smooth(const Integrand& f, double a, double b, double rel_tol);

/// [a, inf) with exponential or algebraic decay (exp-sinh).
Estimate half_line(const Integrand& f, double a, double rel_tol);

/// True when the estimate meets rel_tol relative to both |value| and the L1 norm.
bool converged(const Estimate& e, double rel_tol);

/// Wynn epsilon acceleration of a sequence of partial sums. Returns the
/// accelerated limit and an error estimate from the last two diagonal entries.
struct Accelerated {
  double value = 0.0;
  double error = 0.0;
};
Accelerated wynn_epsilon(const double* partial_sums, std::size_t n);

}  // namespace hkbec::quad
