#pragma once

#include <optional>

namespace hkbec::free_gas {

/// Ideal Bose gas in a Neumann cube of side L at thermal wavelength lambda.
/// The occupation sum is N = sum_j e^{j mu beta} theta(j lambda^2 / L^2)^3 with
/// theta(alpha) = sum_{n>=0} e^{-pi alpha n^2}.
struct FreeGasState {
  double L = 1.0;
  double lambda = 1.0;
  double mu_beta = -1.0;                 // must be <= 0
  std::optional<long> term_cutoff;        // keep only j <= term_cutoff; required at mu_beta = 0

  void validate() const;
};

/// theta(alpha) = sum_{n>=0} exp(-pi alpha n^2)
double theta(double alpha);

/// Direct summation over eigenmodes.
double particle_number_direct(const FreeGasState& state);

/// Poisson-resummed form: bulk term (L/2 lambda)^3 g_{3/2}(e^{mu beta}) plus the
/// image and lower-dimensional corrections of the exact one-dimensional dual.
double particle_number_poisson(const FreeGasState& state);

/// (L / (2 lambda))^3, the coefficient of g_{3/2} in the Poisson form.
double bulk_coefficient(double L, double lambda);

/// Bulk critical number (L / (2 lambda))^3 zeta(3/2).
double critical_number(double L, double lambda);

/// Occupancy e^{mu beta} / (1 - e^{mu beta}) of the constant mode.
double ground_mode_occupancy(double mu_beta);

struct FugacitySolution {
  double mu_beta = 0.0;
  double achieved = 0.0;     // particle number at mu_beta
  int iterations = 0;
  bool condensed = false;    // N_target above the bulk critical number
  bool saturated = false;    // N_target not reachable inside the bracket
};

/// Bisection for mu beta in (-50, -1e-16).
FugacitySolution solve_fugacity(double n_target, double L, double lambda);

struct CondensateDecomposition {
  double n_bulk = 0.0;
  double n_condensate = 0.0;
  double residual = 0.0;
  double c_estimate = 0.0;   // residual * lambda^2 / L^2
  double mu_beta = 0.0;
};

/// N = n_bulk + N_0 + residual at the solved mu beta. Rejects subcritical input.
CondensateDecomposition condensate_decomposition(double n_target, double L, double lambda);

}  // namespace hkbec::free_gas
