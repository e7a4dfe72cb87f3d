#include "hkbec/free_gas.hpp"

#include <cmath>
#include <numbers>

#include "hkbec/error.hpp"
#include "hkbec/heat_kernel.hpp"
#include "hkbec/specfun.hpp"

namespace hkbec::free_gas {
namespace {

using heat_kernel::Representation;

constexpr double kPi = std::numbers::pi;
constexpr double kTailTol = 1e-17;
constexpr long kMaxJ = 50'000'000;
constexpr double kBracketLo = -50.0;
constexpr double kBracketHi = -1e-16;

// theta(alpha) is the unit-interval Neumann trace at s = alpha / pi.
heat_kernel::IntervalTraceParts theta_parts(double alpha, Representation repr) {
  heat_kernel::TraceQuery q;
  q.s = alpha / kPi;
  q.representation = repr;
  return heat_kernel::interval_trace_parts(1.0, q);
}

// theta^3 - 1 from the excited part e = theta - 1.
double cube_minus_one(double e) { return e * (3.0 + e * (3.0 + e)); }

struct JSum {
  double value = 0.0;
  long last_j = 0;
};

// sum_{j>=1} z^j (theta_j^3 - 1) until the tail bound
// (theta_J^3 - 1) z^J q/(1-q), q = z e^{-pi alpha}, is negligible. Uses that
// (theta^3 - 1)(x) e^{pi x} is nonincreasing. `summand` returns the j-th term
// and the current theta^3 - 1.
template <class Summand>
JSum excited_series(double mu_beta, double alpha, std::optional<long> cutoff, Summand summand) {
  JSum out;
  const double q = std::exp(mu_beta - kPi * alpha);
  const double geo = q / -std::expm1(mu_beta - kPi * alpha);
  const long jmax = cutoff ? *cutoff : kMaxJ;
  for (long j = 1; j <= jmax; ++j) {
    const auto [term, excess] = summand(j);
    out.value += term;
    out.last_j = j;
    if (cutoff) continue;
    const double tail = excess * std::exp(j * mu_beta) * geo;
    if (tail <= kTailTol * std::abs(out.value) || excess == 0.0) return out;
  }
  if (!cutoff) throw CapError("free gas: j-sum exceeded its term cap");
  return out;
}

// sum_{j>J} z^j = z^{J+1} / (1 - z)
double geometric_tail(double mu_beta, long J) {
  return std::exp((J + 1) * mu_beta) / -std::expm1(mu_beta);
}

}  // namespace

void FreeGasState::validate() const {
  detail::require(std::isfinite(L) && L > 0.0, "FreeGasState: L must be positive");
  detail::require(std::isfinite(lambda) && lambda > 0.0, "FreeGasState: lambda must be positive");
  detail::require(std::isfinite(mu_beta) && mu_beta <= 0.0,
                  "FreeGasState: mu_beta must be <= 0");
  detail::require(!term_cutoff || *term_cutoff >= 1, "FreeGasState: term_cutoff must be >= 1");
  if (mu_beta == 0.0 && !term_cutoff) {
    throw DivergenceError("free gas: mu_beta = 0 diverges without a term cutoff");
  }
}

double theta(double alpha) {
  detail::require(std::isfinite(alpha) && alpha > 0.0, "theta: alpha must be positive");
  return theta_parts(alpha, Representation::automatic).total();
}

double bulk_coefficient(double L, double lambda) {
  const double r = L / (2.0 * lambda);
  return r * r * r;
}

double critical_number(double L, double lambda) {
  detail::require(L > 0.0 && lambda > 0.0, "critical_number: lengths must be positive");
  return bulk_coefficient(L, lambda) * specfun::bose_g(1.5, 1.0);
}

double particle_number_direct(const FreeGasState& st) {
  st.validate();
  const double alpha = st.lambda * st.lambda / (st.L * st.L);
  const JSum ex = excited_series(st.mu_beta, alpha, st.term_cutoff, [&](long j) {
    const double e = theta_parts(j * alpha, Representation::spectral).excited;
    const double excess = cube_minus_one(e);
    return std::pair{std::exp(j * st.mu_beta) * excess, excess};
  });
  // sum_j z^j theta_j^3 = sum_j z^j + sum_j z^j (theta_j^3 - 1)
  double ground;
  if (st.term_cutoff) {
    ground = 0.0;
    for (long j = 1; j <= *st.term_cutoff; ++j) ground += std::exp(j * st.mu_beta);
  } else {
    ground = geometric_tail(st.mu_beta, 0);
  }
  return ground + ex.value;
}

double particle_number_poisson(const FreeGasState& st) {
  st.validate();
  const double alpha = st.lambda * st.lambda / (st.L * st.L);
  const double W = bulk_coefficient(st.L, st.lambda);
  const double z = std::exp(st.mu_beta);

  // theta_j^3 - w_j^3 = c (3 w^2 + 3 w c + c^2), theta_j = w_j + c_j.
  const JSum corr = excited_series(st.mu_beta, alpha, st.term_cutoff, [&](long j) {
    const auto p = theta_parts(j * alpha, Representation::image);
    const double w = p.weyl, c = p.boundary;
    const double term = std::exp(j * st.mu_beta) * c * (3.0 * w * w + c * (3.0 * w + c));
    return std::pair{term, cube_minus_one(p.excited)};
  });
  const long J = corr.last_j;

  if (st.term_cutoff) {
    const double partial = specfun::bose_g(1.5, z) - specfun::bose_g_tail(1.5, z, J);
    return W * partial + corr.value;
  }
  // Beyond J, theta_j = 1 to working precision, so each term is z^j (1 - w_j^3).
  return W * specfun::bose_g(1.5, z) + corr.value + geometric_tail(st.mu_beta, J) -
         W * specfun::bose_g_tail(1.5, z, J);
}

FugacitySolution solve_fugacity(double n_target, double L, double lambda) {
  detail::require(std::isfinite(n_target) && n_target > 0.0,
                  "solve_fugacity: N_target must be positive");
  detail::require(L > 0.0 && lambda > 0.0, "solve_fugacity: lengths must be positive");
  const auto number = [&](double mb) {
    FreeGasState st;
    st.L = L;
    st.lambda = lambda;
    st.mu_beta = mb;
    return particle_number_direct(st);
  };

  FugacitySolution sol;
  sol.condensed = n_target > critical_number(L, lambda);
  const double n_hi = number(kBracketHi);
  if (n_target >= n_hi) {
    sol.mu_beta = kBracketHi;
    sol.achieved = n_hi;
    sol.saturated = n_target > n_hi * (1.0 + 1e-8);
    return sol;
  }
  const double n_lo = number(kBracketLo);
  if (n_target <= n_lo) {
    throw InvalidArgument("solve_fugacity: N_target lies below the bracket at mu_beta = -50");
  }

  // N increases with mu_beta; bisect in y = log(-mu_beta), decreasing in N.
  double ylo = std::log(-kBracketHi), yhi = std::log(-kBracketLo);
  double mb = 0.0, n = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double y = 0.5 * (ylo + yhi);
    mb = -std::exp(y);
    n = number(mb);
    sol.iterations = it + 1;
    if (std::abs(n - n_target) <= 1e-13 * n_target) break;
    if (n > n_target) {
      ylo = y;
    } else {
      yhi = y;
    }
    if (yhi - ylo <= 1e-16 * std::max(1.0, std::abs(y))) break;
  }
  if (std::abs(n - n_target) > 1e-8 * n_target) {
    throw ToleranceError("solve_fugacity: bisection did not reach 1e-8 relative accuracy");
  }
  sol.mu_beta = mb;
  sol.achieved = n;
  return sol;
}

double ground_mode_occupancy(double mu_beta) {
  detail::require(mu_beta < 0.0, "ground_mode_occupancy: mu_beta must be negative");
  return std::exp(mu_beta) / -std::expm1(mu_beta);
}

CondensateDecomposition condensate_decomposition(double n_target, double L, double lambda) {
  if (!(n_target > critical_number(L, lambda))) {
    throw RegimeError("condensate_decomposition: N_target is not above the critical number");
  }
  const FugacitySolution sol = solve_fugacity(n_target, L, lambda);
  CondensateDecomposition d;
  d.mu_beta = sol.mu_beta;
  d.n_bulk = bulk_coefficient(L, lambda) * specfun::bose_g(1.5, std::exp(sol.mu_beta));
  d.n_condensate = ground_mode_occupancy(sol.mu_beta);
  d.residual = n_target - d.n_bulk - d.n_condensate;
  d.c_estimate = d.residual * lambda * lambda / (L * L);
  return d;
}

}  // namespace hkbec::free_gas
