#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hkbec/bogoliubov.hpp"
#include "hkbec/geometry.hpp"

namespace hkbec::bounds {

class EtaParameter {
 public:
  explicit EtaParameter(double eta);
  double value() const { return eta_; }

 private:
  double eta_;
};

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// |Tr e^{s Delta_D} - V (4 pi s)^{-3/2}| <= e^{3/2} A / (2 (4 pi s)) on a box.
InequalityCheck angelescu_nenciu_check(const geometry::ConvexDomain& domain, double s);

/// Interior points and diffusion times on which the Brown ratio is sampled.
struct BrownGrid {
  std::vector<geometry::Point3> points;
  std::vector<double> times;

  /// n_line points on the segment from a face centre towards the centre and
  /// n_line on the body diagonal, at fractions log-spaced in [0.01, 0.49] of each
  /// side; n_times times log-spaced in [1e-3, 1].
  static BrownGrid standard(const geometry::ConvexDomain& domain, std::size_t n_line = 20,
                            std::size_t n_times = 20);
};

/// |K_s(X,X) - (4 pi s)^{-3/2}| / brown_envelope(dist(X), s, eta), Neumann box.
double brown_ratio(const geometry::Point3& x, const geometry::ConvexDomain& domain, double s,
                   EtaParameter eta);

/// Maximum of brown_ratio over the grid. Needs at least 20 points and 20 times.
double estimate_brown_constant(const geometry::ConvexDomain& domain, EtaParameter eta,
                               const BrownGrid& grid);

struct DominanceCheck {
  double constant = 0.0;
  double max_ratio = 0.0;
  std::size_t violations = 0;
  std::size_t evaluated = 0;
};

/// Counts grid points where brown_ratio exceeds `constant`.
DominanceCheck check_brown_dominance(const geometry::ConvexDomain& domain, EtaParameter eta,
                                     const BrownGrid& grid, double constant);

/// a^{2 + eta/4} A D^{eta/2}
double energy_envelope(const geometry::ConvexDomain& domain, double a, EtaParameter eta);

/// a^{1 + eta/2} A D^{eta/2} / V
double depletion_envelope_zero_T(const geometry::ConvexDomain& domain, double a,
                                 EtaParameter eta);

struct FiniteTEnvelope {
  double linear = 0.0;      // a D^{-(1 - eta/4)}
  double quadratic = 0.0;   // (a^2 / beta) D^{-(1 - eta/4)}
  double total() const { return linear + quadratic; }
};
FiniteTEnvelope depletion_envelope_finite_T(const geometry::ConvexDomain& domain, double a,
                                            double beta, EtaParameter eta);

enum class SweepQuantity {
  trace_density,
  energy_density,
  depletion_zero_T,
  depletion_finite_T,
  free_gas_residual,
};

std::string to_string(SweepQuantity q);
std::optional<SweepQuantity> parse_quantity(const std::string& name);

struct SweepConfig {
  bogoliubov::BogoliubovParams params{0.5, 1.0, 1.0};
  bogoliubov::QuadratureConfig quadrature{};
  double trace_time = 1.0;                // s for trace_density
  double free_gas_density_ratio = 2.0;    // N / N_critical for free_gas_residual
  unsigned jobs = 1;

  void validate() const;
};

struct LogLogFit {
  double exponent = 0.0;   // p in diff ~ size^{-p}
  double r2 = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares of log(diff) against log(size).
LogLogFit fit_power_law(std::span<const double> sizes, std::span<const double> diffs);

struct ConvergenceReport {
  SweepQuantity quantity = SweepQuantity::trace_density;
  double eta = 0.0;
  std::vector<double> sizes;
  std::vector<double> values;
  double bulk_ref = 0.0;
  std::vector<double> abs_diffs;
  std::vector<double> envelopes;
  std::vector<double> ratios;            // abs_diff / envelope
  std::vector<double> c_estimates;       // free_gas_residual only
  double fitted_exponent = 0.0;
  double fit_r2 = 0.0;
  std::size_t fit_points = 0;
  double envelope_constant = 0.0;        // ratio at the smallest size (calibration)
  double max_ratio = 0.0;                // max ratio over all sizes
  std::vector<std::size_t> violations;   // indices with diff > envelope_constant * envelope
  double guaranteed_exponent = 0.0;      // decay exponent of the per-volume envelope
  double noise_floor = 0.0;
  bool floor_limited = false;

  bool dominance_holds() const { return violations.empty(); }
};

/// Evaluates `quantity` on cubes of the given sides (or L/lambda for the free
/// gas, lambda = 1), subtracts the bulk reference and fits the decay exponent.
ConvergenceReport convergence_sweep(SweepQuantity quantity, std::span<const double> sizes,
                                    const SweepConfig& config, EtaParameter eta);

}  // namespace hkbec::bounds
