#include "hkbec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include "hkbec/error.hpp"
#include "hkbec/free_gas.hpp"
#include "hkbec/heat_kernel.hpp"

namespace hkbec::bounds {
namespace {

using geometry::ConvexDomain;
namespace hk = heat_kernel;
namespace bg = bogoliubov;

constexpr double kPi = std::numbers::pi;

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = lo * std::pow(hi / lo, f);
  }
  return v;
}

void require_box(const ConvexDomain& d, const char* what) {
  if (!d.is_box_like()) throw InvalidArgument(std::string(what) + ": needs a box or cube");
}

struct SizePoint {
  double value = 0.0;
  double diff = 0.0;
  double envelope = 0.0;
  double c_estimate = 0.0;
};

double area_law(const ConvexDomain& d, double eta) {
  return d.boundary_area() * std::pow(d.diameter(), 0.5 * eta) / d.volume();
}

SizePoint evaluate(SweepQuantity quantity, double size, const SweepConfig& cfg, double bulk,
                   EtaParameter eta) {
  SizePoint out;
  const double a = cfg.params.a();
  switch (quantity) {
    case SweepQuantity::trace_density: {
      const ConvexDomain d = ConvexDomain::cube(size);
      const double ex = hk::box_trace_density_excess(d, cfg.trace_time);
      out.value = bulk + ex;
      out.diff = std::abs(ex);
      out.envelope = d.boundary_area() / d.volume() / (4.0 * kPi * cfg.trace_time);
      break;
    }
    case SweepQuantity::energy_density: {
      const ConvexDomain d = ConvexDomain::cube(size);
      const double ex = bg::ground_state_energy_density_excess(d, cfg.params, cfg.quadrature);
      out.value = bulk + ex;
      out.diff = std::abs(ex);
      out.envelope = energy_envelope(d, a, eta) / d.volume();
      break;
    }
    case SweepQuantity::depletion_zero_T: {
      const ConvexDomain d = ConvexDomain::cube(size);
      const double ex = bg::depletion_zero_T_excess(d, cfg.params, cfg.quadrature);
      out.value = bulk + ex;
      out.diff = std::abs(ex);
      out.envelope = depletion_envelope_zero_T(d, a, eta);
      break;
    }
    case SweepQuantity::depletion_finite_T: {
      const ConvexDomain d = ConvexDomain::cube(size);
      out.value = bg::depletion_finite_T(d, cfg.params, cfg.quadrature).value;
      out.diff = std::abs(out.value - bulk);
      out.envelope = depletion_envelope_finite_T(d, a, *cfg.params.beta, eta).total();
      break;
    }
    case SweepQuantity::free_gas_residual: {
      const ConvexDomain d = ConvexDomain::cube(size);
      const double n = cfg.free_gas_density_ratio * free_gas::critical_number(size, 1.0);
      const free_gas::CondensateDecomposition dec = free_gas::condensate_decomposition(n, size, 1.0);
      out.value = dec.residual / d.volume();
      out.diff = std::abs(out.value);
      out.c_estimate = dec.c_estimate;
      out.envelope = area_law(d, eta.value());
      break;
    }
  }
  return out;
}

double bulk_reference(SweepQuantity quantity, const SweepConfig& cfg) {
  switch (quantity) {
    case SweepQuantity::trace_density: return hk::bulk_kernel(cfg.trace_time, 3);
    case SweepQuantity::energy_density: return bg::bulk_energy_density(cfg.params);
    case SweepQuantity::depletion_zero_T: return bg::bulk_depletion_zero_T(cfg.params);
    case SweepQuantity::depletion_finite_T:
      return bg::bulk_depletion_finite_T(cfg.params, cfg.quadrature);
    case SweepQuantity::free_gas_residual: return 0.0;
  }
  return 0.0;
}

double envelope_exponent(SweepQuantity quantity, double eta) {
  switch (quantity) {
    case SweepQuantity::trace_density: return 1.0;
    case SweepQuantity::depletion_finite_T: return 1.0 - 0.25 * eta;
    default: return 1.0 - 0.5 * eta;
  }
}

}  // namespace

EtaParameter::EtaParameter(double eta) : eta_(eta) {
  detail::require(std::isfinite(eta) && eta > 0.0 && eta < 1.0, "eta must lie in (0, 1)");
}

InequalityCheck angelescu_nenciu_check(const ConvexDomain& domain, double s) {
  require_box(domain, "angelescu_nenciu_check");
  detail::require(std::isfinite(s) && s > 0.0, "angelescu_nenciu_check: s must be positive");
  InequalityCheck c;
  c.lhs = std::abs(hk::box_trace_density_excess(domain, s, hk::Boundary::dirichlet)) *
          domain.volume();
  c.rhs = std::exp(1.5) * domain.boundary_area() / (2.0 * 4.0 * kPi * s);
  c.holds = c.lhs <= c.rhs;
  return c;
}

BrownGrid BrownGrid::standard(const ConvexDomain& domain, std::size_t n_line, std::size_t n_times) {
  require_box(domain, "BrownGrid");
  detail::require(n_line >= 1 && n_times >= 1, "BrownGrid: sizes must be positive");
  const auto& l = domain.sides();
  BrownGrid g;
  for (double f : log_spaced(0.01, 0.49, n_line)) {
    g.points.push_back({f * l[0], 0.5 * l[1], 0.5 * l[2]});
  }
  for (double f : log_spaced(0.01, 0.49, n_line)) {
    g.points.push_back({f * l[0], f * l[1], f * l[2]});
  }
  g.times = log_spaced(1e-3, 1.0, n_times);
  return g;
}

double brown_ratio(const geometry::Point3& x, const ConvexDomain& domain, double s,
                   EtaParameter eta) {
  // |K - bulk| / envelope = scaled e^{-d^2/s} bulk / ((d/sqrt s)^eta e^{-d^2/s} bulk)
  const hk::ScaledExcess ex = hk::diag_relative_excess(x, domain, s);
  return ex.scaled / std::pow(ex.distance / std::sqrt(s), eta.value());
}

double estimate_brown_constant(const ConvexDomain& domain, EtaParameter eta,
                               const BrownGrid& grid) {
  detail::require(grid.points.size() >= 20 && grid.times.size() >= 20,
                  "estimate_brown_constant: grid must be at least 20 x 20");
  double c = 0.0;
  for (const auto& x : grid.points) {
    for (double s : grid.times) c = std::max(c, brown_ratio(x, domain, s, eta));
  }
  if (!std::isfinite(c)) throw DivergenceError("estimate_brown_constant: ratio is not finite");
  return c;
}

DominanceCheck check_brown_dominance(const ConvexDomain& domain, EtaParameter eta,
                                     const BrownGrid& grid, double constant) {
  DominanceCheck out;
  out.constant = constant;
  for (const auto& x : grid.points) {
    for (double s : grid.times) {
      const double r = brown_ratio(x, domain, s, eta);
      out.max_ratio = std::max(out.max_ratio, r);
      ++out.evaluated;
      if (!(r <= constant)) ++out.violations;
    }
  }
  return out;
}

double energy_envelope(const ConvexDomain& domain, double a, EtaParameter eta) {
  detail::require(a > 0.0, "energy_envelope: a must be positive");
  const double e = eta.value();
  return std::pow(a, 2.0 + 0.25 * e) * domain.boundary_area() *
         std::pow(domain.diameter(), 0.5 * e);
}

double depletion_envelope_zero_T(const ConvexDomain& domain, double a, EtaParameter eta) {
  detail::require(a > 0.0, "depletion_envelope_zero_T: a must be positive");
  return std::pow(a, 1.0 + 0.5 * eta.value()) * area_law(domain, eta.value());
}

FiniteTEnvelope depletion_envelope_finite_T(const ConvexDomain& domain, double a, double beta,
                                            EtaParameter eta) {
  detail::require(a > 0.0, "depletion_envelope_finite_T: a must be positive");
  detail::require(beta > 0.0, "depletion_envelope_finite_T: beta must be positive");
  const double decay = std::pow(domain.diameter(), -(1.0 - 0.25 * eta.value()));
  return {a * decay, a * a / beta * decay};
}

std::string to_string(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::trace_density: return "trace_density";
    case SweepQuantity::energy_density: return "energy_density";
    case SweepQuantity::depletion_zero_T: return "depletion_zero_T";
    case SweepQuantity::depletion_finite_T: return "depletion_finite_T";
    case SweepQuantity::free_gas_residual: return "free_gas_residual";
  }
  return "unknown";
}

std::optional<SweepQuantity> parse_quantity(const std::string& name) {
  for (auto q : {SweepQuantity::trace_density, SweepQuantity::energy_density,
                 SweepQuantity::depletion_zero_T, SweepQuantity::depletion_finite_T,
                 SweepQuantity::free_gas_residual}) {
    if (to_string(q) == name) return q;
  }
  return std::nullopt;
}

void SweepConfig::validate() const {
  params.validate();
  quadrature.validate();
  detail::require(trace_time > 0.0, "SweepConfig: trace_time must be positive");
  detail::require(free_gas_density_ratio > 1.0,
                  "SweepConfig: free_gas_density_ratio must exceed 1 (condensed regime)");
  detail::require(jobs >= 1, "SweepConfig: jobs must be >= 1");
}

LogLogFit fit_power_law(std::span<const double> sizes, std::span<const double> diffs) {
  detail::require(sizes.size() == diffs.size(), "fit_power_law: length mismatch");
  LogLogFit fit;
  fit.points = sizes.size();
  if (fit.points < 2) {
    fit.exponent = std::nan("");
    fit.r2 = std::nan("");
    return fit;
  }
  const double n = static_cast<double>(fit.points);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < fit.points; ++i) {
    detail::require(sizes[i] > 0.0 && diffs[i] > 0.0, "fit_power_law: values must be positive");
    mx += std::log(sizes[i]);
    my += std::log(diffs[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < fit.points; ++i) {
    const double dx = std::log(sizes[i]) - mx, dy = std::log(diffs[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  fit.exponent = -slope;
  fit.r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

ConvergenceReport convergence_sweep(SweepQuantity quantity, std::span<const double> sizes,
                                    const SweepConfig& config, EtaParameter eta) {
  config.validate();
  detail::require(sizes.size() >= 3, "convergence_sweep: at least 3 sizes are required");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    detail::require(std::isfinite(sizes[i]) && sizes[i] > 0.0,
                    "convergence_sweep: sizes must be positive");
    detail::require(i == 0 || sizes[i] > sizes[i - 1],
                    "convergence_sweep: sizes must be strictly increasing");
  }
  if (quantity == SweepQuantity::depletion_finite_T) {
    detail::require(config.params.beta.has_value(), "convergence_sweep: finite T needs beta");
  }

  ConvergenceReport r;
  r.quantity = quantity;
  r.eta = eta.value();
  r.sizes.assign(sizes.begin(), sizes.end());
  r.bulk_ref = bulk_reference(quantity, config);
  r.guaranteed_exponent = envelope_exponent(quantity, eta.value());

  std::vector<SizePoint> pts(sizes.size());
  if (config.jobs <= 1) {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      pts[i] = evaluate(quantity, sizes[i], config, r.bulk_ref, eta);
    }
  } else {
    // At most `jobs` sizes in flight; results land in their own slots.
    for (std::size_t start = 0; start < sizes.size(); start += config.jobs) {
      std::vector<std::future<SizePoint>> batch;
      const std::size_t stop = std::min(sizes.size(), start + config.jobs);
      for (std::size_t i = start; i < stop; ++i) {
        batch.push_back(std::async(std::launch::async, [&, i] {
          return evaluate(quantity, sizes[i], config, r.bulk_ref, eta);
        }));
      }
      for (std::size_t i = start; i < stop; ++i) pts[i] = batch[i - start].get();
    }
  }

  for (const auto& p : pts) {
    r.values.push_back(p.value);
    r.abs_diffs.push_back(p.diff);
    r.envelopes.push_back(p.envelope);
    r.ratios.push_back(p.diff / p.envelope);
    if (quantity == SweepQuantity::free_gas_residual) r.c_estimates.push_back(p.c_estimate);
  }

  r.envelope_constant = r.ratios.front();
  r.max_ratio = *std::max_element(r.ratios.begin(), r.ratios.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (r.abs_diffs[i] > r.envelope_constant * r.envelopes[i]) r.violations.push_back(i);
  }

  r.noise_floor = 10.0 * config.quadrature.rel_tol * std::abs(r.bulk_ref);
  std::size_t usable = 0;
  while (usable < pts.size() && r.abs_diffs[usable] > r.noise_floor) ++usable;
  r.floor_limited = usable < pts.size();
  const LogLogFit fit = fit_power_law(std::span(r.sizes).first(usable),
                                      std::span(r.abs_diffs).first(usable));
  r.fitted_exponent = fit.exponent;
  r.fit_r2 = fit.r2;
  r.fit_points = fit.points;
  return r;
}

}  // namespace hkbec::bounds
