#include "hkbec/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hkbec/error.hpp"
#include "hkbec/heat_kernel.hpp"
#include "hkbec/quadrature.hpp"
#include "hkbec/specfun.hpp"

namespace hkbec::bogoliubov {
namespace {

using geometry::ConvexDomain;
namespace hk = heat_kernel;

constexpr double kPi = std::numbers::pi;
const double kFourPiPow = std::pow(4.0 * kPi, -1.5);   // (4 pi)^{-3/2}

void require_box(const ConvexDomain& d) {
  if (!d.is_box_like()) {
    throw InvalidArgument("bogoliubov: only boxes and cubes have a closed heat trace");
  }
}

// Smallest nonzero Neumann eigenvalue (pi / L_max)^2.
double lambda_one(const ConvexDomain& d) {
  const auto& l = d.sides();
  const double lmax = std::max({l[0], l[1], l[2]});
  return kPi * kPi / (lmax * lmax);
}

// G(t)/t with G(t) = int_0^1 F(t, x) dx.
double g_over_t(double t) {
  if (t > 2.0) return f_kernel_x_integral(t) / t;
  // G = (pi/2) (1 - e^{-t} S), S = sum_k (t^2/4)^k / (k! (k+1)!),
  //   = (pi/2) (-expm1(-t) - e^{-t} (S - 1)).
  const double h2 = 0.25 * t * t;
  double term = 1.0, sm1 = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= h2 / (static_cast<double>(k) * (k + 1));
    sm1 += term;
    if (term < 1e-17 * sm1) break;
  }
  if (t == 0.0) return 0.5 * kPi;
  return 0.5 * kPi * (-std::expm1(-t) - std::exp(-t) * sm1) / t;
}

struct Accum {
  double value = 0.0;
  double error = 0.0;
  void add(const quad::Estimate& e) {
    value += e.value;
    error += e.error;
  }
};

// int_0^T g(t) t^{-1/2} dt split as 2 int_0^{sqrt(ts)} g(u^2) du plus
// int_{ln ts}^{ln T} g(e^v) e^{v/2} dv.
template <class G>
Accum integrate_inverse_sqrt(const G& g, double t_split, double t_cut, double rel_tol) {
  Accum acc;
  const double ts = std::min(t_split, t_cut);
  acc.add(quad::smooth([&](double u) { return 2.0 * g(u * u); }, 0.0, std::sqrt(ts), rel_tol));
  if (t_cut > ts) {
    acc.add(quad::smooth(
        [&](double v) {
          const double t = std::exp(v);
          return g(t) * std::sqrt(t);
        },
        std::log(ts), std::log(t_cut), rel_tol));
  }
  return acc;
}

void check_accuracy(const Accum& acc, double tail, double rel_tol, const char* what) {
  const double scale = std::abs(acc.value);
  if (!std::isfinite(acc.value) || acc.error + tail > 10.0 * rel_tol * scale + 1e-300) {
    throw ToleranceError(std::string(what) + ": quadrature did not reach the requested accuracy");
  }
}

double interaction_integral_bulk_tail_energy(double t_cut, double rel_tol) {
  // int_T^inf G t^{-3/2} dt = pi/sqrt(T) - pi int_T^inf (e^{-t} I_1(t)/t) t^{-3/2} dt
  const auto f = [](double t) { return specfun::bessel_i1_scaled_over_x(t) * std::pow(t, -1.5); };
  const double rest = quad::half_line(f, t_cut, rel_tol).value;
  return kPi / std::sqrt(t_cut) - kPi * rest;
}

// Scaled energy integral I with E/V = u0 n0^2/2 - (a/2pi) a^{3/2} (4pi)^{-3/2} I.
double energy_integral(const ConvexDomain& d, double a, const QuadratureConfig& q, bool excess) {
  const double lam1 = lambda_one(d);
  double t_cut = q.t_split + q.tail_cut_factor * a / lam1;
  for (int attempt = 0; attempt < 4; ++attempt, t_cut *= 2.0) {
    const auto g = [&](double t) {
      const double s = energy_diffusion_time(t, a);
      const double rho = excess ? hk::box_trace_prime_over_bulk_excess(d, s)
                                : hk::box_trace_prime_over_bulk(d, s);
      return g_over_t(t) * rho;
    };
    Accum acc = integrate_inverse_sqrt(g, q.t_split, t_cut, q.rel_tol);
    // Beyond the cut, int G (1/V) Tr'(t/a) dt <= (pi/2) (1/V) Tr'(T/a) a / lam1,
    // converted to the scaled integrand.
    const double s_cut = energy_diffusion_time(t_cut, a);
    const double tail = 0.5 * kPi * hk::box_trace_prime(d, s_cut) / d.volume() * a / lam1 /
                        (std::pow(a, 1.5) * kFourPiPow);
    if (excess) acc.value -= interaction_integral_bulk_tail_energy(t_cut, q.rel_tol);
    if (tail <= q.rel_tol * std::abs(acc.value)) {
      check_accuracy(acc, tail, q.rel_tol, "ground_state_energy");
      return acc.value;
    }
  }
  throw ToleranceError("ground_state_energy: tail beyond the cut is not negligible");
}

double depletion_integral(const ConvexDomain& d, double a, const QuadratureConfig& q,
                          bool excess) {
  const double lam1 = lambda_one(d);
  double t_cut = q.t_split + q.tail_cut_factor / lam1;
  for (int attempt = 0; attempt < 4; ++attempt, t_cut *= 2.0) {
    const auto g = [&](double t) {
      const double s = depletion_diffusion_time(t, a);
      const double rho = excess ? hk::box_trace_prime_over_bulk_excess(d, s)
                                : hk::box_trace_prime_over_bulk(d, s);
      return specfun::bessel_i1_scaled_over_x(a * t) * rho;
    };
    Accum acc = integrate_inverse_sqrt(g, q.t_split, t_cut, q.rel_tol);
    // e^{-x} I_1(x) < 1/2, so the tail is below (1/V) Tr'(T) / (2 lam1),
    // converted to the scaled integrand (a^2/2)(4pi)^{-3/2} t^{-1/2} ... .
    const double tail = 0.5 * hk::box_trace_prime(d, depletion_diffusion_time(t_cut, a)) /
                        d.volume() / lam1 * (a / 2.0) / (0.5 * a * a * kFourPiPow);
    if (excess) {
      const auto f = [a](double t) {
        return specfun::bessel_i1_scaled_over_x(a * t) / std::sqrt(t);
      };
      acc.value -= quad::half_line(f, t_cut, q.rel_tol).value;
    }
    if (tail <= q.rel_tol * std::abs(acc.value)) {
      check_accuracy(acc, tail, q.rel_tol, "depletion_zero_T");
      return acc.value;
    }
  }
  throw ToleranceError("depletion_zero_T: tail beyond the cut is not negligible");
}

}  // namespace

void BogoliubovParams::validate() const {
  detail::require(std::isfinite(u0) && u0 > 0.0, "BogoliubovParams: u0 must be positive");
  detail::require(std::isfinite(n0) && n0 > 0.0, "BogoliubovParams: n0 must be positive");
  detail::require(!beta || (std::isfinite(*beta) && *beta > 0.0),
                  "BogoliubovParams: beta must be positive");
}

void QuadratureConfig::validate() const {
  detail::require(rel_tol > 0.0 && rel_tol < 1.0, "QuadratureConfig: rel_tol must lie in (0, 1)");
  detail::require(t_split > 0.0, "QuadratureConfig: t_split must be positive");
  detail::require(tail_cut_factor > 0.0, "QuadratureConfig: tail_cut_factor must be positive");
  detail::require(k_max > 0, "QuadratureConfig: k_max must be positive");
}

double f_kernel(double t, double x) {
  detail::require(std::isfinite(t) && t > 0.0, "f_kernel: t must be positive");
  detail::require(x >= 0.0 && x <= 1.0, "f_kernel: x must lie in [0, 1]");
  const double w = std::sqrt((1.0 - x) * (1.0 + x));
  return w * (-std::expm1(-t * (1.0 - x)) - std::expm1(-t * (1.0 + x)));
}

double f_kernel_x_integral(double t) {
  detail::require(std::isfinite(t) && t > 0.0, "f_kernel_x_integral: t must be positive");
  if (t <= 2.0) return g_over_t(t) * t;
  return 0.5 * kPi - kPi * specfun::bessel_i1_scaled_over_x(t);
}

double energy_constant_j() { return 32.0 * std::sqrt(2.0 * kPi) / 15.0; }

double bulk_energy_density(const BogoliubovParams& p) {
  p.validate();
  const double a = p.a();
  return 0.5 * p.u0 * p.n0 * p.n0 -
         a / (2.0 * kPi) * std::pow(a / (4.0 * kPi), 1.5) * energy_constant_j();
}

double ground_state_energy_density(const ConvexDomain& d, const BogoliubovParams& p,
                                   const QuadratureConfig& q) {
  p.validate();
  q.validate();
  require_box(d);
  const double a = p.a();
  const double integral = energy_integral(d, a, q, false);
  return 0.5 * p.u0 * p.n0 * p.n0 - a / (2.0 * kPi) * std::pow(a, 1.5) * kFourPiPow * integral;
}

double ground_state_energy(const ConvexDomain& d, const BogoliubovParams& p,
                           const QuadratureConfig& q) {
  return ground_state_energy_density(d, p, q) * d.volume();
}

double ground_state_energy_density_excess(const ConvexDomain& d, const BogoliubovParams& p,
                                          const QuadratureConfig& q) {
  p.validate();
  q.validate();
  require_box(d);
  const double a = p.a();
  return -a / (2.0 * kPi) * std::pow(a, 1.5) * kFourPiPow * energy_integral(d, a, q, true);
}

double depletion_constant_xi() { return 4.0 * std::sqrt(2.0) / (3.0 * std::sqrt(kPi)); }

double bulk_depletion_zero_T(const BogoliubovParams& p) {
  p.validate();
  return 0.5 * std::pow(p.a(), 1.5) * kFourPiPow * depletion_constant_xi();
}

double depletion_zero_T(const ConvexDomain& d, const BogoliubovParams& p,
                        const QuadratureConfig& q) {
  p.validate();
  q.validate();
  require_box(d);
  const double a = p.a();
  return 0.5 * a * a * kFourPiPow * depletion_integral(d, a, q, false);
}

double depletion_zero_T_excess(const ConvexDomain& d, const BogoliubovParams& p,
                               const QuadratureConfig& q) {
  p.validate();
  q.validate();
  require_box(d);
  const double a = p.a();
  return 0.5 * a * a * kFourPiPow * depletion_integral(d, a, q, true);
}

FiniteTDepletion depletion_finite_T(const ConvexDomain& d, const BogoliubovParams& p,
                                    const QuadratureConfig& q) {
  p.validate();
  q.validate();
  require_box(d);
  if (!p.beta) throw InvalidArgument("depletion_finite_T: beta is required");
  const double a = p.a();
  const double beta = *p.beta;
  const double vol = d.volume();
  const double lam1 = lambda_one(d);

  FiniteTDepletion out;
  if (q.thermal_zero_mode) out.zero_mode_term = 1.0 / (vol * std::expm1(beta * a));

  // Geometric ratios for the tail certificates (see below).
  const double r_thermal = std::exp(-beta * (a + lam1));
  const double r_inter = std::exp(-lam1 * beta / std::sqrt(2.0));
  const double inter_pref = a / vol * 0.5 * std::sqrt(2.0) / lam1;

  double thermal = 0.0, inter = 0.0;
  for (long k = 1; k <= q.k_max; ++k) {
    const double kb = k * beta;
    const double trp_k = hk::box_trace_prime(d, kb);
    const double th = trp_k / vol * std::exp(-kb * a);

    // a int_0^inf dt (1/V) Tr'(sigma) e^{-a(sigma - t)} e^{-at} I_1(at),
    // sigma - t = (k beta)^2 / (sigma + t).
    const auto f = [&](double t) {
      const double sigma = std::hypot(kb, t);
      return hk::box_trace_prime(d, sigma) / vol * std::exp(-a * kb * kb / (sigma + t)) *
             specfun::bessel_i_scaled(1.0, a * t);
    };
    const double sigma_cut = kb + q.tail_cut_factor / lam1;
    const double t_cut = std::sqrt((sigma_cut - kb) * (sigma_cut + kb));
    Accum acc;
    const double ts = std::min(q.t_split, t_cut);
    acc.add(quad::smooth(f, 0.0, ts, q.rel_tol));
    acc.add(quad::smooth(
        [&](double v) {
          const double t = std::exp(v);
          return f(t) * t;
        },
        std::log(ts), std::log(t_cut), q.rel_tol));
    // Beyond t_cut: dsigma/dt >= t_cut / sigma_cut, e^{-x} I_1(x) < 1/2.
    const double cut_tail = 0.5 * hk::box_trace_prime(d, sigma_cut) / vol * sigma_cut /
                            (t_cut * lam1);
    const double in = a * acc.value;
    // Accuracy is judged against the running total; late k-terms are tiny.
    const double scale = std::abs(in) + out.zero_mode_term + thermal + inter;
    if (!std::isfinite(in) || a * (acc.error + cut_tail) > q.rel_tol * scale) {
      throw ToleranceError("depletion_finite_T: inner t-integral did not converge");
    }

    thermal += th;
    inter += in;
    out.k_terms = k;

    // Tail certificates for k > K:
    //   thermal: Tr'(k beta) e^{-k beta a} falls at least by r_thermal per step;
    //   interaction: sigma >= (t + k beta)/sqrt(2) and Tr'(s) e^{lam1 s} nonincreasing
    //   give term_k <= (a/V)(sqrt2/2)/lam1 Tr'(K beta) e^{lam1 K beta (1 - 1/sqrt2)}
    //   r_inter^{k-K}.
    const double tail_th = th * r_thermal / (1.0 - r_thermal);
    const double tail_in = inter_pref * trp_k * std::exp(lam1 * kb * (1.0 - 1.0 / std::sqrt(2.0))) *
                           r_inter / -std::expm1(-lam1 * beta / std::sqrt(2.0));
    const double total = out.zero_mode_term + thermal + inter;
    const bool small = th + in <= q.rel_tol * total;
    if (small && tail_th + tail_in <= q.rel_tol * total) {
      out.tail_bound = tail_th + tail_in;
      out.thermal_term = out.zero_mode_term + thermal;
      out.interaction_term = inter;
      out.value = out.thermal_term + out.interaction_term;
      return out;
    }
  }
  throw CapError("depletion_finite_T: k-sum hit k_max before its tail was certified");
}

double bulk_depletion_finite_T(const BogoliubovParams& p, const QuadratureConfig& q) {
  p.validate();
  q.validate();
  if (!p.beta) throw InvalidArgument("bulk_depletion_finite_T: beta is required");
  const double a = p.a();
  const double beta = *p.beta;
  const auto f = [a, beta](double k) {
    if (k <= 0.0) return 1.0 / (2.0 * beta);
    const double e = k * std::sqrt(k * k + 2.0 * a);
    if (beta * e > 745.0) return 0.0;
    return k * (k * k + a) / std::sqrt(k * k + 2.0 * a) / std::expm1(beta * e);
  };
  const double split = std::sqrt(a) + 1.0 / std::sqrt(beta);
  const double head = quad::smooth(f, 0.0, split, 1e-12).value;
  const double tail = quad::half_line(f, split, 1e-12).value;
  return (head + tail) / (2.0 * kPi * kPi);
}

}  // namespace hkbec::bogoliubov
