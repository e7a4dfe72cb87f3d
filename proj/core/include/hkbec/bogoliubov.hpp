#pragma once

#include <optional>

#include "hkbec/geometry.hpp"

namespace hkbec::bogoliubov {

struct BogoliubovParams {
  double u0 = 1.0;
  double n0 = 1.0;
  std::optional<double> beta;   // inverse temperature, finite-T operations only

  double a() const { return u0 * n0; }
  void validate() const;
};

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double t_split = 1.0;
  double tail_cut_factor = 40.0;   // e-foldings of the slowest mode kept before the cut
  long k_max = 200000;
  bool thermal_zero_mode = true;   // keep the constant mode in the k-sum's first term

  void validate() const;
};

/// Diffusion time of the trace sampled at integration variable t. The energy
/// integral samples Tr' e^{Delta t / a}; the depletion integrals sample e^{Delta t}.
inline double energy_diffusion_time(double t, double a) { return t / a; }
inline double depletion_diffusion_time(double t, double /*a*/) { return t; }

/// F(t, x) = sqrt(1-x^2) (2 - e^{-t(1-x)} - e^{-t(1+x)})
double f_kernel(double t, double x);

/// int_0^1 F(t, x) dx = pi/2 - pi e^{-t} I_1(t) / t
double f_kernel_x_integral(double t);

/// Ground-state energy E of a box or cube (not per volume).
double ground_state_energy(const geometry::ConvexDomain& domain, const BogoliubovParams& p,
                           const QuadratureConfig& q = {});
double ground_state_energy_density(const geometry::ConvexDomain& domain,
                                   const BogoliubovParams& p, const QuadratureConfig& q = {});
/// E/V - bulk_energy_density, integrated as one difference.
double ground_state_energy_density_excess(const geometry::ConvexDomain& domain,
                                          const BogoliubovParams& p,
                                          const QuadratureConfig& q = {});

/// int_0^inf dt t^{-3/2} int_0^1 F dx = 32 sqrt(2 pi) / 15
double energy_constant_j();
/// u0 n0^2 / 2 - (a / 2 pi) (a / 4 pi)^{3/2} J
double bulk_energy_density(const BogoliubovParams& p);

double depletion_zero_T(const geometry::ConvexDomain& domain, const BogoliubovParams& p,
                        const QuadratureConfig& q = {});
double depletion_zero_T_excess(const geometry::ConvexDomain& domain, const BogoliubovParams& p,
                               const QuadratureConfig& q = {});

/// int_0^inf u^{-3/2} e^{-u} I_1(u) du = 4 sqrt(2) / (3 sqrt(pi))
double depletion_constant_xi();
double bulk_depletion_zero_T(const BogoliubovParams& p);

struct FiniteTDepletion {
  double value = 0.0;
  double thermal_term = 0.0;       // sum_k (1/V) Tr(e^{k beta Delta}) e^{-k beta a}
  double interaction_term = 0.0;   // sum_k a int dt (1/V) Tr'(sigma) e^{-a sigma} I_1(a t)
  double zero_mode_term = 0.0;     // 1 / (V (e^{beta a} - 1)), included iff thermal_zero_mode
  long k_terms = 0;
  double tail_bound = 0.0;
};

FiniteTDepletion depletion_finite_T(const geometry::ConvexDomain& domain,
                                    const BogoliubovParams& p, const QuadratureConfig& q = {});

/// Flat-space counterpart, evaluated as the momentum integral
/// (1/2 pi^2) int p^2 (p^2 + a) / (E_p (e^{beta E_p} - 1)) dp, E_p = p sqrt(p^2 + 2a),
/// which is the k-sum resummed in closed form.
double bulk_depletion_finite_T(const BogoliubovParams& p, const QuadratureConfig& q = {});

}  // namespace hkbec::bogoliubov
