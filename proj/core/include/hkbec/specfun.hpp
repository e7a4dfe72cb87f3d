#pragma once

namespace hkbec::specfun {

struct SpecFunConfig {
  double series_rel_tol = 1e-15;
  double quad_rel_tol = 1e-10;
  int max_terms = 100000;

  void validate() const;
};

/// e^{-x} I_nu(x) for nu in {0, 1/2, 1}. Any other order is rejected.
double bessel_i_scaled(double order, double x);

/// e^{-x} I_1(x) / x, with the removable singularity at x = 0 (value 1/2).
double bessel_i1_scaled_over_x(double x);

/// K_nu(x) for nu in (0, 1]. Negative orders map through K_{-nu} = K_nu.
double bessel_k(double order, double x);

/// sum_{j>=1} z^j / j^s for s > 1 and 0 <= z <= 1.
double bose_g(double s, double z, const SpecFunConfig& cfg = {});

/// sum_{j>n} z^j / j^s, the tail of bose_g after n terms.
double bose_g_tail(double s, double z, long n, const SpecFunConfig& cfg = {});

/// (2/pi) int_0^1 sqrt(1-y^2) cosh(uy) dy, evaluated in e^{-u}-scaled form.
double i1_identity_lhs_scaled(double u, const SpecFunConfig& cfg = {});

/// Relative residual of (2/pi) int_0^1 sqrt(1-y^2) cosh(uy) dy = I_1(u)/u.
double residual_i1_identity(double u, const SpecFunConfig& cfg = {});

/// K_nu(x) from the Laplace-type representation
/// sqrt(pi/(2x)) e^{-x} / Gamma(nu+1/2) int_0^inf e^{-s} s^{nu-1/2} (1 + s/(2x))^{nu-1/2} ds.
double bessel_k_laplace_rep(double order, double x, const SpecFunConfig& cfg = {});

/// K_nu(x) from the cosine representation
/// Gamma(nu+1/2) (2/x)^nu / sqrt(pi) int_0^inf cos(x t) / (1+t^2)^{nu+1/2} dt,
/// integrated over half periods with Wynn epsilon acceleration.
double bessel_k_cosine_rep(double order, double x, const SpecFunConfig& cfg = {});

struct KRepResiduals {
  double laplace = 0.0;
  double cosine = 0.0;
  double max() const { return laplace > cosine ? laplace : cosine; }
};
KRepResiduals k_rep_residuals(double order, double x, const SpecFunConfig& cfg = {});

/// Maximum of the two representation residuals relative to bessel_k.
double residual_k_integral_rep(double order, double x, const SpecFunConfig& cfg = {});

/// Relative residual of
/// int_0^{pi/2} cos(2 mu t) I_{2 nu}(2x cos t) dt = (pi/2) I_{nu-mu}(x) I_{nu+mu}(x).
/// Supported: 2nu in {0, 1/2, 1} and nu -+ mu in {-1/2, 0, 1/2, 1}.
double residual_gr6682(double mu, double nu, double x, const SpecFunConfig& cfg = {});

}  // namespace hkbec::specfun
