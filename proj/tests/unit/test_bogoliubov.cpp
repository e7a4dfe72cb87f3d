#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "hkbec/bogoliubov.hpp"
#include "hkbec/error.hpp"
#include "hkbec/free_gas.hpp"
#include "hkbec/specfun.hpp"
#include "oracles.hpp"

namespace bg = hkbec::bogoliubov;
using hkbec::geometry::ConvexDomain;
using hkbec::testing::Gen;
using hkbec::testing::ModeSum;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

bg::BogoliubovParams params(double u0, double n0, std::optional<double> beta = std::nullopt) {
  return {u0, n0, beta};
}

// Mode sums at cutoffs 64, 128, 256 per axis, extrapolated in 1/N.
double extrapolated_mode_sum(double L, double a, ModeSum kind) {
  using hkbec::testing::neumann_cube_mode_sum;
  return hkbec::testing::richardson3(neumann_cube_mode_sum(L, a, 64, kind),
                                     neumann_cube_mode_sum(L, a, 128, kind),
                                     neumann_cube_mode_sum(L, a, 256, kind));
}

}  // namespace

TEST(FKernel, Examples) {
  EXPECT_EQ(bg::f_kernel(3.0, 1.0), 0.0);
  EXPECT_NEAR(bg::f_kernel(1e3, 0.0), 2.0, 1e-15);
  EXPECT_NEAR(bg::f_kernel(1.0, 0.0), 2.0 * (1.0 - std::exp(-1.0)), 1e-15);
  EXPECT_NEAR(bg::f_kernel(1.0, 0.0), 1.2642411, 1e-7);
}

TEST(FKernel, BoundedOnRandomArguments) {
  Gen g;
  for (int i = 0; i < 1000; ++i) {
    const double t = g.log_uniform(1e-6, 1e4), x = g.uniform(0.0, 1.0);
    const double f = bg::f_kernel(t, x);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 2.0);
  }
}

TEST(FKernel, XIntegralMatchesQuadrature) {
  Gen g;
  for (int i = 0; i < 40; ++i) {
    const double t = g.log_uniform(1e-4, 1e3);
    const double ref = boost::math::quadrature::tanh_sinh<double>().integrate(
        [t](double x) { return bg::f_kernel(t, x); }, 0.0, 1.0);
    EXPECT_LT(rel(bg::f_kernel_x_integral(t), ref), 1e-12) << t;
  }
}

TEST(BulkConstants, EnergyConstantJ) {
  EXPECT_LT(rel(bg::energy_constant_j(), 32.0 * std::sqrt(2.0 * kPi) / 15.0), 1e-15);
  EXPECT_LT(rel(hkbec::testing::energy_constant_quadrature(), bg::energy_constant_j()), 1e-9);
}

TEST(BulkConstants, DepletionConstantXi) {
  EXPECT_LT(rel(bg::depletion_constant_xi(), 4.0 * std::sqrt(2.0) / (3.0 * std::sqrt(kPi))), 1e-15);
  EXPECT_LT(rel(hkbec::testing::depletion_constant_quadrature(), bg::depletion_constant_xi()), 1e-9);
}

TEST(BulkEnergy, Examples) {
  EXPECT_LT(rel(bg::bulk_energy_density(params(1.0, 1.0)), 0.4808946943916414579), 1e-13);
  const double tiny = bg::bulk_energy_density(params(1e-8, 1.0));
  EXPECT_NEAR(tiny, 0.5e-8, 1e-19);
}

TEST(BulkDepletionZeroT, Examples) {
  const double a1 = bg::bulk_depletion_zero_T(params(1.0, 1.0));
  EXPECT_LT(rel(a1, std::sqrt(2.0) / (12.0 * kPi * kPi)), 1e-14);
  EXPECT_LT(rel(bg::bulk_depletion_zero_T(params(2.0, 2.0)), 8.0 * a1), 1e-14);
}

TEST(BulkDepletionFiniteT, Goldens) {
  EXPECT_LT(rel(bg::bulk_depletion_finite_T(params(0.5, 1.0, 1.0)), 0.031596367012606979277), 1e-9);
  EXPECT_LT(rel(bg::bulk_depletion_finite_T(params(1.0, 1.0, 1.0)), 0.025460870155700824977), 1e-9);
}

TEST(BulkDepletionFiniteT, FreeGasLimit) {
  const double beta = 1.3;
  const double expected = std::pow(4.0 * kPi * beta, -1.5) * hkbec::specfun::bose_g(1.5, 1.0);
  EXPECT_LT(rel(bg::bulk_depletion_finite_T(params(1e-14, 1.0, beta)), expected), 1e-5);
}

TEST(BulkDepletionFiniteT, DecreasingInA) {
  for (double beta : {0.5, 1.0, 3.0}) {
    double prev = INFINITY;
    for (double a = 0.05; a < 5.0; a *= 1.5) {
      const double v = bg::bulk_depletion_finite_T(params(a, 1.0, beta));
      EXPECT_LT(v, prev);
      prev = v;
    }
  }
  EXPECT_THROW(bg::bulk_depletion_finite_T(params(1.0, 1.0)), hkbec::InvalidArgument);
}

TEST(GroundStateEnergy, MatchesModeSum) {
  const double L = 4.0, a = 0.5;
  const auto d = ConvexDomain::cube(L);
  const auto p = params(0.5, 1.0);
  const double integral = bg::ground_state_energy_density(d, p) - 0.5 * p.u0 * p.n0 * p.n0;
  EXPECT_LT(rel(integral, extrapolated_mode_sum(L, a, ModeSum::energy)), 1e-6);
  EXPECT_LT(rel(bg::ground_state_energy(d, p), bg::ground_state_energy_density(d, p) * d.volume()), 1e-15);
}

TEST(GroundStateEnergy, ExcessFormAgrees) {
  for (double L : {3.0, 6.0}) {
    const auto d = ConvexDomain::cube(L);
    const auto p = params(0.5, 1.0);
    EXPECT_NEAR(bg::ground_state_energy_density_excess(d, p),
                bg::ground_state_energy_density(d, p) - bg::bulk_energy_density(p), 1e-9);
  }
}

TEST(GroundStateEnergy, IntegralTermPositive) {
  Gen g;
  for (int i = 0; i < 10; ++i) {
    const auto d = ConvexDomain::box(g.uniform(1.0, 6.0), g.uniform(1.0, 6.0), g.uniform(1.0, 6.0));
    const auto p = params(g.uniform(0.1, 2.0), g.uniform(0.1, 2.0));
    EXPECT_GT(0.5 * p.u0 * p.n0 * p.n0 - bg::ground_state_energy_density(d, p), 0.0);
  }
}

TEST(GroundStateEnergy, WeakCouplingLimit) {
  const auto d = ConvexDomain::cube(4.0);
  const auto p = params(1e-9, 1.0);
  EXPECT_LT(rel(bg::ground_state_energy_density(d, p), 0.5e-9), 1e-6);
}

TEST(GroundStateEnergy, DimensionalScaling) {
  // (L, a) -> (2L, a/4): the integral term per volume scales by 4^{-5/2}.
  const auto p1 = params(0.5, 1.0), p2 = params(0.125, 1.0);
  const double t1 = bg::ground_state_energy_density(ConvexDomain::cube(4.0), p1) - 0.25;
  const double t2 = bg::ground_state_energy_density(ConvexDomain::cube(8.0), p2) - 0.0625;
  EXPECT_LT(rel(t2, t1 / 32.0), 1e-8);
}

TEST(GroundStateEnergy, RejectsBall) {
  EXPECT_THROW(bg::ground_state_energy(ConvexDomain::ball(1.0), params(1.0, 1.0)), hkbec::InvalidArgument);
}

TEST(DepletionZeroT, MatchesModeSum) {
  const double L = 4.0, a = 0.5;
  const auto d = ConvexDomain::cube(L);
  EXPECT_LT(rel(bg::depletion_zero_T(d, params(0.5, 1.0)),
                extrapolated_mode_sum(L, a, ModeSum::depletion_zero_T)),
            1e-6);
}

TEST(DepletionZeroT, ExcessFormAndScaling) {
  const auto p = params(0.5, 1.0);
  for (double L : {3.0, 6.0}) {
    const auto d = ConvexDomain::cube(L);
    EXPECT_NEAR(bg::depletion_zero_T_excess(d, p), bg::depletion_zero_T(d, p) - bg::bulk_depletion_zero_T(p),
                1e-10);
  }
  const double n1 = bg::depletion_zero_T(ConvexDomain::cube(4.0), p);
  const double n2 = bg::depletion_zero_T(ConvexDomain::cube(8.0), params(0.125, 1.0));
  EXPECT_LT(rel(n2, n1 / 8.0), 1e-8);
}

TEST(DepletionZeroT, NonnegativeAndVanishingCoupling) {
  Gen g;
  for (int i = 0; i < 10; ++i) {
    const auto d = ConvexDomain::cube(g.uniform(1.0, 8.0));
    EXPECT_GE(bg::depletion_zero_T(d, params(g.uniform(0.05, 2.0), 1.0)), 0.0);
  }
  EXPECT_LT(bg::depletion_zero_T(ConvexDomain::cube(4.0), params(1e-10, 1.0)), 1e-12);
}

TEST(DepletionFiniteT, MatchesModeSum) {
  for (double L : {2.0, 4.0}) {
    const double a = 0.5, beta = 1.0;
    const auto d = ConvexDomain::cube(L);
    const auto r = bg::depletion_finite_T(d, params(0.5, 1.0, beta));
    const double zero_mode = 1.0 / (d.volume() * std::expm1(beta * a));
    const double ref =
        hkbec::testing::neumann_cube_mode_sum(L, a, int(12 * L), ModeSum::depletion_thermal, beta) + zero_mode;
    EXPECT_LT(rel(r.value, ref), 1e-7) << L;
    EXPECT_NEAR(r.zero_mode_term, zero_mode, 1e-15);
    EXPECT_NEAR(r.value, r.thermal_term + r.interaction_term, 1e-15);
    EXPECT_GT(r.k_terms, 0);
    EXPECT_LE(r.tail_bound, 1e-8 * r.value);
  }
}

TEST(DepletionFiniteT, PrimedFirstTermDropsZeroMode) {
  const auto d = ConvexDomain::cube(3.0);
  bg::QuadratureConfig q;
  q.thermal_zero_mode = false;
  const auto with = bg::depletion_finite_T(d, params(0.5, 1.0, 1.0));
  const auto without = bg::depletion_finite_T(d, params(0.5, 1.0, 1.0), q);
  EXPECT_EQ(without.zero_mode_term, 0.0);
  EXPECT_NEAR(with.value - without.value, with.zero_mode_term, 1e-8 * with.value);
}

TEST(DepletionFiniteT, FreeGasReduction) {
  // a -> 0: the k-sum of (1/V) Tr e^{k beta Delta} e^{-k beta a} is the ideal-gas
  // occupation at mu beta = -beta a with lambda^2 = pi beta.
  const double L = 3.0, beta = 1.0, a = 1e-6;
  const auto d = ConvexDomain::cube(L);
  const auto r = bg::depletion_finite_T(d, params(a, 1.0, beta));
  const double n = hkbec::free_gas::particle_number_direct({L, std::sqrt(kPi * beta), -beta * a, std::nullopt});
  EXPECT_LT(rel(r.thermal_term, n / d.volume()), 1e-8);
  EXPECT_LT(rel(r.value, n / d.volume()), 1e-6);
}

TEST(DepletionFiniteT, LowTemperatureVanishes) {
  const auto r = bg::depletion_finite_T(ConvexDomain::cube(4.0), params(0.5, 1.0, 60.0));
  EXPECT_GE(r.value, 0.0);
  EXPECT_LT(r.value, 1e-12);
}

TEST(DepletionFiniteT, RequiresBeta) {
  EXPECT_THROW(bg::depletion_finite_T(ConvexDomain::cube(4.0), params(0.5, 1.0)), hkbec::InvalidArgument);
}

TEST(Params, Validation) {
  EXPECT_THROW(params(0.0, 1.0).validate(), hkbec::InvalidArgument);
  EXPECT_THROW(params(1.0, -1.0).validate(), hkbec::InvalidArgument);
  EXPECT_THROW(params(1.0, 1.0, 0.0).validate(), hkbec::InvalidArgument);
  bg::QuadratureConfig q;
  q.rel_tol = 0.0;
  EXPECT_THROW(q.validate(), hkbec::InvalidArgument);
  q = {};
  q.k_max = 0;
  EXPECT_THROW(q.validate(), hkbec::InvalidArgument);
}

TEST(DiffusionTime, Conventions) {
  EXPECT_DOUBLE_EQ(bg::energy_diffusion_time(2.0, 0.5), 4.0);
  EXPECT_DOUBLE_EQ(bg::depletion_diffusion_time(2.0, 0.5), 2.0);
}
