#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <gtest/gtest.h>

#include "hkbec/error.hpp"
#include "hkbec/heat_kernel.hpp"
#include "oracles.hpp"

namespace hk = hkbec::heat_kernel;
using hk::Boundary;
using hk::Representation;
using hkbec::geometry::ConvexDomain;
using hkbec::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return v;
}

double trace(double L, Boundary bc, double s, Representation r = Representation::automatic) {
  return hk::interval_trace(L, {bc, s, r});
}

}  // namespace

TEST(IntervalTrace, Examples) {
  EXPECT_NEAR(trace(1.0, Boundary::neumann, 100.0), 1.0, 1e-300);
  EXPECT_LT(rel(trace(1.0, Boundary::neumann, 0.01), 3.3209479177387814347), 1e-13);
  EXPECT_LT(rel(trace(1.0, Boundary::dirichlet, 0.01), 2.3209479177387814347), 1e-13);
}

TEST(IntervalTrace, MatchesIndependentSpectralSum) {
  Gen g;
  for (int i = 0; i < 200; ++i) {
    const double L = g.log_uniform(0.1, 20.0);
    const double s = g.log_uniform(1e-3, 1e2) * L * L;
    EXPECT_LT(rel(trace(L, Boundary::neumann, s), hkbec::testing::spectral_theta(L, s, 0)), 1e-13);
    const double d = hkbec::testing::spectral_theta(L, s, 1);
    if (d > 1e-250) EXPECT_LT(rel(trace(L, Boundary::dirichlet, s), d), 1e-12);
  }
}

TEST(IntervalTrace, SpectralImageDuality) {
  for (double L : {0.5, 1.0, 2.0, 4.0}) {
    for (double s : log_grid(1e-4, 1e2, 30)) {
      const double ns = trace(L, Boundary::neumann, s, Representation::spectral);
      const double ni = trace(L, Boundary::neumann, s, Representation::image);
      EXPECT_LE(std::abs(ns - ni) / ns, 1e-12) << L << " " << s;
      // The Dirichlet image sum carries O(w) terms cancelling down to an
      // exponentially small trace; relative agreement is only meaningful where
      // the trace itself is O(w).
      const double ds = trace(L, Boundary::dirichlet, s, Representation::spectral);
      const double di = trace(L, Boundary::dirichlet, s, Representation::image);
      const double w = L / std::sqrt(4.0 * kPi * s);
      const double scale = s <= L * L / kPi ? ds : w + 0.5;
      EXPECT_LE(std::abs(ds - di) / scale, 1e-12) << L << " " << s;
    }
  }
}

TEST(IntervalTrace, PartsAreConsistent) {
  for (double L : {0.5, 3.0}) {
    for (double s : log_grid(1e-4, 1e2, 25)) {
      for (auto bc : {Boundary::neumann, Boundary::dirichlet}) {
        const auto p = hk::interval_trace_parts(L, {bc, s});
        EXPECT_DOUBLE_EQ(p.weyl, L / std::sqrt(4.0 * kPi * s));
        const double t = p.total();
        EXPECT_LE(std::abs(p.weyl + p.boundary - t), 1e-13 * (p.weyl + 1.0));
        EXPECT_EQ(p.zero_mode, bc == Boundary::neumann ? 1.0 : 0.0);
        EXPECT_LE(p.truncation_bound, 1e-13 * std::max(t, 1e-300) + 1e-300);
      }
    }
  }
}

TEST(IntervalTrace, MonotoneAndOrdered) {
  Gen g;
  for (int i = 0; i < 100; ++i) {
    const double L = g.log_uniform(0.2, 10.0);
    const double s1 = g.log_uniform(1e-4, 10.0), s2 = s1 * g.uniform(1.01, 3.0);
    EXPECT_GE(trace(L, Boundary::neumann, s1), trace(L, Boundary::neumann, s2));
    const double e1 = hk::interval_trace_parts(L, {Boundary::neumann, s1}).excited;
    const double e2 = hk::interval_trace_parts(L, {Boundary::neumann, s2}).excited;
    if (e1 > 1e-290) EXPECT_GT(e1, e2);
    EXPECT_GE(trace(L, Boundary::dirichlet, s1), trace(L, Boundary::dirichlet, s2));
    EXPECT_LE(trace(L, Boundary::dirichlet, s1), trace(L, Boundary::neumann, s1) - 1.0 + 1e-12);
  }
}

TEST(TraceQuery, Validation) {
  EXPECT_THROW(trace(1.0, Boundary::neumann, 0.0), hkbec::InvalidArgument);
  EXPECT_THROW(trace(1.0, Boundary::neumann, -1.0), hkbec::InvalidArgument);
  EXPECT_THROW(trace(0.0, Boundary::neumann, 1.0), hkbec::InvalidArgument);
}

TEST(BoxTrace, Examples) {
  const auto c1 = ConvexDomain::cube(1.0);
  EXPECT_NEAR(hk::box_trace(c1, {Boundary::neumann, 100.0}), 1.0, 1e-300);
  EXPECT_LT(rel(hk::box_trace(c1, {Boundary::neumann, 0.01}), 36.62572193584205647), 1e-13);
  for (auto bc : {Boundary::neumann, Boundary::dirichlet}) {
    for (double s : {0.01, 0.3, 5.0}) {
      const double prod = trace(1.0, bc, s) * trace(2.0, bc, s) * trace(3.0, bc, s);
      EXPECT_LT(rel(hk::box_trace(ConvexDomain::box(1.0, 2.0, 3.0), {bc, s}), prod), 1e-15);
    }
  }
  EXPECT_THROW(hk::box_trace(ConvexDomain::ball(1.0), {Boundary::neumann, 1.0}),
               hkbec::InvalidArgument);
}

TEST(BoxTracePrime, Examples) {
  const auto c1 = ConvexDomain::cube(1.0);
  EXPECT_LE(hk::box_trace_prime(c1, 100.0), 1e-300);
  EXPECT_GE(hk::box_trace_prime(c1, 100.0), 0.0);
  EXPECT_LT(rel(hk::box_trace_prime(c1, 0.01), 35.62572193584205647), 1e-13);
  Gen g;
  for (int i = 0; i < 50; ++i) {
    const double s = g.log_uniform(1e-4, 10.0);
    EXPECT_LT(rel(hk::box_trace_prime(ConvexDomain::cube(2.0), s), hk::box_trace_prime(c1, s / 4.0)),
              1e-13);
  }
}

TEST(BoxTracePrime, ExcitedModesWithoutCancellation) {
  // At large s the primed trace is ~ 3 e^{-s pi^2 / L^2}; computing Tr - 1 would lose it.
  const auto c = ConvexDomain::cube(1.0);
  const double s = 3.0;
  const double e1 = std::exp(-s * kPi * kPi);
  EXPECT_LT(rel(hk::box_trace_prime(c, s), 3.0 * e1 + 3.0 * e1 * e1 + 3.0 * std::pow(e1, 4)), 1e-10);
}

TEST(BoxTrace, WeylLimit) {
  for (const auto& d : {ConvexDomain::cube(1.0), ConvexDomain::box(1.0, 2.0, 0.5)}) {
    const double s = 1e-6;
    const double v = hk::box_trace(d, {Boundary::neumann, s});
    EXPECT_LT(rel(v, d.volume() * std::pow(4.0 * kPi * s, -1.5)), 1e-2);
    // Volume plus face term; the edge term is O(sqrt(s)) relative to the face term.
    const double two_term = d.volume() * std::pow(4.0 * kPi * s, -1.5) + d.boundary_area() / (16.0 * kPi * s);
    EXPECT_LT(rel(v, two_term), 1e-4);
  }
}

TEST(BoxTrace, DensityExcessAgreesWithDirectDifference) {
  Gen g;
  for (int i = 0; i < 50; ++i) {
    const auto d = ConvexDomain::box(g.uniform(0.5, 3.0), g.uniform(0.5, 3.0), g.uniform(0.5, 3.0));
    const double s = g.log_uniform(1e-2, 1.0);
    for (auto bc : {Boundary::neumann, Boundary::dirichlet}) {
      const double direct = hk::box_trace(d, {bc, s}) / d.volume() - hk::bulk_kernel(s);
      EXPECT_NEAR(hk::box_trace_density_excess(d, s, bc), direct, 1e-12 * hk::bulk_kernel(s));
    }
  }
}

TEST(BoxTracePrime, OverBulkForms) {
  Gen g;
  for (int i = 0; i < 50; ++i) {
    const auto d = ConvexDomain::cube(g.uniform(0.5, 4.0));
    const double s = g.log_uniform(1e-3, 3.0);
    const double ratio = hk::box_trace_prime(d, s) / d.volume() / hk::bulk_kernel(s);
    EXPECT_LT(rel(hk::box_trace_prime_over_bulk(d, s), ratio), 1e-12);
    EXPECT_NEAR(hk::box_trace_prime_over_bulk_excess(d, s), ratio - 1.0, 1e-12 * std::max(1.0, ratio));
  }
}

TEST(BoxTracePrime, PositiveSurfaceTerm) {
  for (double L : {1.0, 4.0, 16.0}) {
    for (double s : {1e-4, 1e-3, 1e-2}) {
      const auto d = ConvexDomain::cube(L);
      EXPECT_GT(hk::box_trace_prime(d, s) / d.volume() - hk::bulk_kernel(s), 0.0);
    }
  }
}

TEST(BoxTrace, AreaLawExponent) {
  // At fixed s the excess is (A / V) / (4 pi s) * (1/2)(4 pi s)^{-1/2} + O(1/L^2),
  // so the log-log slope over L in [64, 512] is within 0.05 of -1 for both traces.
  std::vector<double> xs, un, pr;
  for (double L : {64.0, 128.0, 256.0, 512.0}) {
    const auto d = ConvexDomain::cube(L);
    xs.push_back(std::log(L));
    un.push_back(std::log(hk::box_trace_density_excess(d, 1.0)));
    pr.push_back(std::log(hk::box_trace_prime(d, 1.0) / d.volume() - hk::bulk_kernel(1.0)));
  }
  const auto slope = [&](const std::vector<double>& ys) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= xs.size(), my /= xs.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    return sxy / sxx;
  };
  EXPECT_NEAR(-slope(un), 1.0, 0.05);
  EXPECT_NEAR(-slope(pr), 1.0, 0.05);
}

TEST(DiagKernel, CenterApproachesBulk) {
  const auto c = ConvexDomain::cube(1.0);
  const double k = hk::diag_kernel_box({0.5, 0.5, 0.5}, c, {Boundary::neumann, 0.001}).value;
  EXPECT_LT(rel(k, hk::bulk_kernel(0.001)), 1e-12);
  EXPECT_NEAR(k, 709.8803, 1e-3);
}

TEST(DiagKernel, LargeTimeIsConstantMode) {
  const auto c = ConvexDomain::box(1.0, 1.5, 2.0);
  const double k = hk::diag_kernel_box({0.2, 0.7, 1.9}, c, {Boundary::neumann, 200.0}).value;
  EXPECT_LT(rel(k, 1.0 / c.volume()), 1e-12);
}

TEST(DiagKernel, MatchesEigenfunctionExpansion) {
  Gen g;
  for (int i = 0; i < 200; ++i) {
    const double l1 = g.uniform(0.5, 3.0), l2 = g.uniform(0.5, 3.0), l3 = g.uniform(0.5, 3.0);
    const auto d = ConvexDomain::box(l1, l2, l3);
    const hkbec::geometry::Point3 x{g.uniform(0.01, 0.99) * l1, g.uniform(0.01, 0.99) * l2,
                                    g.uniform(0.01, 0.99) * l3};
    const double s = g.log_uniform(1e-3, 10.0);
    const double ref = hkbec::testing::neumann_diag_spectral(x[0], l1, s) *
                       hkbec::testing::neumann_diag_spectral(x[1], l2, s) *
                       hkbec::testing::neumann_diag_spectral(x[2], l3, s);
    EXPECT_LT(rel(hk::diag_kernel_box(x, d, {Boundary::neumann, s}).value, ref), 1e-11);
  }
}

TEST(DiagKernel, IntegratesToTrace) {
  // Tensor Gauss-Legendre, two panels per axis.
  using GL = boost::math::quadrature::gauss<double, 30>;
  const auto d = ConvexDomain::box(1.0, 1.3, 0.8);
  const auto& l = d.sides();
  for (double s : {0.02, 0.2}) {
    std::vector<std::pair<double, double>> nodes[3];
    for (int ax = 0; ax < 3; ++ax) {
      for (int panel = 0; panel < 2; ++panel) {
        const double a = panel * l[ax] / 2, h = l[ax] / 4;
        const auto& ab = GL::abscissa();
        const auto& w = GL::weights();
        for (std::size_t k = 0; k < ab.size(); ++k) {
          for (int sign : {-1, 1}) {
            if (k == 0 && sign == 1 && ab[0] == 0.0) continue;
            nodes[ax].push_back({a + h + sign * h * ab[k], h * w[k]});
          }
        }
      }
    }
    double total = 0.0;
    for (const auto& [x, wx] : nodes[0]) {
      for (const auto& [y, wy] : nodes[1]) {
        for (const auto& [z, wz] : nodes[2]) {
          total += wx * wy * wz * hk::diag_kernel_box({x, y, z}, d, {Boundary::neumann, s}).value;
        }
      }
    }
    EXPECT_LT(rel(total, hk::box_trace(d, {Boundary::neumann, s})), 1e-10) << s;
  }
}

TEST(DiagKernel, RejectsBoundaryAndOutsidePoints) {
  const auto c = ConvexDomain::cube(1.0);
  EXPECT_THROW(hk::diag_kernel_box({0.0, 0.5, 0.5}, c, {}), hkbec::InvalidArgument);
  EXPECT_THROW(hk::diag_kernel_box({1e-14, 0.5, 0.5}, c, {}), hkbec::InvalidArgument);
  EXPECT_THROW(hk::diag_kernel_box({1.2, 0.5, 0.5}, c, {}), hkbec::InvalidArgument);
  EXPECT_THROW(hk::diag_kernel_box({0.5, 0.5, 0.5}, ConvexDomain::ball(1.0), {}),
               hkbec::InvalidArgument);
}

TEST(DiagKernel, RelativeExcessForm) {
  Gen g;
  for (int i = 0; i < 100; ++i) {
    const double L = g.uniform(1.0, 4.0);
    const auto d = ConvexDomain::cube(L);
    const hkbec::geometry::Point3 x{g.uniform(0.02, 0.98) * L, g.uniform(0.02, 0.98) * L,
                                    g.uniform(0.02, 0.98) * L};
    const double s = g.log_uniform(0.05, 2.0);
    const auto ex = hk::diag_relative_excess(x, d, s);
    EXPECT_DOUBLE_EQ(ex.distance, d.boundary_distance(x));
    const double k = hk::diag_kernel_box(x, d, {Boundary::neumann, s}).value;
    const double direct = k / hk::bulk_kernel(s) - 1.0;
    EXPECT_NEAR(ex.scaled * std::exp(-ex.distance * ex.distance / s), direct,
                1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST(BulkKernel, Examples) {
  EXPECT_NEAR(hk::bulk_kernel(1.0), 0.02244839026564582, 1e-16);
  EXPECT_DOUBLE_EQ(hk::bulk_kernel(1.0 / (4.0 * kPi)), 1.0);
  EXPECT_LT(rel(hk::bulk_kernel(0.001), std::pow(4e-3 * kPi, -1.5)), 1e-15);
  EXPECT_LT(rel(hk::bulk_kernel(2.0, 1), 1.0 / std::sqrt(8.0 * kPi)), 1e-15);
  EXPECT_THROW(hk::bulk_kernel(0.0), hkbec::InvalidArgument);
}

TEST(BrownEnvelope, Examples) {
  EXPECT_LT(rel(hk::brown_envelope(1.0, 1.0, 0.5), std::exp(-1.0) * std::pow(4.0 * kPi, -1.5)), 1e-14);
  EXPECT_LT(rel(hk::brown_envelope(0.5, 0.25, 0.5), std::exp(-1.0) * std::pow(kPi, -1.5)), 1e-14);
  EXPECT_NEAR(hk::brown_envelope(0.5, 0.25, 0.5), 0.0660664, 1e-7);
  EXPECT_EQ(hk::brown_envelope(100.0, 1.0, 0.5), 0.0);
  EXPECT_THROW(hk::brown_envelope(1.0, 1.0, 1.0), hkbec::InvalidArgument);
  EXPECT_THROW(hk::brown_envelope(1.0, 1.0, 0.0), hkbec::InvalidArgument);
}
