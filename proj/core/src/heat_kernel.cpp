#include "hkbec/heat_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "hkbec/error.hpp"

namespace hkbec::heat_kernel {
namespace {

using geometry::ConvexDomain;
using geometry::Point3;

constexpr double kPi = std::numbers::pi;
constexpr double kStop = 1e-17;
constexpr long kMaxTerms = 100'000'000;

// Neumaier-compensated accumulator; the forced (off-regime) representations
// add up to ~1e3 terms of similar size.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct SeriesValue {
  double sum = 0.0;
  double bound = 0.0;
};

// sum_{n>=1} weight(n) exp(-c n^2) with 0 <= weight <= wmax.
template <class Weight>
SeriesValue gaussian_series(double c, Weight weight, double wmax) {
  SeriesValue out;
  if (c > 745.0) return out;
  Accumulator acc;
  for (long n = 1; n <= kMaxTerms; ++n) {
    const double nd = static_cast<double>(n);
    acc.add(weight(n) * std::exp(-c * nd * nd));
    const double next = std::exp(-c * (nd + 1.0) * (nd + 1.0));
    // sum_{m>n} e^{-c m^2} <= e^{-c(n+1)^2} / (1 - e^{-c(2n+3)})
    const double tail = wmax * next / -std::expm1(-c * (2.0 * nd + 3.0));
    if (tail <= kStop * std::abs(acc.value()) || next == 0.0) {
      out.sum = acc.value();
      out.bound = tail;
      return out;
    }
  }
  throw CapError("heat kernel series exceeded the term cap");
}

SeriesValue gaussian_sum(double c) {
  return gaussian_series(c, [](long) { return 1.0; }, 1.0);
}

bool use_spectral(double length, const TraceQuery& q) {
  switch (q.representation) {
    case Representation::spectral: return true;
    case Representation::image: return false;
    default: return q.s >= length * length / kPi;
  }
}

// sum_{m in Z} exp(-((x - mL)^2 - shift) / s), nearest images first.
SeriesValue position_images(double x, double length, double s, double shift) {
  Accumulator acc;
  double bound = 0.0;
  for (int dir : {0, 1}) {
    // dir 0: m = 0, -1, -2, ...   dir 1: m = 1, 2, ...
    for (long k = 0; k <= kMaxTerms; ++k) {
      const double m = dir == 0 ? -static_cast<double>(k) : static_cast<double>(k + 1);
      const double r = x - m * length;
      const double term = std::exp(-(r * r - shift) / s);
      acc.add(term);
      // Terms beyond decay at least geometrically with ratio e^{-L^2/s}
      // once |r| >= L.
      const double ratio = std::exp(-length * length / s);
      const double tail = term * ratio / -std::expm1(-length * length / s);
      if (std::abs(r) >= length && (tail <= kStop * acc.value() || term == 0.0)) {
        bound += tail;
        break;
      }
    }
  }
  return {acc.value(), bound};
}

void require_box(const ConvexDomain& domain, const char* what) {
  if (!domain.is_box_like()) {
    throw InvalidArgument(std::string(what) + ": only boxes and cubes have a closed spectrum");
  }
}

struct Factors {
  std::array<IntervalTraceParts, 3> p;
};

Factors box_factors(const ConvexDomain& domain, const TraceQuery& q) {
  require_box(domain, "box trace");
  Factors f;
  const auto& l = domain.sides();
  f.p[0] = interval_trace_parts(l[0], q);
  for (int i = 1; i < 3; ++i) {
    f.p[i] = l[i] == l[0] ? f.p[0] : interval_trace_parts(l[i], q);
  }
  return f;
}

// prod(theta) - prod(weyl) = sum_i prod_{j<i} w_j * b_i * prod_{j>i} theta_j
double product_minus_weyl(const Factors& f) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    double term = f.p[i].boundary;
    for (int j = 0; j < i; ++j) term *= f.p[j].weyl;
    for (int j = i + 1; j < 3; ++j) term *= f.p[j].total();
    sum += term;
  }
  return sum;
}

// prod(1 + e) - 1 = sum_i e_i prod_{j>i} theta_j
double product_minus_one(const Factors& f) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    double term = f.p[i].excited;
    for (int j = i + 1; j < 3; ++j) term *= f.p[j].total();
    sum += term;
  }
  return sum;
}

double weyl_product(const Factors& f) { return f.p[0].weyl * f.p[1].weyl * f.p[2].weyl; }

TraceQuery neumann(double s) {
  TraceQuery q;
  q.bc = Boundary::neumann;
  q.s = s;
  return q;
}

void require_interior(const Point3& x, const ConvexDomain& domain) {
  require_box(domain, "diag_kernel_box");
  const auto& l = domain.sides();
  for (int i = 0; i < 3; ++i) {
    if (!(x[i] >= 0.0 && x[i] <= l[i])) {
      throw InvalidArgument("diag_kernel_box: point lies outside the domain");
    }
    const double margin = 1e-12 * l[i];
    if (x[i] < margin || x[i] > l[i] - margin) {
      throw InvalidArgument("diag_kernel_box: point is within 1e-12 L of the boundary");
    }
  }
}

KernelValue diag_1d(double x, double length, const TraceQuery& q) {
  const double sign = q.bc == Boundary::neumann ? 1.0 : -1.0;
  KernelValue out;
  if (use_spectral(length, q)) {
    const double c = q.s * kPi * kPi / (length * length);
    const double k = 2.0 * kPi * x / length;
    const SeriesValue g = gaussian_series(
        c, [&](long n) { return 1.0 + sign * std::cos(k * static_cast<double>(n)); }, 2.0);
    const double zero = q.bc == Boundary::neumann ? 1.0 : 0.0;
    out.value = (zero + g.sum) / length;
    out.truncation_bound = g.bound / length;
  } else {
    const double pre = 1.0 / std::sqrt(4.0 * kPi * q.s);
    const SeriesValue wall = gaussian_sum(length * length / q.s);
    const SeriesValue pos = position_images(x, length, q.s, 0.0);
    out.value = pre * (1.0 + 2.0 * wall.sum + sign * pos.sum);
    out.truncation_bound = pre * (2.0 * wall.bound + pos.bound);
  }
  return out;
}

}  // namespace

void TraceQuery::validate() const {
  detail::require(std::isfinite(s) && s > 0.0, "TraceQuery: s must be positive");
}

IntervalTraceParts interval_trace_parts(double length, const TraceQuery& q) {
  q.validate();
  detail::require(std::isfinite(length) && length > 0.0, "interval trace: L must be positive");
  IntervalTraceParts p;
  p.weyl = length / std::sqrt(4.0 * kPi * q.s);
  p.zero_mode = q.bc == Boundary::neumann ? 1.0 : 0.0;
  if (use_spectral(length, q)) {
    const SeriesValue g = gaussian_sum(q.s * kPi * kPi / (length * length));
    p.excited = g.sum;
    p.boundary = p.zero_mode + p.excited - p.weyl;
    p.truncation_bound = g.bound;
  } else {
    // theta_N = w + 1/2 + 2w S, theta_D = w - 1/2 + 2w S, S = sum_{m>=1} e^{-m^2 L^2/s};
    // theta_N - 1 = theta_D.
    const SeriesValue img = gaussian_sum(length * length / q.s);
    const double images = 2.0 * p.weyl * img.sum;
    p.boundary = (q.bc == Boundary::neumann ? 0.5 : -0.5) + images;
    p.excited = (p.weyl - 0.5) + images;
    p.truncation_bound = 2.0 * p.weyl * img.bound;
  }
  return p;
}

KernelValue interval_trace_value(double length, const TraceQuery& q) {
  const IntervalTraceParts p = interval_trace_parts(length, q);
  return {p.total(), p.truncation_bound};
}

double interval_trace(double length, const TraceQuery& q) {
  return interval_trace_value(length, q).value;
}

double box_trace(const ConvexDomain& domain, const TraceQuery& q) {
  const Factors f = box_factors(domain, q);
  return f.p[0].total() * f.p[1].total() * f.p[2].total();
}

double box_trace_prime(const ConvexDomain& domain, double s) {
  return product_minus_one(box_factors(domain, neumann(s)));
}

double box_trace_density_excess(const ConvexDomain& domain, double s, Boundary bc) {
  TraceQuery q = neumann(s);
  q.bc = bc;
  return product_minus_weyl(box_factors(domain, q)) / domain.volume();
}

double box_trace_prime_over_bulk(const ConvexDomain& domain, double s) {
  const Factors f = box_factors(domain, neumann(s));
  const double w = weyl_product(f);
  if (w > 1.0) {
    double r = 1.0;
    for (const auto& p : f.p) r *= 1.0 + p.boundary / p.weyl;
    return r - 1.0 / w;
  }
  return product_minus_one(f) / w;
}

double box_trace_prime_over_bulk_excess(const ConvexDomain& domain, double s) {
  const Factors f = box_factors(domain, neumann(s));
  const double w = weyl_product(f);
  if (w > 1.0) return (product_minus_weyl(f) - 1.0) / w;
  return product_minus_one(f) / w - 1.0;
}

KernelValue diag_kernel_box(const Point3& x, const ConvexDomain& domain, const TraceQuery& q) {
  q.validate();
  require_interior(x, domain);
  const auto& l = domain.sides();
  KernelValue out{1.0, 0.0};
  double rel = 0.0;
  for (int i = 0; i < 3; ++i) {
    const KernelValue k = diag_1d(x[i], l[i], q);
    out.value *= k.value;
    rel += k.truncation_bound / std::abs(k.value);
  }
  out.truncation_bound = rel * std::abs(out.value);
  return out;
}

ScaledExcess diag_relative_excess(const Point3& x, const ConvexDomain& domain, double s) {
  const TraceQuery q = neumann(s);
  q.validate();
  require_interior(x, domain);
  const auto& l = domain.sides();
  std::array<double, 3> z{}, rt{};
  for (int i = 0; i < 3; ++i) {
    z[i] = std::min(x[i], l[i] - x[i]);
    // Per-coordinate K_i / (4 pi s)^{-1/2} = 1 + r_i; rt_i = r_i e^{z_i^2/s}.
    if (use_spectral(l[i], q)) {
      const double r = std::sqrt(4.0 * kPi * s) * diag_1d(x[i], l[i], q).value - 1.0;
      rt[i] = r * std::exp(z[i] * z[i] / s);
    } else {
      const double zz = z[i] * z[i];
      double walls = 0.0;
      for (long m = 1;; ++m) {
        const double md = static_cast<double>(m);
        const double t = std::exp(-(md * md * l[i] * l[i] - zz) / s);
        walls += t;
        if (t <= kStop * walls || t == 0.0) break;
      }
      rt[i] = 2.0 * walls + position_images(x[i], l[i], s, zz).sum;
    }
  }
  ScaledExcess out;
  out.distance = std::min({z[0], z[1], z[2]});
  const double d2 = out.distance * out.distance;
  for (unsigned mask = 1; mask < 8; ++mask) {
    double prod = 1.0, expo = d2;
    for (int i = 0; i < 3; ++i) {
      if (mask & (1u << i)) {
        prod *= rt[i];
        expo -= z[i] * z[i];
      }
    }
    out.scaled += prod * std::exp(expo / s);
  }
  return out;
}

double bulk_kernel(double s, int d) {
  detail::require(std::isfinite(s) && s > 0.0, "bulk_kernel: s must be positive");
  detail::require(d >= 1, "bulk_kernel: dimension must be positive");
  return std::pow(4.0 * kPi * s, -0.5 * d);
}

double brown_envelope(double z, double s, double eta) {
  detail::require(std::isfinite(z) && z > 0.0, "brown_envelope: z must be positive");
  detail::require(std::isfinite(s) && s > 0.0, "brown_envelope: s must be positive");
  detail::require(eta > 0.0 && eta < 1.0, "brown_envelope: eta must lie in (0, 1)");
  return std::pow(z / std::sqrt(s), eta) * std::exp(-z * z / s) * bulk_kernel(s, 3);
}

}  // namespace hkbec::heat_kernel
