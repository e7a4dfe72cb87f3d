#include "hkbec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hkbec/error.hpp"
#include "hkbec/quadrature.hpp"

namespace hkbec::geometry {
namespace {

constexpr double kPi = std::numbers::pi;

void require_length(double v, const char* what) {
  detail::require(std::isfinite(v) && v > 0.0, std::string(what) + ": lengths must be positive");
}

double integrate_radial(const RadialFunction& h, double upper, double rel_tol) {
  detail::require(rel_tol > 0.0, "coarea: rel_tol must be positive");
  const auto guarded = [&h](double z) {
    const double v = h(z);
    if (std::isnan(v)) throw DivergenceError("coarea: integrand is not a number");
    return v;
  };
  quad::Estimate e;
  try {
    e = quad::endpoint_singular(guarded, 0.0, upper, rel_tol);
  } catch (const ToleranceError& err) {
    throw DivergenceError(std::string("coarea: integral does not converge (") + err.what() + ")");
  }
  if (!std::isfinite(e.value) || !quad::converged(e, std::max(10.0 * rel_tol, 1e-6))) {
    throw DivergenceError("coarea: refinement does not settle; g is not integrable");
  }
  return e.value;
}

}  // namespace

ConvexDomain ConvexDomain::interval(double length) {
  require_length(length, "interval");
  return ConvexDomain(Shape::interval, {length, 0.0, 0.0});
}

ConvexDomain ConvexDomain::box(double l1, double l2, double l3) {
  require_length(l1, "box");
  require_length(l2, "box");
  require_length(l3, "box");
  return ConvexDomain(Shape::box, {l1, l2, l3});
}

ConvexDomain ConvexDomain::cube(double side) {
  require_length(side, "cube");
  return ConvexDomain(Shape::cube, {side, side, side});
}

ConvexDomain ConvexDomain::ball(double radius) {
  require_length(radius, "ball");
  return ConvexDomain(Shape::ball, {radius, 0.0, 0.0});
}

const std::array<double, 3>& ConvexDomain::sides() const {
  detail::require(is_box_like(), "ConvexDomain::sides: only boxes and cubes have sides");
  return sides_;
}

double ConvexDomain::length() const {
  detail::require(shape_ != Shape::box, "ConvexDomain::length: a general box has three lengths");
  return sides_[0];
}

double ConvexDomain::volume() const {
  switch (shape_) {
    case Shape::interval: return sides_[0];
    case Shape::ball: return 4.0 * kPi / 3.0 * std::pow(sides_[0], 3);
    default: return sides_[0] * sides_[1] * sides_[2];
  }
}

double ConvexDomain::boundary_area() const {
  switch (shape_) {
    case Shape::interval: return 2.0;
    case Shape::ball: return 4.0 * kPi * sides_[0] * sides_[0];
    default: {
      const auto& l = sides_;
      return 2.0 * (l[0] * l[1] + l[1] * l[2] + l[0] * l[2]);
    }
  }
}

double ConvexDomain::diameter() const {
  switch (shape_) {
    case Shape::interval: return sides_[0];
    case Shape::ball: return 2.0 * sides_[0];
    default: return std::hypot(sides_[0], sides_[1], sides_[2]);
  }
}

double ConvexDomain::inradius() const {
  switch (shape_) {
    case Shape::interval: return 0.5 * sides_[0];
    case Shape::ball: return sides_[0];
    default: return 0.5 * std::min({sides_[0], sides_[1], sides_[2]});
  }
}

ConvexDomain ConvexDomain::scaled(double c) const {
  require_length(c, "scaled");
  ConvexDomain out = *this;
  for (double& l : out.sides_) l *= c;
  return out;
}

double ConvexDomain::boundary_distance(const Point3& x) const {
  switch (shape_) {
    case Shape::interval: return std::min(x[0], sides_[0] - x[0]);
    case Shape::ball: return sides_[0] - std::hypot(x[0], x[1], x[2]);
    default: {
      double d = std::min(x[0], sides_[0] - x[0]);
      d = std::min(d, std::min(x[1], sides_[1] - x[1]));
      return std::min(d, std::min(x[2], sides_[2] - x[2]));
    }
  }
}

double DistanceProfile::inner_volume(double z) const {
  detail::require(std::isfinite(z) && z >= 0.0, "inner_parallel_volume: z must be >= 0");
  const auto& d = domain_;
  switch (d.shape()) {
    case Shape::interval: return std::max(d.length() - 2.0 * z, 0.0);
    case Shape::ball: {
      const double r = std::max(d.length() - z, 0.0);
      return 4.0 * kPi / 3.0 * r * r * r;
    }
    default: {
      double v = 1.0;
      for (double l : d.sides()) v *= std::max(l - 2.0 * z, 0.0);
      return v;
    }
  }
}

double DistanceProfile::density(double z) const {
  detail::require(std::isfinite(z) && z >= 0.0, "distance_density: z must be >= 0");
  const auto& d = domain_;
  if (z >= d.inradius()) return 0.0;
  switch (d.shape()) {
    case Shape::interval: return 2.0;
    case Shape::ball: {
      const double r = d.length() - z;
      return 4.0 * kPi * r * r;
    }
    default: {
      const auto& l = d.sides();
      const double a = l[0] - 2.0 * z, b = l[1] - 2.0 * z, c = l[2] - 2.0 * z;
      return 2.0 * (a * b + b * c + a * c);
    }
  }
}

double inner_parallel_volume(const ConvexDomain& domain, double z) {
  return DistanceProfile(domain).inner_volume(z);
}

double distance_density(const ConvexDomain& domain, double z) {
  return DistanceProfile(domain).density(z);
}

double coarea_integral(const ConvexDomain& domain, const RadialFunction& g, double rel_tol) {
  const DistanceProfile profile(domain);
  // f vanishes beyond the inradius, so the Stieltjes measure lives on [0, r].
  return integrate_radial([&](double z) { return g(z) * profile.density(z); },
                          domain.inradius(), rel_tol);
}

double coarea_upper_bound(const ConvexDomain& domain, const RadialFunction& g, double rel_tol) {
  return domain.boundary_area() * integrate_radial(g, 0.5 * domain.diameter(), rel_tol);
}

}  // namespace hkbec::geometry
