#pragma once

#include <array>
#include <functional>

namespace hkbec::geometry {

enum class Shape { interval, box, cube, ball };

using Point3 = std::array<double, 3>;

/// Interval [0, L], box [0,L1]x[0,L2]x[0,L3], cube [0,L]^3, or the ball of
/// radius L centred at the origin.
class ConvexDomain {
 public:
  static ConvexDomain interval(double length);
  static ConvexDomain box(double l1, double l2, double l3);
  static ConvexDomain cube(double side);
  static ConvexDomain ball(double radius);

  Shape shape() const { return shape_; }
  int dimension() const { return shape_ == Shape::interval ? 1 : 3; }
  bool is_box_like() const { return shape_ == Shape::box || shape_ == Shape::cube; }

  /// Box sides, or {L, L, L} for a cube. Rejected for interval and ball.
  const std::array<double, 3>& sides() const;
  /// Interval length, cube side or ball radius. Rejected for a general box.
  double length() const;

  double volume() const;
  double boundary_area() const;
  double diameter() const;
  double inradius() const;

  ConvexDomain scaled(double c) const;

  /// Distance from an interior point to the boundary; negative outside.
  double boundary_distance(const Point3& x) const;

 private:
  ConvexDomain(Shape shape, std::array<double, 3> sides) : shape_(shape), sides_(sides) {}
  Shape shape_;
  std::array<double, 3> sides_;
};

/// Inner parallel body volume V(z) and its density f(z) = |dV/dz| on [0, D/2].
class DistanceProfile {
 public:
  explicit DistanceProfile(const ConvexDomain& domain) : domain_(domain) {}
  double inner_volume(double z) const;
  double density(double z) const;
  double support_end() const { return 0.5 * domain_.diameter(); }
  const ConvexDomain& domain() const { return domain_; }

 private:
  ConvexDomain domain_;
};

double inner_parallel_volume(const ConvexDomain& domain, double z);
double distance_density(const ConvexDomain& domain, double z);

using RadialFunction = std::function<double(double)>;

/// int_Omega g(dist(X)) dX = int_0^{D/2} g(z) f(z) dz.
double coarea_integral(const ConvexDomain& domain, const RadialFunction& g,
                       double rel_tol = 1e-8);

/// A(boundary) * int_0^{D/2} g(z) dz, an upper bound for coarea_integral.
double coarea_upper_bound(const ConvexDomain& domain, const RadialFunction& g,
                          double rel_tol = 1e-8);

}  // namespace hkbec::geometry
