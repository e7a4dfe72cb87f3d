#pragma once

#include "hkbec/geometry.hpp"

namespace hkbec::heat_kernel {

enum class Boundary { neumann, dirichlet };

/// spectral: sum over eigenvalues (pi n / L)^2. image: Poisson dual, a sum over
/// reflected copies of the free kernel. automatic: spectral when s >= L^2/pi.
enum class Representation { spectral, image, automatic };

struct TraceQuery {
  Boundary bc = Boundary::neumann;
  double s = 1.0;   // diffusion time, length^2
  Representation representation = Representation::automatic;

  void validate() const;
};

struct KernelValue {
  double value = 0.0;
  double truncation_bound = 0.0;   // analytic bound on the dropped Gaussian tail
};

/// One-dimensional trace split two ways:
///   theta = weyl + boundary      (weyl = L / sqrt(4 pi s))
///   theta = zero_mode + excited  (zero_mode = 1 for Neumann, 0 for Dirichlet)
/// Each part is computed without subtracting nearly equal numbers.
struct IntervalTraceParts {
  double weyl = 0.0;
  double boundary = 0.0;
  double excited = 0.0;
  double zero_mode = 0.0;
  double truncation_bound = 0.0;

  double total() const { return zero_mode + excited; }
};

IntervalTraceParts interval_trace_parts(double length, const TraceQuery& q);

KernelValue interval_trace_value(double length, const TraceQuery& q);
double interval_trace(double length, const TraceQuery& q);

/// Product of the three interval traces of a box or cube.
double box_trace(const geometry::ConvexDomain& domain, const TraceQuery& q);

/// Neumann box trace with the constant mode removed.
double box_trace_prime(const geometry::ConvexDomain& domain, double s);

/// (1/V) Tr e^{s Delta} - (4 pi s)^{-3/2}.
double box_trace_density_excess(const geometry::ConvexDomain& domain, double s,
                                Boundary bc = Boundary::neumann);

/// (1/V) Tr' e^{s Delta} divided by (4 pi s)^{-3/2} (Neumann, zero mode removed).
double box_trace_prime_over_bulk(const geometry::ConvexDomain& domain, double s);

/// box_trace_prime_over_bulk(domain, s) - 1.
double box_trace_prime_over_bulk_excess(const geometry::ConvexDomain& domain, double s);

/// Diagonal heat kernel K_s(X, X) of a box, product of 1D diagonals.
KernelValue diag_kernel_box(const geometry::Point3& x, const geometry::ConvexDomain& domain,
                            const TraceQuery& q);

/// Neumann K_s(X,X) / (4 pi s)^{-3/2} - 1 written as scaled * exp(-d^2 / s),
/// d the distance from X to the boundary.
struct ScaledExcess {
  double scaled = 0.0;
  double distance = 0.0;
};
ScaledExcess diag_relative_excess(const geometry::Point3& x,
                                  const geometry::ConvexDomain& domain, double s);

/// (4 pi s)^{-d/2}
double bulk_kernel(double s, int d = 3);

/// (z / sqrt(s))^eta exp(-z^2 / s) (4 pi s)^{-3/2}
double brown_envelope(double z, double s, double eta);

}  // namespace hkbec::heat_kernel
