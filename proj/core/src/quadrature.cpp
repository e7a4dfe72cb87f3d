#include "hkbec/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hkbec/error.hpp"

namespace hkbec::quad {
namespace {

// Integrator objects cache abscissae; one per thread keeps concurrent callers
// from contending on the lazy refinement.
boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  return rule;
}

boost::math::quadrature::exp_sinh<double>& exp_sinh_rule() {
  thread_local boost::math::quadrature::exp_sinh<double> rule(12);
  return rule;
}

template <class Fn>
Estimate guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ToleranceError(std::string("quadrature failed: ") + e.what());
  }
}

}  // namespace

Estimate endpoint_singular(const Integrand& f, double a, double b, double rel_tol) {
  detail::require(a < b, "endpoint_singular: need a < b");
  return guarded([&] {
    Estimate e;
    e.value = tanh_sinh_rule().integrate(f, a, b, rel_tol, &e.error, &e.l1, &e.levels);
    return e;
  });
}

Estimate smooth(const Integrand& f, double a, double b, double rel_tol) {
  detail::require(a < b, "smooth: need a < b");
  return guarded([&] {
    Estimate e;
    e.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, a, b, 20, rel_tol, &e.error, &e.l1);
    return e;
  });
}

Estimate half_line(const Integrand& f, double a, double rel_tol) {
  return guarded([&] {
    Estimate e;
    e.value = exp_sinh_rule().integrate(f, a, std::numeric_limits<double>::infinity(),
                                        rel_tol, &e.error, &e.l1, &e.levels);
    return e;
  });
}

bool converged(const Estimate& e, double rel_tol) {
  if (!std::isfinite(e.value) || !std::isfinite(e.error)) return false;
  const double scale = std::max(std::abs(e.value), e.l1);
  return e.error <= rel_tol * scale || e.error == 0.0;
}

Accelerated wynn_epsilon(const double* s, std::size_t n) {
  Accelerated out;
  if (n == 0) return out;
  out.value = s[n - 1];
  out.error = n > 1 ? std::abs(s[n - 1] - s[n - 2]) : std::abs(s[0]);
  if (n < 3) return out;

  // prev2 = column k-2, prev = column k-1; column -1 is all zeros.
  std::vector<double> prev2(n + 1, 0.0), prev(s, s + n), cur;
  double best = s[n - 1], best_prev = s[n - 2];
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t len = n - k;
    cur.assign(len, 0.0);
    bool degenerate = false;
    for (std::size_t i = 0; i < len; ++i) {
      const double d = prev[i + 1] - prev[i];
      if (d == 0.0 || !std::isfinite(d)) {
        degenerate = true;
        break;
      }
      cur[i] = prev2[i + 1] + 1.0 / d;
    }
    if (degenerate) break;
    if (k % 2 == 0) {
      best_prev = len > 1 ? cur[len - 2] : best;
      best = cur[len - 1];
    }
    prev2 = std::move(prev);
    prev = cur;
  }
  out.value = best;
  out.error = std::abs(best - best_prev);
  return out;
}

}  // namespace hkbec::quad
