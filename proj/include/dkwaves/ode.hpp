#pragma once

#include "dkwaves/types.hpp"

#include <cmath>
#include <functional>

namespace dkwaves {

/// Classic fixed-step fourth-order Runge-Kutta for a small first-order
/// system with state vector Vec (any fixed-size Eigen vector). Integrates
/// y' = rhs(x, y) from x0 to x1 (x1 > x0) with steps of size at most `step`
/// (the final step is shortened to land on x1 exactly). When `observe` is
/// set it is called at x0 and after every accepted step.
template <class Vec>
Vec integrate_rk4(const std::function<Vec(Real, const Vec&)>& rhs, Real x0,
                  const Vec& y0, Real x1, Real step,
                  const std::function<void(Real, const Vec&)>& observe = {}) {
  Vec y = y0;
  Real x = x0;
  if (observe) observe(x, y);
  while (x < x1) {
    const Real h = std::min(step, x1 - x);
    const Vec k1 = rhs(x, y);
    const Vec k2 = rhs(x + 0.5 * h, y + (0.5 * h) * k1);
    const Vec k3 = rhs(x + 0.5 * h, y + (0.5 * h) * k2);
    const Vec k4 = rhs(x + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    x += h;
    if (observe) observe(x, y);
  }
  return y;
}

}  // namespace dkwaves
