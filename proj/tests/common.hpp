#pragma once

#include <cmath>

#include "bcnf/core.hpp"

namespace fixtures {

inline const bcnf::Params xi_a{1.5, 0.2, -2.0, 0.5};
inline const bcnf::Params xi_b{1.3, 0.2, -1.7, 0.5};

// Quadratic-formula roots of l^2 - t l + d, larger magnitude first.
struct Roots {
  double big, small;
};
inline Roots roots(double t, double d) {
  const double r = std::sqrt(t * t - 4.0 * d);
  const double a = (t + r) / 2.0, b = (t - r) / 2.0;
  return std::abs(a) > std::abs(b) ? Roots{a, b} : Roots{b, a};
}

}  // namespace fixtures
