#pragma once

// Random parameter points for the property suites.

#include <random>

#include "bcnf/core.hpp"

namespace bcnf {

using Rng = std::mt19937_64;

/// Uniform in the open interval (a, b).
double uniform_open(Rng& rng, double a, double b);

/// delta_L, delta_R in (0, delta_max), tau_L in (delta_L + 1, delta_L + 1 + tau_L_span),
/// tau_R in (-5, -delta_R - 1). Always lands in Phi.
Params sample_phi(Rng& rng, double delta_max = 1.0, double tau_L_span = 3.0);

/// As sample_phi but with tau_L below the slice corner lambda* + delta_L / lambda*,
/// rejecting until phi > 0.
Params sample_phi_byg(Rng& rng);

}  // namespace bcnf
