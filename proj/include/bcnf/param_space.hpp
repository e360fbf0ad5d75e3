#pragma once

// Parameter-space calculus: the saddle-saddle region Phi, the robust-chaos
// region Phi_BYG = {phi > 0}, the renormalisation operator g and the
// regions R_n, and the indices J1, J2 that gate the two chaos theorems.

#include <optional>
#include <string>

#include "bcnf/core.hpp"

namespace bcnf {

inline constexpr int kDefaultRnMax = 12;

/// tau_L > delta_L + 1, delta_L > 0, tau_R < -(delta_R + 1), delta_R > 0, all strict.
bool in_phi(const Params& xi);

/// Names the first violated inequality of Phi, or nullopt when xi is in Phi.
std::optional<std::string> phi_violation(const Params& xi);

/// phi(xi) = delta_R - (tau_R + delta_L + delta_R - (1 + tau_R) lu) lu with
/// lu = lambda_L^u. Throws DomainError outside Phi.
double phi(const Params& xi);

/// Same formula, only requiring lambda_L^u to be real. Used on closures of
/// Phi such as the corner tau_R = -delta_R - 1.
double phi_formula(const Params& xi);

bool in_phi_byg(const Params& xi);

/// g(xi) = (tau_R^2 - 2 delta_R, delta_R^2, tau_L tau_R - delta_L - delta_R, delta_L delta_R).
Params renormalise(const Params& xi);

struct TheoremFlags {
  double J1 = 0.0;
  double J2 = 0.0;
  double sum_stable = 0.0;  // lambda_L^s + |lambda_R^s|
  bool thm1_applies = false;
  bool thm2_applies = false;
};

struct RegionClass {
  bool in_Phi = false;
  bool in_Phi_BYG = false;
  std::optional<int> rn_index;
  std::optional<TheoremFlags> flags;  // set when in_Phi
};

/// Throws DomainError outside Phi.
TheoremFlags chaos_indices(const Params& xi);

/// Total classification. rn_index is the first n <= n_max with
/// phi(g^n(xi)) > 0 and phi(g^{n+1}(xi)) <= 0, compared exactly.
RegionClass classify_region(const Params& xi, int n_max = kDefaultRnMax);

struct SliceQuantities {
  double lambda_star = 0.0;
  double tau_L_corner = 0.0;
  std::optional<double> m_crit;  // set when xi is in Phi
};

/// Largest root of -delta_R l^2 + (1 - delta_L) l + delta_R = 0.
/// Throws DomainError when delta_R <= 0.
double lambda_star(double delta_L, double delta_R);

/// m_crit = lambda_L^s + 2 tau_L / ((lambda_L^u)^2 - 1). Throws DomainError outside Phi.
double m_crit(const Params& xi);

SliceQuantities slice_quantities(const Params& xi);

}  // namespace bcnf
