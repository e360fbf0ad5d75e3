#include "bcnf/param_space.hpp"

#include <algorithm>
#include <cmath>

#include "bcnf/errors.hpp"

namespace bcnf {

std::optional<std::string> phi_violation(const Params& xi) {
  if (!xi.finite()) return "parameters must be finite";
  if (!(xi.tau_L > xi.delta_L + 1.0)) return "tau_L > delta_L + 1";
  if (!(xi.delta_L > 0.0)) return "delta_L > 0";
  if (!(xi.tau_R < -(xi.delta_R + 1.0))) return "tau_R < -(delta_R + 1)";
  if (!(xi.delta_R > 0.0)) return "delta_R > 0";
  return std::nullopt;
}

bool in_phi(const Params& xi) { return !phi_violation(xi).has_value(); }

double phi_formula(const Params& xi) {
  const double lu = eigen(xi, Side::L).lambda_u;
  return xi.delta_R - (xi.tau_R + xi.delta_L + xi.delta_R - (1.0 + xi.tau_R) * lu) * lu;
}

double phi(const Params& xi) {
  if (auto v = phi_violation(xi)) throw DomainError("phi requires xi in Phi: violates " + *v);
  return phi_formula(xi);
}

bool in_phi_byg(const Params& xi) { return in_phi(xi) && phi_formula(xi) > 0.0; }

Params renormalise(const Params& xi) {
  return {xi.tau_R * xi.tau_R - 2.0 * xi.delta_R, xi.delta_R * xi.delta_R,
          xi.tau_L * xi.tau_R - xi.delta_L - xi.delta_R, xi.delta_L * xi.delta_R};
}

TheoremFlags chaos_indices(const Params& xi) {
  if (auto v = phi_violation(xi))
    throw DomainError("chaos indices require xi in Phi: violates " + *v);
  const EigenData L = eigen(xi, Side::L);
  const EigenData R = eigen(xi, Side::R);
  const double lu = L.lambda_u;
  const double ls = L.lambda_s;
  const double ru = std::abs(R.lambda_u);
  const double rs = std::abs(R.lambda_s);
  const double sqrt2 = std::sqrt(2.0);

  TheoremFlags f;
  f.J1 = lu * ru * ru / (lu + ru);
  f.J2 = std::max(ls, sqrt2 * ls / (ls + 1.0)) + std::max(rs, sqrt2 * rs / (rs + 1.0));
  f.sum_stable = ls + rs;
  const bool byg = phi_formula(xi) > 0.0;
  f.thm1_applies = byg && f.J1 > 1.0 && f.sum_stable < 1.0;
  f.thm2_applies = byg && f.J1 > 1.0 && f.J2 < 1.0;
  return f;
}

RegionClass classify_region(const Params& xi, int n_max) {
  RegionClass rc;
  rc.in_Phi = in_phi(xi);
  if (!rc.in_Phi) return rc;
  double current = phi_formula(xi);
  rc.in_Phi_BYG = current > 0.0;
  rc.flags = chaos_indices(xi);

  Params eta = xi;
  for (int n = 0; n <= n_max; ++n) {
    const Params next = renormalise(eta);
    // g maps Phi into Phi; leaving it here means overflow or underflow.
    if (!in_phi(next)) break;
    const double next_phi = phi_formula(next);
    if (current > 0.0 && next_phi <= 0.0) {
      rc.rn_index = n;
      break;
    }
    eta = next;
    current = next_phi;
  }
  return rc;
}

double lambda_star(double delta_L, double delta_R) {
  if (!(delta_R > 0.0)) throw DomainError("lambda* requires delta_R > 0");
  // delta_R l^2 - (1 - delta_L) l - delta_R = 0; roots have product -1, so the
  // larger one is the positive root.
  const double b = 1.0 - delta_L;
  const double root = std::sqrt(b * b + 4.0 * delta_R * delta_R);
  if (b >= 0.0) return (b + root) / (2.0 * delta_R);
  return 2.0 * delta_R / (root - b);
}

double m_crit(const Params& xi) {
  if (auto v = phi_violation(xi)) throw DomainError("m_crit requires xi in Phi: violates " + *v);
  const EigenData L = eigen(xi, Side::L);
  return L.lambda_s + 2.0 * xi.tau_L / (L.lambda_u * L.lambda_u - 1.0);
}

SliceQuantities slice_quantities(const Params& xi) {
  SliceQuantities q;
  q.lambda_star = lambda_star(xi.delta_L, xi.delta_R);
  q.tau_L_corner = q.lambda_star + xi.delta_L / q.lambda_star;
  if (in_phi(xi)) q.m_crit = m_crit(xi);
  return q;
}

}  // namespace bcnf
