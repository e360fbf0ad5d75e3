#include "doctest.h"

#include <set>

#include "bcnf/errors.hpp"
#include "bcnf/io.hpp"
#include "bcnf/param_space.hpp"
#include "common.hpp"

using namespace bcnf;
using fixtures::xi_a;

namespace {

double phi_oracle(const Params& p) {
  const double lu = fixtures::roots(p.tau_L, p.delta_L).big;
  return p.delta_R - (p.tau_R + p.delta_L + p.delta_R - (1.0 + p.tau_R) * lu) * lu;
}

}  // namespace

TEST_CASE("Phi membership and the violated inequality") {
  CHECK(in_phi(xi_a));
  CHECK_FALSE(phi_violation(xi_a));
  const Params bad{1.5, 0.2, 2.0, 0.5};
  CHECK_FALSE(in_phi(bad));
  REQUIRE(phi_violation(bad));
  CHECK(*phi_violation(bad) == "tau_R < -(delta_R + 1)");
  CHECK_FALSE(classify_region(bad).in_Phi);
  // Boundaries are excluded.
  CHECK_FALSE(in_phi({1.2, 0.2, -2.0, 0.5}));
  CHECK_FALSE(in_phi({1.5, 0.2, -1.5, 0.5}));
  CHECK_THROWS_AS(phi(bad), DomainError);
}

TEST_CASE("phi at xi_a and at g(xi_a)") {
  CHECK(phi(xi_a) == doctest::Approx(phi_oracle(xi_a)).epsilon(1e-14));
  CHECK(phi(xi_a) == doctest::Approx(0.42958).epsilon(1e-5));
  CHECK(in_phi_byg(xi_a));
  const Params g = renormalise(xi_a);
  CHECK(phi(g) == doctest::Approx(phi_oracle(g)).epsilon(1e-14));
  CHECK(phi(g) == doctest::Approx(-13.07).epsilon(1e-3));
}

TEST_CASE("phi reduces to delta_R when the bracket vanishes") {
  // Pick tau_R so that (1 + tau_R) lu = tau_R + delta_L + delta_R.
  const double tL = 2.0, dL = 0.3, dR = 0.4;
  const double lu = fixtures::roots(tL, dL).big;
  const double tR = (dL + dR - lu) / (lu - 1.0);
  CHECK(phi_formula({tL, dL, tR, dR}) == doctest::Approx(dR).epsilon(1e-12));
}

TEST_CASE("renormalisation") {
  const Params g = renormalise(xi_a);
  CHECK(g == Params{3.0, 0.25, -3.7, 0.1});
  const Params star{1.0, 0.0, -1.0, 0.0};
  CHECK(renormalise(star) == star);
  const Params z = renormalise({1.7, 0.0, -2.3, 0.0});
  CHECK(z == Params{-2.3 * -2.3, 0.0, 1.7 * -2.3, 0.0});
}

TEST_CASE("xi_a lies in R_0 with both theorems applying") {
  const RegionClass rc = classify_region(xi_a);
  CHECK(rc.in_Phi);
  CHECK(rc.in_Phi_BYG);
  REQUIRE(rc.rn_index);
  CHECK(*rc.rn_index == 0);
  REQUIRE(rc.flags);
  CHECK(rc.flags->J1 == doctest::Approx(1.28800).epsilon(1e-5));
  CHECK(rc.flags->J2 == doctest::Approx(0.50261).epsilon(1e-5));
  CHECK(rc.flags->sum_stable == doctest::Approx(0.44081).epsilon(1e-5));
  CHECK(rc.flags->thm1_applies);
  CHECK(rc.flags->thm2_applies);
}

TEST_CASE("J1 and the stable sum against eigenvalue oracles") {
  const auto L = fixtures::roots(1.5, 0.2), R = fixtures::roots(-2.0, 0.5);
  const TheoremFlags f = chaos_indices(xi_a);
  CHECK(f.J1 == doctest::Approx(L.big * R.big * R.big / (L.big - R.big)).epsilon(1e-14));
  CHECK(f.sum_stable == doctest::Approx(L.small - R.small).epsilon(1e-14));
}

TEST_CASE("thm2 implies thm1 on a grid") {
  for (double tL = 1.25; tL < 3.0; tL += 0.05)
    for (double tR = -4.0; tR < -1.5; tR += 0.05) {
      const TheoremFlags f = chaos_indices({tL, 0.2, tR, 0.5});
      if (f.thm2_applies) CHECK(f.thm1_applies);
    }
}

TEST_CASE("slice quantities") {
  const auto l = fixtures::roots((1.0 - 0.2) / 0.5, -1.0);  // divided through by -delta_R
  CHECK(lambda_star(0.2, 0.5) == doctest::Approx(l.big).epsilon(1e-14));
  CHECK(lambda_star(0.2, 0.5) == doctest::Approx(2.0806248).epsilon(1e-7));
  const SliceQuantities q = slice_quantities(xi_a);
  CHECK(q.tau_L_corner == doctest::Approx(2.1767497).epsilon(1e-7));
  REQUIRE(q.m_crit);
  CHECK(*q.m_crit == doctest::Approx(3.77058543183602286).epsilon(1e-14));  // 30-digit evaluation
  CHECK(*q.m_crit == doctest::Approx(3.7705852).epsilon(1e-6));
  CHECK(*q.m_crit > 2.0 * xi_a.delta_R);
  CHECK_THROWS_AS(lambda_star(0.2, 0.0), DomainError);
  CHECK_FALSE(slice_quantities({1.0, 0.2, -2.0, 0.5}).m_crit);
}

TEST_CASE("R_n on the delta = (0.2, 0.5) slice") {
  SliceConfig cfg;
  cfg.tau_L = {1.0, 3.0, 80};
  cfg.tau_R = {-4.0, -1.0, 80};
  std::set<int> seen;
  for (const SweepRow& r : sweep_rows(cfg)) {
    if (!r.rn_index) continue;
    seen.insert(*r.rn_index);
    // Membership in R_n needs phi(g^n) > 0, so R_0 lies inside Phi_BYG.
    if (*r.rn_index == 0) CHECK(r.region == RegionCode::Byg);
  }
  CHECK(seen == std::set<int>{0, 1});
}
