#include "doctest.h"

#include "bcnf/bifurcation.hpp"
#include "bcnf/cycles.hpp"
#include "bcnf/errors.hpp"
#include "bcnf/param_space.hpp"
#include "common.hpp"

using namespace bcnf;
using fixtures::xi_a;
using fixtures::xi_b;

namespace {

double cycle_residual(const Params& xi, const PeriodicCycle& c) {
  double worst = 0.0;
  for (const Point& p0 : c.points) {
    Point p = p0;
    for (std::size_t k = 0; k < c.word.size(); ++k) p = apply(xi, p);
    worst = std::max(worst, distance(p, p0));
  }
  return worst;
}

}  // namespace

TEST_CASE("single-letter words recover the fixed points") {
  const PeriodicCycle r = find_cycle(xi_a, "R");
  REQUIRE(r.points.size() == 1);
  CHECK(distance(r.points[0], fixed_point_X(xi_a)) < 1e-14);
  const PeriodicCycle l = find_cycle(xi_a, "L");
  CHECK(distance(l.points[0], fixed_point_Y(xi_a)) < 1e-14);
  // The multipliers of a fixed point are its eigenvalues.
  CHECK(r.multipliers[0].real() == doctest::Approx(fixtures::roots(-2.0, 0.5).big).epsilon(1e-13));
  CHECK(r.multipliers[1].real() == doctest::Approx(fixtures::roots(-2.0, 0.5).small).epsilon(1e-13));
}

TEST_CASE("the LRR-cycle at xi_b is a saddle") {
  const PeriodicCycle c = find_cycle(xi_b, "LRR");
  REQUIRE(c.points.size() == 3);
  CHECK(c.points[0].x < 0.0);
  CHECK(c.points[1].x > 0.0);
  CHECK(c.points[2].x > 0.0);
  CHECK(c.saddle);
  CHECK(cycle_residual(xi_b, c) < 1e-10);
  // det of the monodromy is delta_L delta_R^2, and its trace is the multiplier sum.
  CHECK(c.monodromy.det() == doctest::Approx(0.2 * 0.5 * 0.5).epsilon(1e-13));
  CHECK((c.multipliers[0] * c.multipliers[1]).real() == doctest::Approx(0.05).epsilon(1e-12));
  CHECK((c.multipliers[0] + c.multipliers[1]).real() == doctest::Approx(c.monodromy.trace()).epsilon(1e-12));
}

TEST_CASE("rotating the word rotates the cycle") {
  const PeriodicCycle a = find_cycle(xi_a, "LRR"), b = find_cycle(xi_a, "RRL");
  for (std::size_t i = 0; i < 3; ++i) CHECK(distance(a.points[(i + 1) % 3], b.points[i]) < 1e-13);
  CHECK(std::abs(a.multipliers[0] - b.multipliers[0]) < 1e-10);
}

TEST_CASE("longer words keep a small residual") {
  for (const char* w : {"LR", "RLL", "LRLRR", "LRRRR", "LLRRR"}) {
    CAPTURE(w);
    try {
      const PeriodicCycle c = find_cycle(xi_a, w);
      CHECK(cycle_residual(xi_a, c) < 1e-10);
      for (std::size_t i = 0; i < c.points.size(); ++i)
        CHECK((c.word[i] == 'L' ? c.points[i].x < 0.0 : c.points[i].x >= 0.0));
    } catch (const ItineraryMismatch&) {
      // not every word is realised; the mismatch is the documented outcome
    }
  }
}

TEST_CASE("find_cycle errors") {
  CHECK_THROWS_AS(find_cycle(xi_a, ""), std::invalid_argument);
  CHECK_THROWS_AS(find_cycle(xi_a, "LXR"), std::invalid_argument);
  // tau_L = delta_L + 1 puts an eigenvalue at 1.
  CHECK_THROWS_AS(find_cycle({1.2, 0.2, -2.0, 0.5}, "L"), SingularComposition);
  // Below that the left fixed point moves into x > 0.
  CHECK_THROWS_AS(find_cycle({1.0, 0.2, -2.0, 0.5}, "L"), ItineraryMismatch);
}

TEST_CASE("heteroclinic distance changes sign across the crisis at tau_L = 1.3") {
  const HTSample sep = ht_distance({1.3, 0.2, -1.7, 0.5}, 20);
  const HTSample hit = ht_distance({1.3, 0.2, -1.8, 0.5}, 20);
  CHECK_FALSE(sep.escaped);
  CHECK(sep.distance > 0.0);
  CHECK(sep.crossings == 0);
  CHECK(hit.distance < 0.0);
  CHECK(hit.crossings > 0);
  CHECK(sep.depth_used == 20);
}

TEST_CASE("escape survey") {
  CHECK(escape_survey(xi_a, 0, 100, 1e3) == 0.0);
  CHECK(escape_survey(xi_a, 200, 500, 1e3, 1) == 0.0);
  const Params out{2.0, 0.2, -1.7, 0.5};
  REQUIRE(phi(out) < 0.0);
  CHECK(escape_survey(out, 200, 500, 1e3, 1) > 0.0);
  // Same seed, same answer.
  CHECK(escape_survey(out, 100, 300, 1e3, 5) == escape_survey(out, 100, 300, 1e3, 5));
}

TEST_CASE("phi = 0 boundary on the slice") {
  const auto z = phi_zero_boundary(0.2, 0.5, 1.5);
  REQUIRE(z);
  CHECK(std::abs(phi({1.5, 0.2, *z, 0.5})) < 1e-9);
  CHECK(*z == doctest::Approx(-2.902411933).epsilon(1e-8));
  // At the corner the curve meets tau_R = -delta_R - 1.
  const double corner = slice_quantities(xi_a).tau_L_corner;
  const auto c = phi_zero_boundary(0.2, 0.5, corner - 1e-9);
  REQUIRE(c);
  CHECK(*c == doctest::Approx(-1.5).epsilon(1e-6));
  CHECK_FALSE(phi_zero_boundary(0.2, 0.5, 1.1));
  CHECK_FALSE(phi_zero_boundary(0.2, 0.5, corner + 0.01));
}

TEST_CASE("trace_ht_curve") {
  CHECK(trace_ht_curve(0.2, 0.5, {}, 1e-4).samples.empty());
  CHECK_THROWS(trace_ht_curve(0.2, 0.5, {1.3}, 0.0));

  TraceOptions o;
  o.scan_steps = 24;
  o.jobs = 1;
  const double tol = 1e-4;
  const CurveTrace t = trace_ht_curve(0.2, 0.5, {1.3}, tol, 20, o);
  REQUIRE(t.samples.size() == 1);
  const CurveSample& s = t.samples[0];
  REQUIRE(s.tau_R_star);
  CHECK(s.lo < s.hi);
  CHECK(s.hi - s.lo <= tol);
  CHECK(*s.tau_R_star >= s.lo);
  CHECK(*s.tau_R_star <= s.hi);
  // The bracket is a certificate: intersecting at lo, separated at hi.
  CHECK(ht_distance({1.3, 0.2, s.lo, 0.5}, 20).distance < 0.0);
  CHECK(ht_distance({1.3, 0.2, s.hi, 0.5}, 20).distance > 0.0);
}
