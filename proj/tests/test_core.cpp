#include "doctest.h"

#include "bcnf/core.hpp"
#include "bcnf/errors.hpp"
#include "bcnf/manifolds.hpp"
#include "common.hpp"

using namespace bcnf;
using fixtures::xi_a;

namespace {

void check_point(const Point& p, double x, double y, double tol = 1e-12) {
  CHECK(p.x == doctest::Approx(x).epsilon(tol));
  CHECK(p.y == doctest::Approx(y).epsilon(tol));
}

}  // namespace

TEST_CASE("apply on the switching line and the right half-plane") {
  const Point a = apply(xi_a, {0.0, 0.0});
  CHECK(a == Point{1.0, 0.0});
  CHECK(apply_piece(xi_a, Side::L, {0.0, 0.0}) == apply_piece(xi_a, Side::R, {0.0, 0.0}));
  const Point b = apply(xi_a, {1.0, 0.0});
  CHECK(b == Point{-1.0, -0.5});
  const Point X{2.0 / 7.0, -1.0 / 7.0};
  check_point(apply(xi_a, X), X.x, X.y);
}

TEST_CASE("apply_inverse picks the branch from y") {
  CHECK(apply_inverse(xi_a, {1.0, 0.0}) == Point{0.0, 0.0});
  const Point q = apply_inverse(xi_a, {-1.0, -0.5});
  check_point(q, 1.0, 0.0);
  check_point(apply(xi_a, q), -1.0, -0.5);
  const Point X = fixed_point_X(xi_a);
  check_point(apply_inverse(xi_a, X), X.x, X.y);
  // Preimages of points with y > 0 come from the left half-plane.
  CHECK(apply_inverse(xi_a, {0.3, 0.4}).x < 0.0);
}

TEST_CASE("apply_inverse rejects a zero determinant") {
  CHECK_THROWS_AS(apply_inverse({1.5, 0.0, -2.0, 0.5}, {0.0, 1.0}), DegenerateParameters);
}

TEST_CASE("eigenvalues against the quadratic formula") {
  const auto L = fixtures::roots(1.5, 0.2);
  const auto R = fixtures::roots(-2.0, 0.5);
  const EigenData eL = eigen(xi_a, Side::L), eR = eigen(xi_a, Side::R);
  CHECK(eL.lambda_u == doctest::Approx(L.big).epsilon(1e-14));
  CHECK(eL.lambda_s == doctest::Approx(L.small).epsilon(1e-14));
  CHECK(eR.lambda_u == doctest::Approx(R.big).epsilon(1e-14));
  CHECK(eR.lambda_s == doctest::Approx(R.small).epsilon(1e-14));
  CHECK(eL.lambda_u == doctest::Approx(1.3520797).epsilon(1e-7));
  CHECK(eL.lambda_s == doctest::Approx(0.1479203).epsilon(1e-6));
  CHECK(eR.lambda_u == doctest::Approx(-1.7071068).epsilon(1e-7));
  CHECK(eR.lambda_s == doctest::Approx(-0.2928932).epsilon(1e-6));
  // E^s(X) has slope |lambda_R^u| = -delta_R / lambda_R^s.
  CHECK(eR.slope_s == doctest::Approx(-0.5 / R.small).epsilon(1e-14));
  CHECK(eR.slope_s == doctest::Approx(1.7071068).epsilon(1e-7));
  CHECK(eR.slope_u == doctest::Approx(-R.small).epsilon(1e-14));
}

TEST_CASE("complex eigenvalues are rejected") {
  CHECK_THROWS_AS(eigen({0.5, 0.2, -2.0, 0.5}, Side::L), ComplexEigenvalues);
}

TEST_CASE("fixed points at xi_a") {
  const FixedPoints fp = fixed_points(xi_a);
  CHECK(fp.X.x == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
  CHECK(fp.X.y == doctest::Approx(-1.0 / 7.0).epsilon(1e-15));
  CHECK(fp.Y.x == doctest::Approx(-10.0 / 3.0).epsilon(1e-15));
  CHECK(fp.Y.y == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(fp.X.x > 0.0);
  CHECK(fp.Y.x < 0.0);
  CHECK(distance(apply(xi_a, fp.Y), fp.Y) < 1e-14);
}

TEST_CASE("orbit bookkeeping") {
  const Point X = fixed_point_X(xi_a);
  const Orbit o = orbit(xi_a, X, 5, 1e3);
  CHECK(o.itinerary == "RRRRR");
  CHECK_FALSE(o.diverged);
  REQUIRE(o.points.size() == 6);
  for (const Point& p : o.points) CHECK(distance(p, X) < 1e-14);

  const Orbit s = orbit(xi_a, {0.0, 0.0}, 2, 1e3);
  CHECK(s.itinerary == "SR");
  REQUIRE(s.points.size() == 3);
  CHECK(s.points[1] == Point{1.0, 0.0});
  CHECK(s.points[2] == Point{-1.0, -0.5});
}

TEST_CASE("orbits starting in Omega stay bounded") {
  const TrapRegion tr = trapping_region(xi_a);
  const Point c = (1.0 / 3.0) * (tr.omega.vertices[0] + tr.omega.vertices[1] + tr.omega.vertices[2]);
  const Orbit o = orbit(xi_a, c, 10000, 1e3);
  CHECK_FALSE(o.diverged);
  CHECK(o.itinerary.size() == 10000);
}

TEST_CASE("orbits that leave the radius stop early") {
  // A point far to the left of Omega diverges.
  const Orbit o = orbit(xi_a, {-1e3, 0.0}, 100, 1e3);
  CHECK(o.diverged);
  CHECK(o.points.size() < 101);
}
