#pragma once

// Evaluation of the two-dimensional border-collision normal form
//
//   f(x, y) = (tau_L x + y + 1, -delta_L x)   for x <= 0
//   f(x, y) = (tau_R x + y + 1, -delta_R x)   for x >= 0
//
// together with its inverse, the eigen-structure of the two Jacobians and
// the fixed points X (right half-plane) and Y (left half-plane).

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace bcnf {

/// Vertices with |x| at or below this are treated as lying on x = 0.
inline constexpr double kSigmaTol = 1e-12;

struct Params {
  double tau_L = 0.0;
  double delta_L = 0.0;
  double tau_R = 0.0;
  double delta_R = 0.0;

  bool finite() const {
    return std::isfinite(tau_L) && std::isfinite(delta_L) && std::isfinite(tau_R) &&
           std::isfinite(delta_R);
  }
  friend bool operator==(const Params&, const Params&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point& operator+=(const Point& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Point& operator-=(const Point& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(double s, const Point& p) { return {s * p.x, s * p.y}; }
  friend Point operator*(const Point& p, double s) { return {s * p.x, s * p.y}; }
  friend Point operator-(const Point& p) { return {-p.x, -p.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& p) { return std::hypot(p.x, p.y); }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }

enum class Side { L, R };

inline const char* to_string(Side s) { return s == Side::L ? "L" : "R"; }

/// Half-plane whose affine piece is applied to p (x = 0 uses R; both agree there).
inline Side side_of(const Point& p) { return p.x < 0.0 ? Side::L : Side::R; }

/// Trace and determinant of the Jacobian on one side.
inline double trace_of(const Params& xi, Side s) { return s == Side::L ? xi.tau_L : xi.tau_R; }
inline double det_of(const Params& xi, Side s) { return s == Side::L ? xi.delta_L : xi.delta_R; }

/// 2x2 matrix stored row-major.
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  Point operator*(const Point& p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  double trace() const { return a + d; }
  double det() const { return a * d - b * c; }
};

/// Jacobian [[tau, 1], [-delta, 0]] of the piece on `side`.
inline Mat2 jacobian(const Params& xi, Side side) {
  return {trace_of(xi, side), 1.0, -det_of(xi, side), 0.0};
}

/// Image of p under the affine piece on `side`, regardless of where p lies.
inline Point apply_piece(const Params& xi, Side side, const Point& p) {
  return {trace_of(xi, side) * p.x + p.y + 1.0, -det_of(xi, side) * p.x};
}

Point apply(const Params& xi, const Point& p);

/// Preimage of p. The piece follows from the sign of p.y because the
/// preimage satisfies x = -p.y / delta.
/// Throws DegenerateParameters if either determinant is zero.
Point apply_inverse(const Params& xi, const Point& p);

/// Preimage of p under the affine piece on `side`.
Point apply_inverse_piece(const Params& xi, Side side, const Point& p);

struct EigenData {
  Side side = Side::L;
  double lambda_u = 0.0;  // larger magnitude
  double lambda_s = 0.0;
  double slope_u = 0.0;   // slope of the lambda_u eigenvector, equal to -lambda_s
  double slope_s = 0.0;   // slope of the lambda_s eigenvector, equal to -lambda_u
};

/// Roots of lambda^2 - tau lambda + delta. Throws ComplexEigenvalues if
/// the discriminant is not positive.
EigenData eigen(const Params& xi, Side side);

struct FixedPoints {
  Point X;
  Point Y;
};

/// Closed forms for X and Y. Throws DomainError on a vanishing denominator.
FixedPoints fixed_points(const Params& xi);
Point fixed_point_X(const Params& xi);
Point fixed_point_Y(const Params& xi);

enum class Letter : char { L = 'L', R = 'R', Sigma = 'S' };

Letter letter_of(const Point& p);

struct Orbit {
  std::vector<Point> points;  // points[0] is the initial point
  std::string itinerary;      // one letter per application: 'L', 'R' or 'S' (on x = 0)
  bool diverged = false;
};

/// Iterates up to n times, stopping early once |point| > escape_radius.
Orbit orbit(const Params& xi, const Point& p, std::size_t n, double escape_radius);

}  // namespace bcnf
