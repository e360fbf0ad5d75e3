#include "bcnf/core.hpp"

#include "bcnf/errors.hpp"

namespace bcnf {

Point apply(const Params& xi, const Point& p) { return apply_piece(xi, side_of(p), p); }

Point apply_inverse_piece(const Params& xi, Side side, const Point& p) {
  const double delta = det_of(xi, side);
  if (delta == 0.0) throw DegenerateParameters("zero determinant: map is not invertible");
  const double x = -p.y / delta;
  return {x, p.x - 1.0 - trace_of(xi, side) * x};
}

Point apply_inverse(const Params& xi, const Point& p) {
  if (xi.delta_L == 0.0 || xi.delta_R == 0.0)
    throw DegenerateParameters("zero determinant: map is not invertible");
  // y > 0 forces a preimage with x < 0 when delta_L > 0; y = 0 maps back onto x = 0
  // where both pieces agree.
  if (p.y == 0.0) return apply_inverse_piece(xi, Side::R, p);
  const bool left = (p.y > 0.0) == (xi.delta_L > 0.0);
  if (left) return apply_inverse_piece(xi, Side::L, p);
  return apply_inverse_piece(xi, Side::R, p);
}

EigenData eigen(const Params& xi, Side side) {
  const double tau = trace_of(xi, side);
  const double delta = det_of(xi, side);
  const double disc = tau * tau - 4.0 * delta;
  if (!(disc > 0.0))
    throw ComplexEigenvalues(std::string("non-real eigenvalues on side ") + to_string(side));
  // Larger-magnitude root first, the other via the product to avoid cancellation.
  const double root = std::sqrt(disc);
  const double big = 0.5 * (tau + (tau >= 0.0 ? root : -root));
  const double small = delta / big;
  EigenData e;
  e.side = side;
  e.lambda_u = big;
  e.lambda_s = small;
  e.slope_u = -small;
  e.slope_s = -big;
  return e;
}

Point fixed_point_X(const Params& xi) {
  const double den = xi.delta_R + 1.0 - xi.tau_R;
  if (den == 0.0) throw DomainError("fixed point X undefined: delta_R + 1 - tau_R = 0");
  return {1.0 / den, -xi.delta_R / den};
}

Point fixed_point_Y(const Params& xi) {
  const double den = xi.tau_L - xi.delta_L - 1.0;
  if (den == 0.0) throw DomainError("fixed point Y undefined: tau_L - delta_L - 1 = 0");
  return {-1.0 / den, xi.delta_L / den};
}

FixedPoints fixed_points(const Params& xi) { return {fixed_point_X(xi), fixed_point_Y(xi)}; }

Letter letter_of(const Point& p) {
  if (std::abs(p.x) <= kSigmaTol) return Letter::Sigma;
  return p.x < 0.0 ? Letter::L : Letter::R;
}

Orbit orbit(const Params& xi, const Point& p, std::size_t n, double escape_radius) {
  Orbit o;
  o.points.reserve(n + 1);
  o.itinerary.reserve(n);
  o.points.push_back(p);
  Point cur = p;
  for (std::size_t i = 0; i < n; ++i) {
    o.itinerary.push_back(static_cast<char>(letter_of(cur)));
    cur = apply(xi, cur);
    o.points.push_back(cur);
    if (!(norm(cur) <= escape_radius)) {
      o.diverged = true;
      break;
    }
  }
  return o;
}

}  // namespace bcnf
