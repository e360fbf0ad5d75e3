#include "bcnf/cycles.hpp"

#include <cmath>
#include <stdexcept>

#include "bcnf/errors.hpp"

namespace bcnf {

Side side_of_letter(char c) {
  if (c == 'L') return Side::L;
  if (c == 'R') return Side::R;
  throw std::invalid_argument(std::string("itinerary letters must be L or R, got '") + c + "'");
}

Mat2 PeriodicCycle::monodromy_at(std::size_t i) const {
  Mat2 m;
  const std::size_t n = word.size();
  for (std::size_t k = 0; k < n; ++k) m = jacobian(params, side_of_letter(word[(i + k) % n])) * m;
  return m;
}

namespace {

struct Composition {
  Mat2 M;
  Point b;
};

Composition compose(const Params& xi, const std::string& word, std::size_t start) {
  Composition c{Mat2{}, {0.0, 0.0}};
  for (std::size_t k = 0; k < word.size(); ++k) {
    const Mat2 A = jacobian(xi, side_of_letter(word[(start + k) % word.size()]));
    c.M = A * c.M;
    c.b = A * c.b + Point{1.0, 0.0};
  }
  return c;
}

// (I - M) p = r by Cramer's rule.
Point solve_shifted(const Mat2& M, const Point& r, double det) {
  const double a11 = 1.0 - M.a, a12 = -M.b, a21 = -M.c, a22 = 1.0 - M.d;
  return {(r.x * a22 - a12 * r.y) / det, (a11 * r.y - a21 * r.x) / det};
}

}  // namespace

PeriodicCycle find_cycle(const Params& xi, const std::string& word) {
  if (word.empty()) throw std::invalid_argument("itinerary word must be nonempty");
  for (char c : word) side_of_letter(c);
  const Mat2 M = compose(xi, word, 0).M;
  const double det = (1.0 - M.a) * (1.0 - M.d) - M.b * M.c;
  const double scale = 1.0 + std::abs(M.a) + std::abs(M.b) + std::abs(M.c) + std::abs(M.d);
  if (std::abs(det) <= 1e-14 * scale * scale)
    throw SingularComposition("I - M is singular for word " + word);

  PeriodicCycle cyc;
  cyc.word = word;
  cyc.params = xi;
  cyc.monodromy = M;
  // Each point solves its own rotation of the word rather than being pushed
  // forward from the first one, which would compound rounding error.
  for (std::size_t i = 0; i < word.size(); ++i) {
    const Composition c = compose(xi, word, i);
    const double d = (1.0 - c.M.a) * (1.0 - c.M.d) - c.M.b * c.M.c;
    Point p = solve_shifted(c.M, c.b, d);
    // One step of iterative refinement against the word-ordered iteration.
    Point q = p;
    for (std::size_t k = 0; k < word.size(); ++k)
      q = apply_piece(xi, side_of_letter(word[(i + k) % word.size()]), q);
    p += solve_shifted(c.M, q - p, d);
    const Side s = side_of_letter(word[i]);
    const bool ok = s == Side::L ? p.x <= kSigmaTol : p.x >= -kSigmaTol;
    if (!ok)
      throw ItineraryMismatch("cycle point " + std::to_string(i) + " of word " + word +
                              " lies outside its half-plane");
    cyc.points.push_back(p);
  }

  const double tr = M.trace();
  const double dt = M.det();
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * dt, 0.0));
  std::complex<double> m0 = 0.5 * (tr + (tr >= 0.0 ? disc : -disc));
  std::complex<double> m1 = std::abs(m0) > 0.0 ? dt / m0 : std::complex<double>(0.0, 0.0);
  if (std::abs(m1) > std::abs(m0)) std::swap(m0, m1);
  cyc.multipliers = {m0, m1};
  const bool real = m0.imag() == 0.0 && m1.imag() == 0.0;
  cyc.saddle = real && std::abs(m0) > 1.0 && std::abs(m1) < 1.0;
  return cyc;
}

}  // namespace bcnf
