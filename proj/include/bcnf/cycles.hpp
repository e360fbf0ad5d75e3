#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "bcnf/core.hpp"

namespace bcnf {

/// Periodic orbit that follows a given itinerary word over {L, R}.
struct PeriodicCycle {
  std::string word;
  std::vector<Point> points;  // points[i] lies in the half-plane of word[i]
  std::array<std::complex<double>, 2> multipliers;  // |multipliers[0]| >= |multipliers[1]|
  bool saddle = false;        // real multipliers with |m0| > 1 > |m1|
  Mat2 monodromy;             // composed Jacobian based at points[0]

  Params params;

  /// Composed Jacobian based at points[i]: A_{i-1} ... A_{i+1} A_i.
  Mat2 monodromy_at(std::size_t i) const;
};

/// Side selected by a letter of an itinerary word. Throws std::invalid_argument.
Side side_of_letter(char c);

/// Solves (I - M) p = b for the word-composed affine map and checks every
/// point against its letter. Throws SingularComposition when I - M is
/// singular and ItineraryMismatch when a point sits in the wrong half-plane.
PeriodicCycle find_cycle(const Params& xi, const std::string& word);

}  // namespace bcnf
