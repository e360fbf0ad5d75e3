#pragma once

// Heteroclinic crisis detection between W^u(X) and the stable manifold of
// the LRR-cycle, slice-wise tracing of the crisis curve, escape surveys and
// the phi = 0 boundary.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcnf/core.hpp"

namespace bcnf {

struct HTOptions {
  int depth_s = -1;  // backward depth for the cycle manifold; -1 picks 3/5 of the forward depth
  std::size_t vertex_cap = 1'000'000;
  double escape_radius = 1e3;
  std::string word = "LRR";
  bool sign_only = false;  // stop at the first crossing; distance then covers only that one
};

struct HTSample {
  Params params;
  /// Minimal clearance between W^u(X) and W^s(cycle) when they are disjoint;
  /// minus the deepest crossing when they intersect; -1 when W^u(X) escaped.
  double distance = 0.0;
  bool escaped = false;
  int depth_used = 0;
  std::size_t crossings = 0;
};

/// Throws SingularComposition or ItineraryMismatch when the cycle does not exist.
HTSample ht_distance(const Params& xi, int depth = 25, const HTOptions& opts = {});

struct CurveSample {
  double tau_L = 0.0;
  std::optional<double> tau_R_star;
  double lo = 0.0, hi = 0.0;  // final bracket: intersecting at lo, separated at hi
  double residual = 0.0;      // |distance| at tau_R_star
  int iterations = 0;
};

struct CurveTrace {
  double delta_L = 0.0, delta_R = 0.0;
  int depth = 0;
  std::vector<CurveSample> samples;  // same order as the tau_L grid
};

struct TraceOptions {
  int scan_steps = 48;   // coarse tau_R samples before bisecting
  double tau_R_min = -5.0;
  unsigned jobs = 0;     // 0 = all cores
  HTOptions ht;
};

/// For each tau_L, scans tau_R downward over (tau_R_min, -delta_R - 1) for the
/// first change from separated to intersecting and bisects it down to
/// bisect_tol. Grid points without such a bracket keep an empty tau_R_star.
CurveTrace trace_ht_curve(double delta_L, double delta_R, const std::vector<double>& tau_L_grid,
                          double bisect_tol, int depth = 25, const TraceOptions& opts = {});

/// Fraction of seeds near X, pushed off along E^u(X), whose orbit leaves
/// `radius` within n_iter steps. Returns 0 for n_seeds == 0.
double escape_survey(const Params& xi, std::size_t n_seeds, std::size_t n_iter, double radius,
                     std::uint64_t seed = 0);

/// tau_R in [-5, -delta_R - 1] where phi vanishes, or nullopt when phi keeps
/// one sign there or tau_L <= delta_L + 1.
std::optional<double> phi_zero_boundary(double delta_L, double delta_R, double tau_L);

}  // namespace bcnf
