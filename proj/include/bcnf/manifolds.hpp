#pragma once

// Phase-space constructions: the special points D, U, V, B, T, Z, the
// trapping triangle Omega, piecewise-linear stable and unstable manifolds
// grown from fundamental domains, attractor clouds and the Delta regions.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bcnf/core.hpp"
#include "bcnf/geometry.hpp"

namespace bcnf {

struct SpecialPoints {
  Point D;  // first kink of the right branch of W^u(Y), on the x-axis
  Point U;  // [D, f(D)] meets x = 0
  Point V;  // first kink of W^s(X), on x = 0
  Point B;  // E^u(Y) meets the line through f(D) parallel to E^s(Y)
  Point W;  // E^u(X) meets x = 0
  Point T;  // f(W), first kink of W^u(X)
  std::optional<Point> Z;  // E^s(X) meets [T, f^2(T)] when f^2(T) is left of E^s(X)
  Point fV;
  Point finvV;
};

/// Throws DomainError outside Phi.
SpecialPoints special_points(const Params& xi);

struct TrapRegion {
  Polygon omega;    // D, f(D), B
  Polygon f_omega;  // D, f(D), f(U), f^2(D), f(B)
};

/// Builds Omega and f(Omega) and checks every vertex of f(Omega) lies in
/// Omega up to slack * max(1, diameter(Omega)). Throws DomainError outside Phi and
/// ContainmentViolation when a vertex escapes.
TrapRegion trapping_region(const Params& xi, double slack = 1e-9);

enum class ManifoldKind { Unstable, Stable };
enum class ManifoldBase { X, Y, Cycle };

const char* to_string(ManifoldKind k);
const char* to_string(ManifoldBase b);

struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::Unstable;
  ManifoldBase base = ManifoldBase::X;
  std::string branch;  // "right" for W^u(Y); free-form label otherwise
  std::string word;    // itinerary of the cycle when base == Cycle
};

struct GrowthOptions {
  std::size_t vertex_cap = 1'000'000;
  double escape_radius = std::numeric_limits<double>::infinity();
  std::optional<Box> clip;  // drop edges outside this box after every step
};

struct ManifoldApprox {
  ManifoldKind kind = ManifoldKind::Unstable;
  ManifoldBase base = ManifoldBase::X;
  std::string branch;
  int depth = 0;
  std::vector<Polyline> polylines;  // exactly one unless clipped or cycle-based

  const Polyline& polyline() const { return polylines.front(); }
  std::size_t vertex_count() const;
  std::vector<Segment> edges() const;
};

/// Grows a manifold by mapping its fundamental domain `depth` times.
///  - unstable X: seed [X, T]; result joins f^{d-1}[X,T] and f^d[X,T] at X.
///  - stable X:   seed [X, f(V), f^{-1}(V)]; preimages joined at X.
///  - unstable Y, branch "right": seed [Y, D, f(D)].
///  - cycle (stable or unstable): symmetric linear seed along the composed
///    eigen-direction at each cycle point.
/// Throws VertexBudgetExceeded and EscapeError per `opts`.
ManifoldApprox grow_manifold(const Params& xi, const ManifoldSpec& spec, int depth,
                             const GrowthOptions& opts = {});

enum class AttractorBackend { Orbit, Manifold };

struct AttractorOptions {
  AttractorBackend backend = AttractorBackend::Orbit;
  std::size_t transient = 1000;
  std::size_t samples = 100000;
  std::optional<double> cluster_eps;  // default 1e-2 * diameter(Omega)
  double escape_radius = 1e3;
  double seed_offset = 1e-8;          // along E^u(X) from X
  int manifold_depth = 14;
  std::uint64_t seed = 0;
};

struct AttractorApprox {
  std::vector<Point> cloud;
  std::vector<int> component_labels;
  int n_components = 0;
  double cluster_eps = 0.0;
  std::size_t n_clipped = 0;  // samples dropped for lying outside Omega
  AttractorOptions params_used;
};

/// Samples the attractor cl(W^u(X)). Requires xi in Phi_BYG (DomainError);
/// throws EscapeError when the orbit leaves escape_radius.
AttractorApprox attractor_cloud(const Params& xi, const AttractorOptions& opts = {});

/// Labels the eps-connected components of a point cloud; returns the count.
int cluster_components(const std::vector<Point>& pts, double eps, std::vector<int>& labels);

struct CoverageGaps {
  double max_gap = 0.0;
  int grid_n = 0;
  Box box;
  std::vector<double> gap_field;  // row-major grid_n x grid_n; NaN outside the region
};

/// Distance from each grid sample of `region` to the nearest manifold edge.
CoverageGaps coverage_gaps(const ManifoldApprox& stable, const Polygon& region, int grid_n);

struct DeltaRegion {
  Polygon delta0;                   // triangle X, T, Z
  std::vector<Polygon> delta_union; // f^i(Delta0) for i = 0..depth
};

/// Throws ZUndefined when Z does not exist.
DeltaRegion delta_region(const Params& xi, int depth);

/// Number of points lying outside the union, allowing `dilation`.
std::size_t count_outside_union(const std::vector<Point>& pts, const std::vector<Polygon>& polys,
                                double dilation);

}  // namespace bcnf
