#pragma once

// Segment and polyline mechanics under the piecewise-linear map, slope cones
// with their expansion certificates, and the planar queries the manifold and
// bifurcation code relies on.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "bcnf/core.hpp"

namespace bcnf {

struct Segment {
  Point P;
  Point Q;

  double length() const { return distance(P, Q); }
  /// Strict sign change of x, after snapping |x| <= kSigmaTol to zero.
  bool crosses_sigma() const;
};

struct Polyline {
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
  std::size_t edge_count() const { return vertices.size() < 2 ? 0 : vertices.size() - 1; }
  Segment edge(std::size_t i) const { return {vertices[i], vertices[i + 1]}; }
  double length() const;
};

struct Box {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  bool empty() const { return xmin > xmax || ymin > ymax; }
  void expand(const Point& p);
  Box dilated(double r) const { return {xmin - r, ymin - r, xmax + r, ymax + r}; }
  bool contains(const Point& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  bool overlaps(const Segment& s) const;
  double diagonal() const { return empty() ? 0.0 : std::hypot(xmax - xmin, ymax - ymin); }
};

Box bounding_box(std::span<const Point> pts);

struct Polygon {
  std::vector<Point> vertices;  // implicit closing edge

  std::size_t size() const { return vertices.size(); }
  Segment edge(std::size_t i) const {
    return {vertices[i], vertices[(i + 1) % vertices.size()]};
  }
  /// Even-odd containment, counting points within `slack` of the boundary as inside.
  bool contains(const Point& p, double slack = 0.0) const;
  double boundary_distance(const Point& p) const;
  double signed_area() const;
  double diameter() const;
  Box bbox() const { return bounding_box(vertices); }
};

/// Parametrised line origin + t * direction.
struct Line {
  Point origin;
  Point direction;

  static Line through(const Point& p, double slope) { return {p, {1.0, slope}}; }
  static Line vertical(double x) { return {{x, 0.0}, {0.0, 1.0}}; }
  static Line horizontal(double y) { return {{0.0, y}, {1.0, 0.0}}; }
  static Line along(const Segment& s) { return {s.P, s.Q - s.P}; }
};

/// Intersection of two lines; nullopt when parallel.
std::optional<Point> line_intersection(const Line& a, const Line& b);
/// Intersection of a line with a closed segment.
std::optional<Point> line_intersection(const Line& a, const Segment& b);
std::optional<Point> line_intersection(const Segment& a, const Line& b);
/// Intersection of two closed segments; nullopt when parallel or disjoint.
std::optional<Point> line_intersection(const Segment& a, const Segment& b);

double point_segment_distance(const Point& p, const Segment& s);
double segment_distance(const Segment& a, const Segment& b);
/// Proper or touching intersection of two closed segments.
bool segments_intersect(const Segment& a, const Segment& b);

struct SigmaSplit {
  std::optional<Segment> left;
  std::optional<Segment> right;
  std::optional<Point> crossing;
};

/// Partition of a segment by x = 0. A segment lying in one closed half-plane
/// is returned whole on that side.
SigmaSplit split_at_sigma(const Segment& a);

enum class Direction { Forward, Backward };

/// Image (forward) or preimage (backward) of a polyline. Forward edges are
/// split where x changes sign, backward edges where y changes sign, so every
/// piece is mapped by a single affine branch. Collinear interior vertices are
/// pruned except those on x = 0 or y = 0.
Polyline map_polyline(const Params& xi, const Polyline& line, Direction dir);

/// Removes interior vertices whose turning angle is below `angle_tol`,
/// keeping vertices on either axis.
void prune_collinear(std::vector<Point>& v, double angle_tol = 1e-10);

/// Maps every polyline and keeps only its parts inside `clip`.
std::vector<Polyline> map_polylines_clipped(const Params& xi, const std::vector<Polyline>& lines,
                                            Direction dir, const Box& clip);

/// The parts of `line` inside `clip`, as maximal connected runs.
std::vector<Polyline> clip_runs(const Polyline& line, const Box& clip);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double m, double slack = 0.0) const { return m >= lo - slack && m <= hi + slack; }
};

/// Slopes are y/x for x-based cones t[1, m] and x/y for y-based cones t[m, 1].
enum class ConeOrientation { XBased, YBased };

struct SlopeCone {
  ConeOrientation orientation = ConeOrientation::XBased;
  Interval K;
  double expansion = 0.0;
};

/// Slope of the image of a cone vector. Forward: -delta / (tau + m).
/// Inverted (y-based, under the inverse matrix): -1 / (tau + delta m).
/// Throws VerticalImage when the denominator vanishes.
double cone_step(const Params& xi, Side side, bool inverted, double m);

/// |A v|^2 - c^2 |v|^2 for v = [1, m] (or v = [m, 1] under the inverse).
double expansion_margin(const Params& xi, Side side, bool inverted, double m, double c);

/// True iff the cone over K is mapped into itself and every vector in it is
/// stretched by at least c.
bool expansion_certificate(const Params& xi, Side side, bool inverted, const Interval& K,
                           double c);

/// Lower bound factor c_L c_R / (c_L + c_R) on the longer image piece of a
/// segment that crosses x = 0.
double longest_piece_bound(double c_L, double c_R);

/// min{lambda, (lambda + 1) / sqrt 2} for lambda = |eigenvalue| > 0.
double two_branch_factor(double lambda);

/// Uniform-grid index over a set of segments for nearest-edge and crossing queries.
class SegmentIndex {
 public:
  SegmentIndex() = default;
  explicit SegmentIndex(std::vector<Segment> segments, std::size_t target_per_cell = 4);

  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }
  const Segment& segment(std::size_t i) const { return segments_[i]; }

  struct Hit {
    double distance = std::numeric_limits<double>::infinity();
    std::size_t index = 0;
  };
  /// Nearest indexed segment to p; distance is infinite when the index is empty.
  /// The search may give up on segments farther than `cutoff`, so a result
  /// at or beyond the cutoff is only an upper bound.
  Hit nearest(const Point& p, double cutoff = std::numeric_limits<double>::infinity()) const;
  /// Nearest indexed segment to the query segment.
  Hit nearest(const Segment& s, double cutoff = std::numeric_limits<double>::infinity()) const;
  /// Indices of indexed segments that intersect s.
  std::vector<std::size_t> intersecting(const Segment& s) const;

 private:
  template <class Dist>
  Hit ring_search(const Box& query, double cutoff, Dist&& dist) const;
  template <class Fn>
  void cells_along(const Segment& s, Fn&& fn) const;
  void cell_range(const Box& b, long& i0, long& i1, long& j0, long& j1) const;

  std::vector<Segment> segments_;
  Box bounds_;
  long nx_ = 0, ny_ = 0;
  double cw_ = 1.0, ch_ = 1.0;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> cell_items_;
  mutable std::vector<std::uint32_t> stamp_;
  mutable std::uint32_t epoch_ = 0;
};

}  // namespace bcnf
