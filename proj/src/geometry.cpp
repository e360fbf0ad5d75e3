#include "bcnf/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "bcnf/errors.hpp"

namespace bcnf {

namespace {

double snap(double v) { return std::abs(v) <= kSigmaTol ? 0.0 : v; }

bool on_axis(const Point& p) { return std::abs(p.x) <= kSigmaTol || std::abs(p.y) <= kSigmaTol; }

}  // namespace

bool Segment::crosses_sigma() const { return snap(P.x) * snap(Q.x) < 0.0; }

double Polyline::length() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) s += distance(vertices[i], vertices[i + 1]);
  return s;
}

void Box::expand(const Point& p) {
  xmin = std::min(xmin, p.x);
  ymin = std::min(ymin, p.y);
  xmax = std::max(xmax, p.x);
  ymax = std::max(ymax, p.y);
}

bool Box::overlaps(const Segment& s) const {
  return !(std::max(s.P.x, s.Q.x) < xmin || std::min(s.P.x, s.Q.x) > xmax ||
           std::max(s.P.y, s.Q.y) < ymin || std::min(s.P.y, s.Q.y) > ymax);
}

Box bounding_box(std::span<const Point> pts) {
  Box b;
  for (const Point& p : pts) b.expand(p);
  return b;
}

double Polygon::boundary_distance(const Point& p) const {
  double d = std::numeric_limits<double>::infinity();
  if (vertices.size() == 1) return distance(p, vertices.front());
  for (std::size_t i = 0; i < vertices.size(); ++i) d = std::min(d, point_segment_distance(p, edge(i)));
  return d;
}

bool Polygon::contains(const Point& p, double slack) const {
  if (vertices.empty()) return false;
  bool inside = false;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = vertices[i];
    const Point& b = vertices[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  if (inside) return true;
  return boundary_distance(p) <= slack;
}

double Polygon::signed_area() const {
  double s = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(vertices[i], vertices[(i + 1) % n]);
  return 0.5 * s;
}

double Polygon::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      d = std::max(d, distance(vertices[i], vertices[j]));
  return d;
}

std::optional<Point> line_intersection(const Line& a, const Line& b) {
  const double den = cross(a.direction, b.direction);
  if (den == 0.0) return std::nullopt;
  const double t = cross(b.origin - a.origin, b.direction) / den;
  return a.origin + t * a.direction;
}

std::optional<Point> line_intersection(const Line& a, const Segment& b) {
  const Point d = b.Q - b.P;
  const double den = cross(a.direction, d);
  if (den == 0.0) return std::nullopt;
  const double u = cross(b.P - a.origin, a.direction) / den;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  return b.P + u * d;
}

std::optional<Point> line_intersection(const Segment& a, const Line& b) {
  return line_intersection(b, a);
}

std::optional<Point> line_intersection(const Segment& a, const Segment& b) {
  const Point r = a.Q - a.P;
  const Point s = b.Q - b.P;
  const double den = cross(r, s);
  if (den == 0.0) return std::nullopt;
  const Point qp = b.P - a.P;
  const double t = cross(qp, s) / den;
  const double u = cross(qp, r) / den;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return a.P + t * r;
}

double point_segment_distance(const Point& p, const Segment& s) {
  const Point d = s.Q - s.P;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s.P);
  const double t = std::clamp(dot(p - s.P, d) / len2, 0.0, 1.0);
  return distance(p, s.P + t * d);
}

bool segments_intersect(const Segment& a, const Segment& b) {
  const auto orient = [](const Point& o, const Point& p, const Point& q) {
    const double v = cross(p - o, q - o);
    return (v > 0.0) - (v < 0.0);
  };
  const auto on_seg = [](const Point& p, const Point& q, const Point& r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  const int o1 = orient(a.P, a.Q, b.P);
  const int o2 = orient(a.P, a.Q, b.Q);
  const int o3 = orient(b.P, b.Q, a.P);
  const int o4 = orient(b.P, b.Q, a.Q);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_seg(a.P, a.Q, b.P)) return true;
  if (o2 == 0 && on_seg(a.P, a.Q, b.Q)) return true;
  if (o3 == 0 && on_seg(b.P, b.Q, a.P)) return true;
  if (o4 == 0 && on_seg(b.P, b.Q, a.Q)) return true;
  return false;
}

double segment_distance(const Segment& a, const Segment& b) {
  if (segments_intersect(a, b)) return 0.0;
  return std::min({point_segment_distance(a.P, b), point_segment_distance(a.Q, b),
                   point_segment_distance(b.P, a), point_segment_distance(b.Q, a)});
}

SigmaSplit split_at_sigma(const Segment& a) {
  SigmaSplit out;
  const double xp = snap(a.P.x);
  const double xq = snap(a.Q.x);
  if (xp * xq < 0.0) {
    const double t = xp / (xp - xq);
    Point c = a.P + t * (a.Q - a.P);
    c.x = 0.0;
    out.crossing = c;
    if (xp < 0.0) {
      out.left = Segment{a.P, c};
      out.right = Segment{c, a.Q};
    } else {
      out.right = Segment{a.P, c};
      out.left = Segment{c, a.Q};
    }
    return out;
  }
  if (xp < 0.0 || xq < 0.0)
    out.left = a;
  else
    out.right = a;
  return out;
}

void prune_collinear(std::vector<Point>& v, double angle_tol) {
  if (v.size() < 3) return;
  std::vector<Point> out;
  out.reserve(v.size());
  out.push_back(v.front());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Point& cur = v[i];
    if (cur == out.back()) continue;
    if (!on_axis(cur)) {
      const Point a = cur - out.back();
      const Point b = v[i + 1] - cur;
      const double na = norm(a), nb = norm(b);
      if (na > 0.0 && nb > 0.0 && dot(a, b) > 0.0 &&
          std::abs(cross(a, b)) <= angle_tol * na * nb)
        continue;
    }
    out.push_back(cur);
  }
  if (!(v.back() == out.back()) || out.size() == 1) out.push_back(v.back());
  v = std::move(out);
}

Polyline map_polyline(const Params& xi, const Polyline& line, Direction dir) {
  Polyline out;
  const auto& v = line.vertices;
  if (v.empty()) return out;
  out.vertices.reserve(v.size() + v.size() / 2 + 2);
  if (dir == Direction::Forward) {
    out.vertices.push_back(apply(xi, v[0]));
    for (std::size_t i = 1; i < v.size(); ++i) {
      const Point& a = v[i - 1];
      const Point& b = v[i];
      const double xa = snap(a.x), xb = snap(b.x);
      if (xa * xb < 0.0) {
        const double t = xa / (xa - xb);
        out.vertices.push_back({a.y + t * (b.y - a.y) + 1.0, 0.0});  // f(0, y) = (y + 1, 0)
      }
      out.vertices.push_back(apply(xi, b));
    }
  } else {
    if (xi.delta_L == 0.0 || xi.delta_R == 0.0)
      throw DegenerateParameters("backward mapping needs nonzero determinants");
    out.vertices.push_back(apply_inverse(xi, v[0]));
    for (std::size_t i = 1; i < v.size(); ++i) {
      const Point& a = v[i - 1];
      const Point& b = v[i];
      const double ya = snap(a.y), yb = snap(b.y);
      if (ya * yb < 0.0) {
        const double t = ya / (ya - yb);
        out.vertices.push_back({0.0, a.x + t * (b.x - a.x) - 1.0});  // f^{-1}(x, 0) = (0, x - 1)
      }
      out.vertices.push_back(apply_inverse(xi, b));
    }
  }
  prune_collinear(out.vertices);
  return out;
}

namespace {

// Liang-Barsky: parameter range of s inside the box, if any.
std::optional<std::pair<double, double>> clip_range(const Segment& s, const Box& b) {
  const Point d = s.Q - s.P;
  double t0 = 0.0, t1 = 1.0;
  const auto edge = [&](double p, double q) {
    if (p == 0.0) return q >= 0.0;
    const double r = q / p;
    if (p < 0.0) {
      if (r > t1) return false;
      t0 = std::max(t0, r);
    } else {
      if (r < t0) return false;
      t1 = std::min(t1, r);
    }
    return true;
  };
  if (edge(-d.x, s.P.x - b.xmin) && edge(d.x, b.xmax - s.P.x) && edge(-d.y, s.P.y - b.ymin) &&
      edge(d.y, b.ymax - s.P.y))
    return std::make_pair(t0, t1);
  return std::nullopt;
}

}  // namespace

std::vector<Polyline> clip_runs(const Polyline& line, const Box& clip) {
  std::vector<Polyline> runs;
  Polyline cur;
  const auto close = [&] {
    if (cur.vertices.size() >= 2) runs.push_back(std::move(cur));
    cur = Polyline{};
  };
  for (std::size_t i = 0; i + 1 < line.vertices.size(); ++i) {
    const Segment e = line.edge(i);
    const auto r = clip_range(e, clip);
    if (!r) {
      close();
      continue;
    }
    const auto [t0, t1] = *r;
    if (t0 > 0.0) close();
    if (cur.vertices.empty()) cur.vertices.push_back(t0 > 0.0 ? e.P + t0 * (e.Q - e.P) : e.P);
    cur.vertices.push_back(t1 < 1.0 ? e.P + t1 * (e.Q - e.P) : e.Q);
    if (t1 < 1.0) close();
  }
  close();
  return runs;
}

std::vector<Polyline> map_polylines_clipped(const Params& xi, const std::vector<Polyline>& lines,
                                            Direction dir, const Box& clip) {
  std::vector<Polyline> out;
  for (const Polyline& l : lines) {
    for (Polyline& r : clip_runs(map_polyline(xi, l, dir), clip)) out.push_back(std::move(r));
  }
  return out;
}

namespace {

// The inverse of [[tau, 1], [-delta, 0]], conjugated by the swap of x and y,
// is again a companion matrix with trace tau / delta and determinant 1 / delta.
struct Companion {
  double tau, delta;
};

Companion effective(const Params& xi, Side side, bool inverted) {
  const double tau = trace_of(xi, side);
  const double delta = det_of(xi, side);
  if (!inverted) return {tau, delta};
  if (delta == 0.0) throw DegenerateParameters("inverse cone needs a nonzero determinant");
  return {tau / delta, 1.0 / delta};
}

}  // namespace

double cone_step(const Params& xi, Side side, bool inverted, double m) {
  const Companion a = effective(xi, side, inverted);
  const double den = a.tau + m;
  if (den == 0.0) throw VerticalImage("image vector leaves the cone chart (tau + m = 0)");
  return -a.delta / den;
}

double expansion_margin(const Params& xi, Side side, bool inverted, double m, double c) {
  const Companion a = effective(xi, side, inverted);
  return (a.tau + m) * (a.tau + m) + a.delta * a.delta - c * c * (1.0 + m * m);
}

bool expansion_certificate(const Params& xi, Side side, bool inverted, const Interval& K,
                           double c) {
  if (!(K.lo <= K.hi) || !(c > 0.0)) return false;
  const Companion a = effective(xi, side, inverted);

  // Invariance: G(m) = -delta / (tau + m) is monotone away from its pole.
  const double pole = -a.tau;
  if (pole >= K.lo && pole <= K.hi) return false;
  const double g_lo = -a.delta / (a.tau + K.lo);
  const double g_hi = -a.delta / (a.tau + K.hi);
  const double slack = 1e-12 * (1.0 + std::max(std::abs(K.lo), std::abs(K.hi)));
  if (!K.contains(g_lo, slack) || !K.contains(g_hi, slack)) return false;

  // H(m) = (1 - c^2) m^2 + 2 tau m + tau^2 + delta^2 - c^2 over K.
  const auto H = [&](double m) { return expansion_margin(xi, side, inverted, m, c); };
  const auto ok = [&](double m) {
    const double scale = (a.tau * a.tau + a.delta * a.delta + c * c) * (1.0 + m * m);
    return H(m) >= -1e-12 * scale;
  };
  if (!ok(K.lo) || !ok(K.hi)) return false;
  const double quad = 1.0 - c * c;
  if (quad > 0.0) {
    // Convex case: the minimum may sit at the vertex.
    const double vertex = -a.tau / quad;
    if (vertex > K.lo && vertex < K.hi && !ok(vertex)) return false;
  }
  return true;
}

double longest_piece_bound(double c_L, double c_R) { return c_L * c_R / (c_L + c_R); }

double two_branch_factor(double lambda) {
  return std::min(lambda, (lambda + 1.0) / std::sqrt(2.0));
}

// ---------------------------------------------------------------------------
// SegmentIndex

SegmentIndex::SegmentIndex(std::vector<Segment> segments, std::size_t target_per_cell)
    : segments_(std::move(segments)) {
  if (segments_.empty()) return;
  for (const Segment& s : segments_) {
    bounds_.expand(s.P);
    bounds_.expand(s.Q);
  }
  const double w = std::max(bounds_.xmax - bounds_.xmin, 1e-300);
  const double h = std::max(bounds_.ymax - bounds_.ymin, 1e-300);
  const double cells = std::max<double>(1.0, double(segments_.size()) / double(target_per_cell));
  const double side = std::sqrt(w * h / cells);
  nx_ = std::clamp<long>(long(std::ceil(w / std::max(side, 1e-300))), 1, 2048);
  ny_ = std::clamp<long>(long(std::ceil(h / std::max(side, 1e-300))), 1, 2048);
  if (bounds_.xmax - bounds_.xmin == 0.0) nx_ = 1;
  if (bounds_.ymax - bounds_.ymin == 0.0) ny_ = 1;
  cw_ = std::max(w / double(nx_), 1e-300);
  ch_ = std::max(h / double(ny_), 1e-300);

  std::vector<std::uint32_t> counts(std::size_t(nx_ * ny_) + 1, 0);
  const auto each_cell = [&](const Segment& s, auto&& fn) { cells_along(s, fn); };
  for (const Segment& s : segments_) each_cell(s, [&](std::size_t c) { ++counts[c + 1]; });
  for (std::size_t c = 1; c < counts.size(); ++c) counts[c] += counts[c - 1];
  cell_start_ = counts;
  cell_items_.resize(counts.back());
  std::vector<std::uint32_t> fill(counts.begin(), counts.end() - 1);
  for (std::size_t k = 0; k < segments_.size(); ++k)
    each_cell(segments_[k], [&](std::size_t c) { cell_items_[fill[c]++] = std::uint32_t(k); });
  stamp_.assign(segments_.size(), 0);
}

template <class Fn>
void SegmentIndex::cells_along(const Segment& s, Fn&& fn) const {
  // Column by column, the cells met by the part of s inside that column.
  // The y-range is padded slightly so rounding never drops a cell.
  Box b;
  b.expand(s.P);
  b.expand(s.Q);
  long i0, i1, j0, j1;
  cell_range(b, i0, i1, j0, j1);
  const double dx = s.Q.x - s.P.x;
  const double pad = 1e-9 * ch_;
  for (long i = i0; i <= i1; ++i) {
    long ja = j0, jb = j1;
    if (i0 != i1 && dx != 0.0) {
      const double xa = std::max(b.xmin, bounds_.xmin + double(i) * cw_);
      const double xb = std::min(b.xmax, bounds_.xmin + double(i + 1) * cw_);
      const double ya = s.P.y + (s.Q.y - s.P.y) * ((xa - s.P.x) / dx);
      const double yb = s.P.y + (s.Q.y - s.P.y) * ((xb - s.P.x) / dx);
      Box col;
      col.expand({xa, std::min(ya, yb) - pad});
      col.expand({xb, std::max(ya, yb) + pad});
      long ci0, ci1;
      cell_range(col, ci0, ci1, ja, jb);
    }
    for (long j = ja; j <= jb; ++j) fn(std::size_t(j * nx_ + i));
  }
}

void SegmentIndex::cell_range(const Box& b, long& i0, long& i1, long& j0, long& j1) const {
  const auto ci = [&](double x) {
    return std::clamp<long>(long(std::floor((x - bounds_.xmin) / cw_)), 0, nx_ - 1);
  };
  const auto cj = [&](double y) {
    return std::clamp<long>(long(std::floor((y - bounds_.ymin) / ch_)), 0, ny_ - 1);
  };
  i0 = ci(b.xmin);
  i1 = ci(b.xmax);
  j0 = cj(b.ymin);
  j1 = cj(b.ymax);
}

template <class Dist>
SegmentIndex::Hit SegmentIndex::ring_search(const Box& query, double cutoff, Dist&& dist) const {
  Hit best;
  if (segments_.empty()) return best;
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  long i0, i1, j0, j1;
  cell_range(query, i0, i1, j0, j1);
  long pi0 = 1, pi1 = 0, pj0 = 1, pj1 = 0;  // previously scanned rectangle (empty)
  for (long k = 0;; ++k) {
    const long a0 = std::max(i0 - k, 0L), a1 = std::min(i1 + k, nx_ - 1);
    const long b0 = std::max(j0 - k, 0L), b1 = std::min(j1 + k, ny_ - 1);
    for (long j = b0; j <= b1; ++j) {
      for (long i = a0; i <= a1; ++i) {
        if (i >= pi0 && i <= pi1 && j >= pj0 && j <= pj1) continue;
        const std::size_t c = std::size_t(j * nx_ + i);
        for (std::uint32_t p = cell_start_[c]; p < cell_start_[c + 1]; ++p) {
          const std::uint32_t id = cell_items_[p];
          if (stamp_[id] == epoch_) continue;
          stamp_[id] = epoch_;
          const double d = dist(segments_[id]);
          if (d < best.distance) best = {d, id};
        }
      }
    }
    pi0 = a0;
    pi1 = a1;
    pj0 = b0;
    pj1 = b1;
    const bool all = a0 == 0 && b0 == 0 && a1 == nx_ - 1 && b1 == ny_ - 1;
    if (all) break;
    // Anything outside the scanned rectangle is at least this far from the query.
    double bound = std::numeric_limits<double>::infinity();
    const double rx0 = bounds_.xmin + double(a0) * cw_, rx1 = bounds_.xmin + double(a1 + 1) * cw_;
    const double ry0 = bounds_.ymin + double(b0) * ch_, ry1 = bounds_.ymin + double(b1 + 1) * ch_;
    if (a0 > 0) bound = std::min(bound, query.xmin - rx0);
    if (a1 < nx_ - 1) bound = std::min(bound, rx1 - query.xmax);
    if (b0 > 0) bound = std::min(bound, query.ymin - ry0);
    if (b1 < ny_ - 1) bound = std::min(bound, ry1 - query.ymax);
    if (std::min(best.distance, cutoff) <= bound) break;
  }
  return best;
}

SegmentIndex::Hit SegmentIndex::nearest(const Point& p, double cutoff) const {
  Box q;
  q.expand(p);
  return ring_search(q, cutoff, [&](const Segment& s) { return point_segment_distance(p, s); });
}

SegmentIndex::Hit SegmentIndex::nearest(const Segment& s, double cutoff) const {
  Box q;
  q.expand(s.P);
  q.expand(s.Q);
  return ring_search(q, cutoff, [&](const Segment& t) { return segment_distance(s, t); });
}

std::vector<std::size_t> SegmentIndex::intersecting(const Segment& s) const {
  std::vector<std::size_t> out;
  if (segments_.empty()) return out;
  Box q;
  q.expand(s.P);
  q.expand(s.Q);
  if (q.xmax < bounds_.xmin || q.xmin > bounds_.xmax || q.ymax < bounds_.ymin ||
      q.ymin > bounds_.ymax)
    return out;
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  cells_along(s, [&](std::size_t c) {
    for (std::uint32_t p = cell_start_[c]; p < cell_start_[c + 1]; ++p) {
      const std::uint32_t id = cell_items_[p];
      if (stamp_[id] == epoch_) continue;
      stamp_[id] = epoch_;
      if (segments_intersect(s, segments_[id])) out.push_back(id);
    }
  });
  return out;
}

}  // namespace bcnf
