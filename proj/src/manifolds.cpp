#include "bcnf/manifolds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "bcnf/cycles.hpp"
#include "bcnf/errors.hpp"
#include "bcnf/param_space.hpp"

namespace bcnf {

const char* to_string(ManifoldKind k) { return k == ManifoldKind::Stable ? "stable" : "unstable"; }

const char* to_string(ManifoldBase b) {
  switch (b) {
    case ManifoldBase::X: return "X";
    case ManifoldBase::Y: return "Y";
    case ManifoldBase::Cycle: return "cycle";
  }
  return "?";
}

SpecialPoints special_points(const Params& xi) {
  if (auto v = phi_violation(xi))
    throw DomainError("special points require xi in Phi: violates " + *v);
  const EigenData L = eigen(xi, Side::L);
  const EigenData R = eigen(xi, Side::R);
  const Point X = fixed_point_X(xi);
  const Point Y = fixed_point_Y(xi);
  const double ls = L.lambda_s;

  SpecialPoints sp;
  sp.D = {1.0 / (1.0 - ls), 0.0};
  sp.U = {0.0, -xi.delta_R / ((ls - xi.tau_R) * (1.0 - ls))};
  sp.V = {0.0, -R.lambda_u / (R.lambda_u - 1.0)};
  const Point fD = apply(xi, sp.D);
  // E^u(Y) has slope -lambda_L^s, E^s(Y) has slope -lambda_L^u.
  sp.B = *line_intersection(Line::through(Y, L.slope_u), Line::through(fD, L.slope_s));
  // E^u(X) has slope |lambda_R^s|, E^s(X) has slope |lambda_R^u|.
  sp.W = {0.0, X.y - X.x * R.slope_u};
  sp.T = apply(xi, sp.W);
  const Point f2T = apply(xi, apply(xi, sp.T));
  const Line stable_X = Line::through(X, R.slope_s);
  const double x_on_line = X.x + (f2T.y - X.y) / R.slope_s;
  if (f2T.x < x_on_line) sp.Z = line_intersection(stable_X, Segment{sp.T, f2T});
  sp.fV = apply(xi, sp.V);
  sp.finvV = apply_inverse(xi, sp.V);
  return sp;
}

TrapRegion trapping_region(const Params& xi, double slack) {
  const SpecialPoints sp = special_points(xi);
  const Point fD = apply(xi, sp.D);
  TrapRegion tr;
  tr.omega.vertices = {sp.D, fD, sp.B};
  tr.f_omega.vertices = {sp.D, fD, apply(xi, sp.U), apply(xi, fD), apply(xi, sp.B)};
  static const char* names[] = {"D", "f(D)", "f(U)", "f^2(D)", "f(B)"};
  // f(B) sits exactly on the edge [B, D], and Omega grows without bound near
  // phi = 0, so the slack has to scale with the triangle.
  const double tol = slack * std::max(1.0, tr.omega.diameter());
  for (std::size_t i = 0; i < tr.f_omega.size(); ++i) {
    const Point& p = tr.f_omega.vertices[i];
    if (!tr.omega.contains(p, tol))
      throw ContainmentViolation(std::string("vertex ") + names[i] + " of f(Omega) lies outside Omega");
  }
  return tr;
}

std::size_t ManifoldApprox::vertex_count() const {
  std::size_t n = 0;
  for (const Polyline& p : polylines) n += p.size();
  return n;
}

std::vector<Segment> ManifoldApprox::edges() const {
  std::vector<Segment> out;
  for (const Polyline& p : polylines)
    for (std::size_t i = 0; i < p.edge_count(); ++i) out.push_back(p.edge(i));
  return out;
}

namespace {

using Pieces = std::vector<Polyline>;

class Grower {
 public:
  Grower(const Params& xi, const GrowthOptions& opts) : xi_(xi), opts_(opts) {}

  Pieces step(const Pieces& in, Direction dir) const {
    Pieces out;
    if (opts_.clip) {
      out = map_polylines_clipped(xi_, in, dir, *opts_.clip);
    } else {
      out.reserve(in.size());
      for (const Polyline& p : in) out.push_back(map_polyline(xi_, p, dir));
    }
    check(out);
    return out;
  }

  void check(const Pieces& ps) const {
    std::size_t n = 0;
    for (const Polyline& p : ps) {
      n += p.size();
      if (std::isfinite(opts_.escape_radius)) {
        for (const Point& v : p.vertices)
          if (!(norm(v) <= opts_.escape_radius))
            throw EscapeError("manifold left the bounding radius " +
                              std::to_string(opts_.escape_radius));
      }
    }
    if (n > opts_.vertex_cap)
      throw VertexBudgetExceeded("manifold needs " + std::to_string(n) + " vertices, cap is " +
                                 std::to_string(opts_.vertex_cap));
  }

  const GrowthOptions& opts() const { return opts_; }

 private:
  Params xi_;
  GrowthOptions opts_;
};

Pieces clip_all(const Pieces& in, const std::optional<Box>& clip) {
  if (!clip) return in;
  Pieces out;
  for (const Polyline& p : in)
    for (Polyline& r : clip_runs(p, *clip)) out.push_back(std::move(r));
  return out;
}

// Keeps a polyline's first vertex pinned to the fixed point it grows from.
void pin_start(Pieces& ps, const Point& anchor) {
  if (ps.size() == 1 && !ps.front().vertices.empty() &&
      distance(ps.front().vertices.front(), anchor) < 1e-9)
    ps.front().vertices.front() = anchor;
}

// Joins two polylines that both start at the same fixed point into one.
Pieces join_at_start(const Pieces& a, const Pieces& b) {
  if (a.size() == 1 && b.size() == 1 && a.front().vertices.front() == b.front().vertices.front()) {
    Polyline out;
    out.vertices.assign(a.front().vertices.rbegin(), a.front().vertices.rend());
    out.vertices.insert(out.vertices.end(), b.front().vertices.begin() + 1, b.front().vertices.end());
    prune_collinear(out.vertices);
    return {out};
  }
  Pieces out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Grows S0 from a fixed point: returns f^{d-1}(S0) joined to f^d(S0), where
// the map direction alternates sides because the relevant eigenvalue is negative.
Pieces grow_from_fixed(const Grower& g, const Point& anchor, const Polyline& seed, int depth,
                       Direction dir) {
  Pieces prev;
  Pieces cur = clip_all({seed}, g.opts().clip);
  for (int k = 1; k <= depth; ++k) {
    prev = std::move(cur);
    cur = g.step(prev, dir);
    pin_start(cur, anchor);
  }
  if (depth == 0) return cur;
  return join_at_start(prev, cur);
}

// Half-length of the linear piece along `dir` through cycle point `start`
// that keeps the itinerary for one full period. `forward` follows the
// orbit forward (stable seed); otherwise backward (unstable seed).
double linear_radius(const Params& xi, const PeriodicCycle& cyc, Point dir, bool forward) {
  const std::size_t n = cyc.word.size();
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t idx = forward ? k : (n - k) % n;
    const Point& p = cyc.points[idx];
    if (dir.x != 0.0) r = std::min(r, std::abs(p.x / dir.x));
    const Side s = side_of_letter(cyc.word[forward ? idx : (idx + n - 1) % n]);
    if (forward)
      dir = jacobian(xi, s) * dir;
    else {
      // Preimage direction under the piece of the previous letter.
      const double delta = det_of(xi, s);
      dir = {-dir.y / delta, dir.x + trace_of(xi, s) * dir.y / delta};
    }
  }
  return r;
}

Pieces grow_cycle(const Params& xi, const Grower& g, const ManifoldSpec& spec, int depth) {
  const PeriodicCycle cyc = find_cycle(xi, spec.word);
  if (!cyc.saddle) throw DomainError("cycle " + spec.word + " is not a saddle");
  const bool stable = spec.kind == ManifoldKind::Stable;
  const Mat2& M = cyc.monodromy;
  const double mu = (stable ? cyc.multipliers[1] : cyc.multipliers[0]).real();
  // Eigenvector of M for mu.
  Point v = std::abs(M.b) > std::abs(M.c) ? Point{M.b, mu - M.a} : Point{mu - M.d, M.c};
  if (norm(v) == 0.0) v = {1.0, 0.0};
  v = (1.0 / norm(v)) * v;
  const double r = linear_radius(xi, cyc, v, stable);
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError("cycle point on the switching line; no linear seed");
  const Point& p0 = cyc.points[0];
  const Polyline seed{{p0 - r * v, p0 + r * v}};

  const std::size_t n = cyc.word.size();
  const Direction grow_dir = stable ? Direction::Backward : Direction::Forward;
  const Direction other = stable ? Direction::Forward : Direction::Backward;
  // Images k = -(n-1) .. 0 are the local pieces at every cycle point.
  std::vector<Pieces> window;
  {
    Pieces cur = {seed};
    std::vector<Pieces> local{cur};
    for (std::size_t j = 1; j < n; ++j) {
      cur = g.step(cur, other);
      local.push_back(cur);
    }
    window.assign(local.rbegin(), local.rend());
  }
  Pieces cur = clip_all({seed}, g.opts().clip);
  for (int k = 1; k <= depth; ++k) {
    cur = g.step(cur, grow_dir);
    window.erase(window.begin());
    window.push_back(cur);
  }
  Pieces out;
  for (const Pieces& w : window) out.insert(out.end(), w.begin(), w.end());
  g.check(out);
  return out;
}

}  // namespace

ManifoldApprox grow_manifold(const Params& xi, const ManifoldSpec& spec, int depth,
                             const GrowthOptions& opts) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  if (auto v = phi_violation(xi))
    throw DomainError("manifold growth requires xi in Phi: violates " + *v);
  const Grower g(xi, opts);
  ManifoldApprox m;
  m.kind = spec.kind;
  m.base = spec.base;
  m.branch = spec.branch;
  m.depth = depth;

  switch (spec.base) {
    case ManifoldBase::X: {
      const SpecialPoints sp = special_points(xi);
      const Point X = fixed_point_X(xi);
      if (spec.kind == ManifoldKind::Unstable) {
        m.polylines = grow_from_fixed(g, X, Polyline{{X, sp.T}}, depth, Direction::Forward);
      } else if (depth == 0) {
        Polyline p{{sp.V, X, sp.fV, sp.finvV}};
        prune_collinear(p.vertices);
        m.polylines = clip_all({p}, opts.clip);
      } else {
        m.polylines =
            grow_from_fixed(g, X, Polyline{{X, sp.fV, sp.finvV}}, depth, Direction::Backward);
      }
      break;
    }
    case ManifoldBase::Y: {
      if (spec.kind != ManifoldKind::Unstable || (!spec.branch.empty() && spec.branch != "right"))
        throw std::invalid_argument("only the right branch of W^u(Y) is supported");
      const SpecialPoints sp = special_points(xi);
      const Point Y = fixed_point_Y(xi);
      Pieces cur = clip_all({Polyline{{Y, sp.D, apply(xi, sp.D)}}}, opts.clip);
      for (int k = 1; k <= depth; ++k) {
        cur = g.step(cur, Direction::Forward);
        pin_start(cur, Y);
      }
      m.polylines = std::move(cur);
      if (m.branch.empty()) m.branch = "right";
      break;
    }
    case ManifoldBase::Cycle: {
      if (spec.word.empty()) throw std::invalid_argument("cycle manifolds need an itinerary word");
      m.polylines = grow_cycle(xi, g, spec, depth);
      if (m.branch.empty()) m.branch = spec.word;
      break;
    }
  }
  g.check(m.polylines);
  return m;
}

// ---------------------------------------------------------------------------

int cluster_components(const std::vector<Point>& pts, double eps, std::vector<int>& labels) {
  labels.assign(pts.size(), -1);
  if (pts.empty()) return 0;
  // Cells of side eps/sqrt(2): points sharing a cell are always within eps.
  const double cell = eps / std::sqrt(2.0);
  const auto key = [](long i, long j) { return (std::int64_t(i) << 32) ^ std::int64_t(std::uint32_t(j)); };
  std::unordered_map<std::int64_t, int> cell_id;
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::pair<long, long>> coords;
  std::vector<int> cell_of(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const long i = long(std::floor(pts[k].x / cell));
    const long j = long(std::floor(pts[k].y / cell));
    auto [it, fresh] = cell_id.try_emplace(key(i, j), int(members.size()));
    if (fresh) {
      members.emplace_back();
      coords.emplace_back(i, j);
    }
    members[std::size_t(it->second)].push_back(k);
    cell_of[k] = it->second;
  }
  std::vector<int> parent(members.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int a) {
    while (parent[std::size_t(a)] != a) {
      parent[std::size_t(a)] = parent[std::size_t(parent[std::size_t(a)])];
      a = parent[std::size_t(a)];
    }
    return a;
  };
  const double eps2 = eps * eps;
  for (std::size_t c = 0; c < members.size(); ++c) {
    const auto [ci, cj] = coords[c];
    for (long di = -2; di <= 2; ++di) {
      for (long dj = -2; dj <= 2; ++dj) {
        if (di == 0 && dj == 0) continue;
        auto it = cell_id.find(key(ci + di, cj + dj));
        if (it == cell_id.end() || std::size_t(it->second) < c) continue;
        const int a = find(int(c)), b = find(it->second);
        if (a == b) continue;
        bool linked = false;
        for (std::size_t p : members[c]) {
          for (std::size_t q : members[std::size_t(it->second)]) {
            const Point d = pts[p] - pts[q];
            if (dot(d, d) <= eps2) {
              linked = true;
              break;
            }
          }
          if (linked) break;
        }
        if (linked) parent[std::size_t(a)] = b;
      }
    }
  }
  std::unordered_map<int, int> compact;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const int root = find(cell_of[k]);
    auto [it, fresh] = compact.try_emplace(root, int(compact.size()));
    labels[k] = it->second;
  }
  return int(compact.size());
}

AttractorApprox attractor_cloud(const Params& xi, const AttractorOptions& opts) {
  if (!in_phi_byg(xi)) throw DomainError("attractor sampling requires xi in Phi_BYG");
  if (opts.samples == 0) throw std::invalid_argument("samples must be positive");
  const TrapRegion trap = trapping_region(xi);
  AttractorApprox out;
  out.params_used = opts;
  out.cluster_eps = opts.cluster_eps.value_or(1e-2 * trap.omega.diameter());
  out.params_used.cluster_eps = out.cluster_eps;

  std::vector<Point> raw;
  raw.reserve(opts.samples);
  if (opts.backend == AttractorBackend::Orbit) {
    const Point X = fixed_point_X(xi);
    const double slope = eigen(xi, Side::R).slope_u;
    const Point dir = (1.0 / std::hypot(1.0, slope)) * Point{1.0, slope};
    // Near the boundary of Phi_BYG, Omega itself can reach past the requested radius.
    double radius = opts.escape_radius;
    for (const Point& v : trap.omega.vertices) radius = std::max(radius, 2.0 * norm(v));
    out.params_used.escape_radius = radius;
    Point p = X + opts.seed_offset * dir;
    for (std::size_t i = 0; i < opts.transient + opts.samples; ++i) {
      p = apply(xi, p);
      if (!(norm(p) <= radius))
        throw EscapeError("orbit left radius " + std::to_string(radius) +
                          " after " + std::to_string(i + 1) + " iterations");
      if (i >= opts.transient) raw.push_back(p);
    }
  } else {
    const ManifoldApprox wu =
        grow_manifold(xi, {ManifoldKind::Unstable, ManifoldBase::X, "", ""}, opts.manifold_depth);
    const Polyline& line = wu.polyline();
    std::vector<double> cum(line.size(), 0.0);
    for (std::size_t i = 1; i < line.size(); ++i)
      cum[i] = cum[i - 1] + distance(line.vertices[i - 1], line.vertices[i]);
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> U(0.0, cum.back());
    for (std::size_t k = 0; k < opts.samples; ++k) {
      const double s = U(rng);
      const std::size_t i = std::size_t(std::upper_bound(cum.begin(), cum.end(), s) - cum.begin());
      const std::size_t e = std::clamp<std::size_t>(i, 1, line.size() - 1);
      const double len = cum[e] - cum[e - 1];
      const double t = len > 0.0 ? (s - cum[e - 1]) / len : 0.0;
      raw.push_back(line.vertices[e - 1] + t * (line.vertices[e] - line.vertices[e - 1]));
    }
  }
  const double slack = 1e-9 * std::max(1.0, trap.omega.diameter());
  for (const Point& p : raw) {
    if (trap.omega.contains(p, slack))
      out.cloud.push_back(p);
    else
      ++out.n_clipped;
  }
  out.n_components = cluster_components(out.cloud, out.cluster_eps, out.component_labels);
  return out;
}

CoverageGaps coverage_gaps(const ManifoldApprox& stable, const Polygon& region, int grid_n) {
  if (stable.kind != ManifoldKind::Stable)
    throw std::invalid_argument("coverage gaps are measured for a stable manifold");
  if (grid_n < 2) throw std::invalid_argument("grid_n must be at least 2");
  const SegmentIndex index(stable.edges());
  CoverageGaps out;
  out.grid_n = grid_n;
  out.box = region.bbox();
  out.gap_field.assign(std::size_t(grid_n) * std::size_t(grid_n),
                       std::numeric_limits<double>::quiet_NaN());
  const double dx = (out.box.xmax - out.box.xmin) / double(grid_n - 1);
  const double dy = (out.box.ymax - out.box.ymin) / double(grid_n - 1);
  for (int j = 0; j < grid_n; ++j) {
    for (int i = 0; i < grid_n; ++i) {
      const Point p{out.box.xmin + i * dx, out.box.ymin + j * dy};
      if (!region.contains(p, 1e-12)) continue;
      const double d = index.nearest(p).distance;
      out.gap_field[std::size_t(j) * std::size_t(grid_n) + std::size_t(i)] = d;
      out.max_gap = std::max(out.max_gap, d);
    }
  }
  return out;
}

DeltaRegion delta_region(const Params& xi, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  const SpecialPoints sp = special_points(xi);
  if (!sp.Z) throw ZUndefined("Z is undefined: f^2(T) is not left of E^s(X)");
  const Point X = fixed_point_X(xi);
  DeltaRegion out;
  out.delta0.vertices = {X, sp.T, *sp.Z};
  out.delta_union.push_back(out.delta0);
  Polyline boundary{{X, sp.T, *sp.Z, X}};
  for (int i = 1; i <= depth; ++i) {
    boundary = map_polyline(xi, boundary, Direction::Forward);
    boundary.vertices.front() = X;
    boundary.vertices.back() = X;
    Polygon poly;
    poly.vertices.assign(boundary.vertices.begin(), boundary.vertices.end() - 1);
    out.delta_union.push_back(std::move(poly));
  }
  return out;
}

namespace {

// Pixel mask of a union of polygons. A pixel is set when its centre lies in
// some polygon (even-odd scanline parity) or when a polygon edge passes
// through it, so every point of the union lands on a set pixel and every set
// pixel is within one pixel diagonal of the union.
class UnionRaster {
 public:
  UnionRaster(const Box& box, double h) : box_(box), h_(h) {
    w_ = std::max<long>(1, long(std::ceil((box.xmax - box.xmin) / h)));
    rows_ = std::max<long>(1, long(std::ceil((box.ymax - box.ymin) / h)));
    mask_.assign(std::size_t(w_ * rows_), 0);
    toggle_.resize(mask_.size());
  }

  void add(const Polygon& poly) {
    std::fill(toggle_.begin(), toggle_.end(), 0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const Segment e = poly.edge(k);
      scan_edge(e);
      mark_edge(e);
    }
    for (long r = 0; r < rows_; ++r) {
      unsigned char parity = 0;
      for (long c = 0; c < w_; ++c) {
        const std::size_t i = std::size_t(r * w_ + c);
        parity ^= toggle_[i];
        mask_[i] |= parity;
      }
    }
  }

  bool covers(const Point& p) const {
    const long c = long(std::floor((p.x - box_.xmin) / h_));
    const long r = long(std::floor((p.y - box_.ymin) / h_));
    if (c < 0 || r < 0 || c >= w_ || r >= rows_) return false;
    return mask_[std::size_t(r * w_ + c)] != 0;
  }

 private:
  void scan_edge(const Segment& e) {
    if (e.P.y == e.Q.y) return;
    const double lo = std::min(e.P.y, e.Q.y), hi = std::max(e.P.y, e.Q.y);
    // Rows whose centre y satisfies lo <= y < hi.
    const long r0 = std::max(0L, long(std::ceil((lo - box_.ymin) / h_ - 0.5)));
    const long r1 = std::min(rows_ - 1, long(std::ceil((hi - box_.ymin) / h_ - 0.5)) - 1);
    for (long r = r0; r <= r1; ++r) {
      const double yc = box_.ymin + (double(r) + 0.5) * h_;
      const double x = e.P.x + (yc - e.P.y) * (e.Q.x - e.P.x) / (e.Q.y - e.P.y);
      const double u = (x - box_.xmin) / h_ - 0.5;
      const long c = u < 0.0 ? 0 : long(std::floor(u)) + 1;
      if (c < w_) toggle_[std::size_t(r * w_ + c)] ^= 1;
    }
  }

  void set(long c, long r) {
    if (c >= 0 && r >= 0 && c < w_ && r < rows_) mask_[std::size_t(r * w_ + c)] = 1;
  }

  // Every pixel the edge passes through, column by column.
  void mark_edge(const Segment& e) {
    const double xa = std::min(e.P.x, e.Q.x), xb = std::max(e.P.x, e.Q.x);
    if (xb < box_.xmin || xa > box_.xmax) return;
    const long c0 = std::max(0L, long(std::floor((xa - box_.xmin) / h_)));
    const long c1 = std::min(w_ - 1, long(std::floor((xb - box_.xmin) / h_)));
    const double dx = e.Q.x - e.P.x;
    const double pad = 1e-9 * h_;
    for (long c = c0; c <= c1; ++c) {
      double ya = std::min(e.P.y, e.Q.y), yb = std::max(e.P.y, e.Q.y);
      if (dx != 0.0) {
        const double sa = std::max(xa, box_.xmin + double(c) * h_);
        const double sb = std::min(xb, box_.xmin + double(c + 1) * h_);
        const double y1 = e.P.y + (sa - e.P.x) * (e.Q.y - e.P.y) / dx;
        const double y2 = e.P.y + (sb - e.P.x) * (e.Q.y - e.P.y) / dx;
        ya = std::min(y1, y2);
        yb = std::max(y1, y2);
      }
      const long r0 = std::max(0L, long(std::floor((ya - pad - box_.ymin) / h_)));
      const long r1 = std::min(rows_ - 1, long(std::floor((yb + pad - box_.ymin) / h_)));
      for (long r = r0; r <= r1; ++r) set(c, r);
    }
  }

  Box box_;
  double h_;
  long w_ = 1, rows_ = 1;
  std::vector<unsigned char> mask_, toggle_;
};

}  // namespace

std::size_t count_outside_union(const std::vector<Point>& pts, const std::vector<Polygon>& polys,
                                double dilation) {
  if (!(dilation > 0.0)) throw std::invalid_argument("dilation must be positive");
  if (pts.empty()) return 0;
  // A set pixel is within one diagonal, h * sqrt 2 <= dilation, of the union.
  const double h = dilation / std::sqrt(2.0);
  const Box box = bounding_box(pts).dilated(h);
  UnionRaster raster(box, h);
  for (const Polygon& p : polys) raster.add(p);
  std::size_t outside = 0;
  for (const Point& p : pts)
    if (!raster.covers(p)) ++outside;
  return outside;
}

}  // namespace bcnf
