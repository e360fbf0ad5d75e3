#include "bcnf/bifurcation.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "bcnf/cycles.hpp"
#include "bcnf/errors.hpp"
#include "bcnf/geometry.hpp"
#include "bcnf/manifolds.hpp"
#include "bcnf/parallel.hpp"
#include "bcnf/param_space.hpp"

namespace bcnf {

namespace {

double line_distance(const Point& p, const Segment& s) {
  const Point d = s.Q - s.P;
  const double n = norm(d);
  return n > 0.0 ? std::abs(cross(d, p - s.P)) / n : distance(p, s.P);
}

}  // namespace

HTSample ht_distance(const Params& xi, int depth, const HTOptions& opts) {
  if (depth < 1) throw std::invalid_argument("ht_distance needs depth >= 1");
  HTSample s;
  s.params = xi;
  s.depth_used = depth;
  const int depth_s = opts.depth_s >= 0 ? opts.depth_s : (3 * depth + 2) / 5;
  find_cycle(xi, opts.word);

  ManifoldApprox wu;
  try {
    wu = grow_manifold(xi, {ManifoldKind::Unstable, ManifoldBase::X, "", ""}, depth,
                       {opts.vertex_cap, opts.escape_radius, std::nullopt});
  } catch (const EscapeError&) {
    s.escaped = true;
    s.distance = -1.0;
    return s;
  }
  // Pieces of W^s leaving a box that contains a trapping region stay outside
  // it under every further preimage, so they can never meet W^u(X).
  Box box = in_phi_byg(xi) ? trapping_region(xi).omega.bbox()
                           : bounding_box(wu.polyline().vertices);
  box = box.dilated(1e-6 * box.diagonal());
  const ManifoldApprox ws = grow_manifold(
      xi, {ManifoldKind::Stable, ManifoldBase::Cycle, "", opts.word}, depth_s,
      {opts.vertex_cap, std::numeric_limits<double>::infinity(), box});

  // Clipping keeps W^s short, so it is the cheaper set to index.
  const SegmentIndex index(ws.edges());
  double clearance = std::numeric_limits<double>::infinity();
  double penetration = 0.0;
  const Polyline& u = wu.polyline();
  for (std::size_t i = 0; i < u.edge_count(); ++i) {
    const Segment e = u.edge(i);
    const std::vector<std::size_t> hits = index.intersecting(e);
    if (hits.empty()) {
      if (s.crossings == 0) clearance = std::min(clearance, index.nearest(e, clearance).distance);
      continue;
    }
    for (std::size_t h : hits) {
      const Segment& w = index.segment(h);
      penetration = std::max(penetration, std::min(line_distance(e.P, w), line_distance(e.Q, w)));
      ++s.crossings;
    }
    if (opts.sign_only) break;
  }
  s.distance = s.crossings > 0 ? -penetration : clearance;
  return s;
}

CurveTrace trace_ht_curve(double delta_L, double delta_R, const std::vector<double>& tau_L_grid,
                          double bisect_tol, int depth, const TraceOptions& opts) {
  if (!(bisect_tol > 0.0)) throw std::invalid_argument("bisect_tol must be positive");
  if (opts.scan_steps < 2) throw std::invalid_argument("scan_steps must be at least 2");
  CurveTrace trace;
  trace.delta_L = delta_L;
  trace.delta_R = delta_R;
  trace.depth = depth;
  trace.samples.resize(tau_L_grid.size());

  parallel_for(tau_L_grid.size(), opts.jobs, [&](std::size_t g) {
    CurveSample& out = trace.samples[g];
    out.tau_L = tau_L_grid[g];
    const auto sample = [&](double tau_R, bool sign_only = true) -> std::optional<HTSample> {
      HTOptions ht = opts.ht;
      ht.sign_only = sign_only;
      try {
        return ht_distance({out.tau_L, delta_L, tau_R, delta_R}, depth, ht);
      } catch (const Error&) {
        return std::nullopt;  // no cycle, or a growth budget was hit
      }
    };
    const auto separated = [](const HTSample& h) { return !h.escaped && h.crossings == 0; };

    // Scan downward from the border of Phi: the detector reports separation
    // just below it and an intersection once the crisis has been crossed.
    const double lo_end = opts.tau_R_min, hi_end = -delta_R - 1.0;
    std::optional<double> a, b;
    std::optional<double> last_sep;
    for (int j = opts.scan_steps - 1; j >= 1; --j) {
      const double t = lo_end + (hi_end - lo_end) * double(j) / double(opts.scan_steps);
      const auto h = sample(t);
      if (!h) continue;
      if (separated(*h)) {
        last_sep = t;
      } else if (last_sep) {
        a = t;
        b = last_sep;
        break;
      }
    }
    if (!a) return;
    double lo = *a, hi = *b;
    while (hi - lo > bisect_tol) {
      const double mid = 0.5 * (lo + hi);
      const auto h = sample(mid);
      if (!h) return;
      ++out.iterations;
      (separated(*h) ? hi : lo) = mid;
    }
    out.lo = lo;
    out.hi = hi;
    out.tau_R_star = 0.5 * (lo + hi);
    const auto h = sample(*out.tau_R_star, false);
    out.residual = h ? std::abs(h->distance) : std::numeric_limits<double>::quiet_NaN();
  });
  return trace;
}

double escape_survey(const Params& xi, std::size_t n_seeds, std::size_t n_iter, double radius,
                     std::uint64_t seed) {
  if (n_seeds == 0) return 0.0;
  const Point X = fixed_point_X(xi);
  const double slope = eigen(xi, Side::R).slope_u;
  const Point u = (1.0 / std::hypot(1.0, slope)) * Point{1.0, slope};
  constexpr double offset = 1e-6;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::size_t escaped = 0;
  for (std::size_t k = 0; k < n_seeds; ++k) {
    Point jitter;
    do {
      jitter = {unit(rng), unit(rng)};
    } while (dot(jitter, jitter) > 1.0);
    const Point p = X + offset * u + 0.1 * offset * jitter;
    if (orbit(xi, p, n_iter, radius).diverged) ++escaped;
  }
  return double(escaped) / double(n_seeds);
}

std::optional<double> phi_zero_boundary(double delta_L, double delta_R, double tau_L) {
  if (!(delta_L > 0.0) || !(delta_R > 0.0))
    throw std::invalid_argument("slice determinants must be positive");
  if (!(tau_L > delta_L + 1.0)) return std::nullopt;
  const auto f = [&](double tau_R) { return phi_formula({tau_L, delta_L, tau_R, delta_R}); };
  double lo = -5.0, hi = -delta_R - 1.0;
  double flo = f(lo), fhi = f(hi);
  constexpr double zero_tol = 1e-12;
  if (std::abs(fhi) <= zero_tol) return hi;
  if (std::abs(flo) <= zero_tol) return lo;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  while (hi - lo > 1e-14 * (1.0 + std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace bcnf
