#include "bcnf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "bcnf/cycles.hpp"
#include "bcnf/errors.hpp"
#include "bcnf/geometry.hpp"
#include "bcnf/manifolds.hpp"
#include "bcnf/param_space.hpp"
#include "bcnf/sampling.hpp"

namespace bcnf {

bool VerifyReport::all_passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Where a suite's parameter points come from.
struct Source {
  const VerifyOptions& opts;
  Rng& rng;

  bool fixed() const { return opts.point.has_value(); }
  std::size_t count(std::size_t full) const { return fixed() ? 1 : full; }

  std::optional<Params> phi() {
    if (!fixed()) return sample_phi(rng);
    return in_phi(*opts.point) ? opts.point : std::nullopt;
  }
  std::optional<Params> byg() {
    if (!fixed()) return sample_phi_byg(rng);
    return in_phi_byg(*opts.point) ? opts.point : std::nullopt;
  }
  // Rejection sampling for an extra condition; gives up after many misses.
  template <class Pred>
  std::optional<Params> phi_where(Pred&& pred, bool byg_only = false) {
    for (int tries = 0; tries < (fixed() ? 1 : 100000); ++tries) {
      auto xi = byg_only ? byg() : phi();
      if (xi && pred(*xi)) return xi;
    }
    return std::nullopt;
  }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
};

struct Tally {
  std::size_t samples = 0;
  double worst = 0.0;
  std::string first_failure;
  double tol = 0.0;

  void add(double violation, const char* what = "", const Params* xi = nullptr) {
    ++samples;
    if (!(violation <= worst)) worst = std::isnan(violation) ? INFINITY : violation;
    if (!(violation <= tol) && first_failure.empty()) {
      std::ostringstream os;
      os.precision(10);
      os << what;
      if (xi) os << " at (" << xi->tau_L << ", " << xi->delta_L << ", " << xi->tau_R << ", " << xi->delta_R << ")";
      os << ": " << violation;
      first_failure = os.str();
    }
  }
  void check(bool ok, const char* what = "", const Params* xi = nullptr) { add(ok ? 0.0 : 1.0, what, xi); }
};

struct Suite {
  const char* name;
  const char* module;
  double tolerance;
  std::function<void(Source&, Tally&)> run;
};

double rel_dist(const Point& a, const Point& b) {
  return distance(a, b) / std::max(1.0, std::max(norm(a), norm(b)));
}

Point random_point(Source& src, double r) { return {src.uniform(-r, r), src.uniform(-r, r)}; }

// Uniform point in a triangle.
Point in_triangle(Source& src, const Polygon& t) {
  double u = src.uniform(0.0, 1.0), v = src.uniform(0.0, 1.0);
  if (u + v > 1.0) {
    u = 1.0 - u;
    v = 1.0 - v;
  }
  return t.vertices[0] + u * (t.vertices[1] - t.vertices[0]) + v * (t.vertices[2] - t.vertices[0]);
}

std::vector<Suite> make_suites(std::size_t n) {
  std::vector<Suite> s;

  // --- map and fixed points -----------------------------------------------
  s.push_back({"sigma_continuity", "nf-core", 0.0, [](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(100); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const Point p{0.0, src.uniform(-10.0, 10.0)};
      t.add(distance(apply_piece(*xi, Side::L, p), apply_piece(*xi, Side::R, p)), "pieces differ", &*xi);
    }
  }});
  s.push_back({"inverse_round_trip", "nf-core", 1e-10, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const Point p = random_point(src, 5.0);
      t.add(std::max(rel_dist(apply_inverse(*xi, apply(*xi, p)), p),
                     rel_dist(apply(*xi, apply_inverse(*xi, p)), p)),
            "round trip error", &*xi);
    }
  }});
  s.push_back({"eigen_identities", "nf-core", 1e-12, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      double v = 0.0;
      for (Side side : {Side::L, Side::R}) {
        const EigenData e = eigen(*xi, side);
        v = std::max({v, std::abs(e.lambda_u * e.lambda_s - det_of(*xi, side)),
                      std::abs(e.lambda_u + e.lambda_s - trace_of(*xi, side))});
      }
      t.add(v, "trace/determinant mismatch", &*xi);
    }
  }});
  s.push_back({"fixed_point_residual", "nf-core", 1e-12, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const Point X = fixed_point_X(*xi), Y = fixed_point_Y(*xi);
      t.add(std::max(rel_dist(apply(*xi, X), X), rel_dist(apply(*xi, Y), Y)), "residual", &*xi);
    }
  }});
  s.push_back({"eigen_ordering", "nf-core", 0.0, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const EigenData L = eigen(*xi, Side::L), R = eigen(*xi, Side::R);
      t.check(0.0 < L.lambda_s && L.lambda_s < 1.0 && 1.0 < L.lambda_u && R.lambda_u < -1.0 &&
                  -1.0 < R.lambda_s && R.lambda_s < 0.0,
              "ordering broken", &*xi);
    }
  }});

  // --- parameter regions ---------------------------------------------------
  s.push_back({"z_exists_when_j1_above_one", "param-space", 0.0, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi_where([](const Params& p) { return chaos_indices(p).J1 > 1.0; });
      if (!xi) return;
      const double pg = phi_formula(renormalise(*xi));
      t.add(pg < 0.0 ? 0.0 : pg + 1e-300, "phi(g) not negative", &*xi);
    }
  }});
  s.push_back({"critical_slope_above_two_delta_r", "param-space", 0.0, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.byg();
      if (!xi) return;
      const double gap = 2.0 * xi->delta_R - m_crit(*xi);
      t.add(gap < 0.0 ? 0.0 : gap + 1e-300, "m_crit <= 2 delta_R", &*xi);
    }
  }});
  s.push_back({"region_index_unique", "param-space", 0.0, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      // Count every n <= n_max meeting the definition, independently of the classifier.
      int matches = 0;
      std::optional<int> first;
      std::vector<double> phis{phi_formula(*xi)};
      Params cur = *xi;
      for (int m = 0; m <= kDefaultRnMax; ++m) {
        cur = renormalise(cur);
        if (!in_phi(cur)) break;
        phis.push_back(phi_formula(cur));
      }
      for (std::size_t m = 0; m + 1 < phis.size(); ++m) {
        if (phis[m] > 0.0 && phis[m + 1] <= 0.0) {
          ++matches;
          if (!first) first = int(m);
        }
      }
      const RegionClass rc = classify_region(*xi);
      t.check(matches <= 1 && rc.rn_index == first, "region index not unique", &*xi);
    }
  }});
  s.push_back({"delta_l_below_one_in_byg", "param-space", 0.0, [n](Source& src, Tally& t) {
    // Sampled over a wider determinant range so the bound is not built in.
    for (std::size_t k = 0; k < src.count(n); ++k) {
      std::optional<Params> xi;
      if (src.fixed()) {
        xi = src.byg();
      } else {
        for (int tries = 0; tries < 100000 && !xi; ++tries) {
          const Params p = sample_phi(src.rng, 3.0, 4.0);
          if (in_phi_byg(p)) xi = p;
        }
      }
      if (!xi) return;
      t.check(xi->delta_L < 1.0, "delta_L >= 1", &*xi);
    }
  }});
  s.push_back({"renormalisation_fixed_point", "param-space", 0.0, [](Source&, Tally& t) {
    const Params star{1.0, 0.0, -1.0, 0.0};
    t.check(renormalise(star) == star, "g(xi*) != xi*");
  }});

  // --- cones and segments --------------------------------------------------
  s.push_back({"left_cone_expansion", "pl-geometry", 0.0, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const EigenData L = eigen(*xi, Side::L);
      const double mc = m_crit(*xi);
      const Interval K1{-L.lambda_s, src.uniform(0.0, mc)};
      t.check(expansion_certificate(*xi, Side::L, false, K1, L.lambda_u), "K up to m_crit", &*xi);
      const Interval K2{-L.lambda_s, src.uniform(0.0, 1.0)};
      t.check(expansion_certificate(*xi, Side::L, false, K2, two_branch_factor(L.lambda_u)),
              "K up to 1", &*xi);
    }
  }});
  s.push_back({"right_cone_expansion", "pl-geometry", 0.0, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const EigenData R = eigen(*xi, Side::R);
      const Interval K{src.uniform(-1.0, 0.0), -R.lambda_s};
      t.check(expansion_certificate(*xi, Side::R, false, K, two_branch_factor(-R.lambda_u)),
              "right cone", &*xi);
    }
  }});
  s.push_back({"joint_cone_invariance", "pl-geometry", 1e-12, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.byg();
      if (!xi) return;
      const Interval K{-eigen(*xi, Side::L).lambda_s, -eigen(*xi, Side::R).lambda_s};
      const double m = src.uniform(K.lo, K.hi);
      for (Side side : {Side::L, Side::R}) {
        const double g = cone_step(*xi, side, false, m);
        t.add(std::max({0.0, K.lo - g, g - K.hi}), "slope left K", &*xi);
      }
    }
  }});
  s.push_back({"joint_cone_expansion", "pl-geometry", 1e-12, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.byg();
      if (!xi) return;
      const EigenData L = eigen(*xi, Side::L), R = eigen(*xi, Side::R);
      const Interval K{-L.lambda_s, -R.lambda_s};
      const double m = src.uniform(K.lo, K.hi);
      const Point v{1.0, m};
      const double cR = two_branch_factor(-R.lambda_u);
      t.add(std::max(0.0, L.lambda_u * norm(v) - norm(jacobian(*xi, Side::L) * v)), "left", &*xi);
      t.add(std::max(0.0, cR * norm(v) - norm(jacobian(*xi, Side::R) * v)), "right", &*xi);
      t.check(expansion_certificate(*xi, Side::L, false, K, L.lambda_u) &&
                  expansion_certificate(*xi, Side::R, false, K, cR),
              "certificate", &*xi);
    }
  }});
  s.push_back({"crossing_piece_bound", "pl-geometry", 1e-9, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      // Only points whose cone certifies count toward the sample total.
      const auto xi = src.phi_where([](const Params& p) {
        const EigenData L = eigen(p, Side::L), R = eigen(p, Side::R);
        const Interval K{-L.lambda_s, -R.lambda_s};
        return expansion_certificate(p, Side::L, false, K, L.lambda_u) &&
               expansion_certificate(p, Side::R, false, K, two_branch_factor(-R.lambda_u));
      });
      if (!xi) return;
      const EigenData L = eigen(*xi, Side::L), R = eigen(*xi, Side::R);
      const Interval K{-L.lambda_s, -R.lambda_s};
      const double cL = L.lambda_u, cR = two_branch_factor(-R.lambda_u);
      const Point dir{1.0, src.uniform(K.lo, K.hi)};
      const Point at{0.0, src.uniform(-2.0, 2.0)};
      const Segment a{at - src.uniform(1e-3, 2.0) * dir, at + src.uniform(1e-3, 2.0) * dir};
      const Polyline img = map_polyline(*xi, Polyline{{a.P, a.Q}}, Direction::Forward);
      double longest = 0.0;
      for (std::size_t i = 0; i < img.edge_count(); ++i) longest = std::max(longest, img.edge(i).length());
      t.add(std::max(0.0, longest_piece_bound(cL, cR) * a.length() - longest), "short image", &*xi);
    }
  }});
  s.push_back({"inverse_left_cone", "pl-geometry", 0.0, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const EigenData L = eigen(*xi, Side::L);
      const Interval K{-1.0 / L.lambda_u, src.uniform(0.0, 1.0)};
      t.check(expansion_certificate(*xi, Side::L, true, K, two_branch_factor(1.0 / L.lambda_s)),
              "inverse left cone", &*xi);
    }
  }});
  s.push_back({"inverse_right_cone", "pl-geometry", 0.0, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const EigenData R = eigen(*xi, Side::R);
      const Interval K{src.uniform(-1.0, 0.0), -1.0 / R.lambda_u};
      t.check(expansion_certificate(*xi, Side::R, true, K, two_branch_factor(-1.0 / R.lambda_s)),
              "inverse right cone", &*xi);
    }
  }});
  s.push_back({"joint_inverse_cone", "pl-geometry", 0.0, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const EigenData L = eigen(*xi, Side::L), R = eigen(*xi, Side::R);
      const Interval K{-1.0 / L.lambda_u, -1.0 / R.lambda_u};
      t.check(expansion_certificate(*xi, Side::L, true, K, two_branch_factor(1.0 / L.lambda_s)) &&
                  expansion_certificate(*xi, Side::R, true, K, two_branch_factor(-1.0 / R.lambda_s)),
              "joint inverse cone", &*xi);
    }
  }});
  s.push_back({"inverse_factors_match_j2", "pl-geometry", 0.0, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const double cL = two_branch_factor(1.0 / eigen(*xi, Side::L).lambda_s);
      const double cR = two_branch_factor(-1.0 / eigen(*xi, Side::R).lambda_s);
      const double J2 = chaos_indices(*xi).J2;
      // Skip the measure-zero shell where rounding decides either side.
      if (std::abs(J2 - 1.0) < 1e-12) continue;
      t.check((1.0 / cL + 1.0 / cR < 1.0) == (J2 < 1.0), "factor sum disagrees with J2", &*xi);
    }
  }});
  s.push_back({"inverse_eigenvalues_reciprocal", "pl-geometry", 1e-12, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      for (Side side : {Side::L, Side::R}) {
        const EigenData e = eigen(*xi, side);
        const double d = det_of(*xi, side);
        // Inverse of the companion matrix is similar to the companion (tau/delta, 1/delta).
        Params inv = *xi;
        (side == Side::L ? inv.tau_L : inv.tau_R) = trace_of(*xi, side) / d;
        (side == Side::L ? inv.delta_L : inv.delta_R) = 1.0 / d;
        const EigenData ie = eigen(inv, side);
        const double big = 1.0 / e.lambda_s, small = 1.0 / e.lambda_u;
        t.add(std::max(std::abs(ie.lambda_u - big) / std::abs(big),
                       std::abs(ie.lambda_s - small) / std::abs(small)),
              "not reciprocal", &*xi);
      }
    }
  }});
  s.push_back({"segment_length_accounting", "pl-geometry", 1e-12, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const double sign = src.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
      const Point P{sign * src.uniform(0.0, 3.0), src.uniform(-3.0, 3.0)};
      const Point Q{sign * src.uniform(0.0, 3.0), src.uniform(-3.0, 3.0)};
      const Polyline img = map_polyline(*xi, Polyline{{P, Q}}, Direction::Forward);
      const double expect = norm(jacobian(*xi, sign < 0 ? Side::L : Side::R) * (Q - P));
      t.add(std::abs(img.length() - expect) / std::max(1.0, expect), "length mismatch", &*xi);
    }
  }});

  // --- phase-space constructions ---------------------------------------------
  s.push_back({"u_above_v", "manifolds", 1e-12, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const SpecialPoints sp = special_points(*xi);
      const double ls = eigen(*xi, Side::L).lambda_s;
      const double ru = eigen(*xi, Side::R).lambda_u, rs = eigen(*xi, Side::R).lambda_s;
      const double factored = std::abs(ru) * (1.0 - ls + rs) * (ls - ru) /
                              ((1.0 - ls) * (1.0 - ru) * (ls - xi->tau_R));
      const double diff = sp.U.y - sp.V.y;
      t.add(std::abs(diff - factored) / std::max(1.0, std::abs(factored)), "factored form", &*xi);
      if (ls + std::abs(rs) < 1.0) t.check(diff > 0.0, "U below V", &*xi);
    }
  }});
  s.push_back({"trap_forward_invariance", "manifolds", 0.0, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.byg();
      if (!xi) return;
      TrapRegion tr;
      try {
        tr = trapping_region(*xi);
      } catch (const ContainmentViolation& e) {
        t.check(false, e.what(), &*xi);
        continue;
      }
      const double slack = 1e-9 * tr.omega.diameter();
      for (int j = 0; j < 10; ++j) {
        Point p = in_triangle(src, tr.omega);
        bool inside = true;
        for (int i = 0; i < 100 && inside; ++i) {
          p = apply(*xi, p);
          inside = tr.omega.contains(p, slack);
        }
        t.check(inside, "orbit left Omega", &*xi);
      }
    }
  }});
  s.push_back({"unstable_edge_slopes", "manifolds", 1e-9, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.byg();
      if (!xi) return;
      const Interval K{-eigen(*xi, Side::L).lambda_s, -eigen(*xi, Side::R).lambda_s};
      const ManifoldApprox wu =
          grow_manifold(*xi, {ManifoldKind::Unstable, ManifoldBase::X, "", ""}, 10);
      double worst = 0.0;
      for (const Segment& e : wu.edges()) {
        const Point d = e.Q - e.P;
        if (norm(d) < 1e-9) continue;  // slope of a sliver is noise
        if (d.x == 0.0) {
          worst = INFINITY;
          break;
        }
        const double m = d.y / d.x;
        worst = std::max({worst, K.lo - m, m - K.hi});
      }
      t.add(worst, "edge slope outside K", &*xi);
    }
  }});
  s.push_back({"stable_seed_on_eigenline", "manifolds", 1e-12, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      const Point X = fixed_point_X(*xi);
      const double slope = -eigen(*xi, Side::R).lambda_u;
      const SpecialPoints sp = special_points(*xi);
      const Segment line{X, X + Point{1.0, slope}};
      double worst = 0.0;
      for (const Point& p : {sp.V, sp.fV, sp.finvV}) {
        const Point d = line.Q - line.P;
        worst = std::max(worst, std::abs(cross(d, p - X)) / norm(d) / std::max(1.0, norm(p)));
      }
      const ManifoldApprox ws =
          grow_manifold(*xi, {ManifoldKind::Stable, ManifoldBase::X, "", ""}, 0);
      for (const Point& p : ws.polyline().vertices) {
        const Point d = line.Q - line.P;
        worst = std::max(worst, std::abs(cross(d, p - X)) / norm(d) / std::max(1.0, norm(p)));
      }
      t.add(worst, "off E^s(X)", &*xi);
    }
  }});
  s.push_back({"backward_divergence", "manifolds", 0.0, [n](Source& src, Tally& t) {
    const std::size_t points = src.fixed() ? 1 : std::max<std::size_t>(1, n / 10);
    for (std::size_t k = 0; k < points; ++k) {
      const auto xi = src.phi_where([](const Params& p) { return chaos_indices(p).J2 < 1.0; });
      if (!xi) return;
      const Point X = fixed_point_X(*xi);
      for (int j = 0; j < 100; ++j) {
        const Point seed = X + random_point(src, 2.0);
        bool found = false;
        for (int attempt = 0; attempt < 32 && !found; ++attempt) {
          Point p = attempt == 0 ? seed : seed + 1e-3 * Point{src.uniform(-0.7, 0.7), src.uniform(-0.7, 0.7)};
          for (int i = 0; i < 10000; ++i) {
            p = apply_inverse(*xi, p);
            if (!(norm(p) <= 1e6)) {
              found = true;
              break;
            }
          }
        }
        t.check(found, "no divergent backward orbit near seed", &*xi);
      }
    }
  }});
  s.push_back({"attractor_two_sided", "manifolds", 0.0, [n](Source& src, Tally& t) {
    const std::size_t points = src.fixed() ? 1 : std::max<std::size_t>(1, n / 10);
    for (std::size_t k = 0; k < points; ++k) {
      const auto xi = src.phi_where(
          [](const Params& p) { return classify_region(p).rn_index == 0; }, true);
      if (!xi) return;
      AttractorOptions o;
      o.samples = 2000;
      o.cluster_eps = 1.0;
      try {
        const AttractorApprox a = attractor_cloud(*xi, o);
        const bool left = std::any_of(a.cloud.begin(), a.cloud.end(), [](const Point& p) { return p.x < 0.0; });
        const bool right = std::any_of(a.cloud.begin(), a.cloud.end(), [](const Point& p) { return p.x > 0.0; });
        t.check(left && right, "cloud on one side only", &*xi);
      } catch (const Error& e) {
        t.check(false, e.what(), &*xi);
      }
    }
  }});

  // --- cycles --------------------------------------------------------------
  s.push_back({"cycle_residual", "bifurcation", 1e-10, [n](Source& src, Tally& t) {
    static const char* words[] = {"LR", "LRR", "LLR", "LRRR", "LLRR", "LRLRR"};
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      for (const char* w : words) {
        PeriodicCycle c;
        try {
          c = find_cycle(*xi, w);
        } catch (const Error&) {
          continue;
        }
        for (const Point& p : c.points) {
          Point q = p;
          for (std::size_t i = 0; i < c.word.size(); ++i) q = apply(*xi, q);
          t.add(rel_dist(q, p), w, &*xi);
        }
      }
    }
  }});
  s.push_back({"cycle_rotation", "bifurcation", 1e-12, [n](Source& src, Tally& t) {
    for (std::size_t k = 0; k < src.count(n); ++k) {
      const auto xi = src.phi();
      if (!xi) return;
      PeriodicCycle a, b;
      try {
        a = find_cycle(*xi, "LRR");
        b = find_cycle(*xi, "RRL");
      } catch (const Error&) {
        continue;
      }
      // RRL starts one step later along the same orbit.
      double worst = 0.0;
      for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, rel_dist(a.points[(i + 1) % 3], b.points[i]));
      for (std::size_t i = 0; i < 2; ++i)
        worst = std::max(worst, std::abs(a.multipliers[i] - b.multipliers[i]) /
                                    std::max(1.0, std::abs(a.multipliers[i])));
      const double det = xi->delta_L * xi->delta_R * xi->delta_R;
      worst = std::max(worst, std::abs(a.multipliers[0] * a.multipliers[1] - det) / std::max(1.0, det));
      t.add(worst, "rotation changed the cycle", &*xi);
    }
  }});
  return s;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  std::vector<std::string> names;
  for (const Suite& s : make_suites(1)) names.emplace_back(s.name);
  return names;
}

VerifyReport run_verify_suites(const VerifyOptions& opts) {
  VerifyReport report;
  Rng rng(opts.seed);
  for (const Suite& suite : make_suites(opts.n)) {
    if (!opts.only.empty() &&
        std::find(opts.only.begin(), opts.only.end(), suite.name) == opts.only.end())
      continue;
    Source src{opts, rng};
    Tally t;
    t.tol = opts.corrupt_tolerance ? -1.0 : suite.tolerance;
    SuiteResult r{suite.name, suite.module, 0, 0.0, t.tol, true, ""};
    try {
      suite.run(src, t);
      r.samples = t.samples;
      r.worst_violation = t.worst;
      r.passed = t.samples == 0 ? !opts.corrupt_tolerance : t.worst <= t.tol;
      if (t.samples == 0)
        r.note = "no parameter point satisfies the suite's preconditions";
      else
        r.note = t.first_failure;
    } catch (const std::exception& e) {
      r.samples = t.samples;
      r.worst_violation = INFINITY;
      r.passed = false;
      r.note = std::string("exception: ") + e.what();
    }
    report.suites.push_back(std::move(r));
  }
  return report;
}

}  // namespace bcnf
