#include "bcnf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "bcnf/errors.hpp"
#include "bcnf/manifolds.hpp"
#include "bcnf/parallel.hpp"

namespace bcnf {

using ojson = nlohmann::ordered_json;

std::vector<double> GridRange::centres() const {
  std::vector<double> v;
  v.reserve(steps > 0 ? std::size_t(steps) : 0);
  const double h = (max - min) / double(steps);
  for (int i = 0; i < steps; ++i) v.push_back(min + (double(i) + 0.5) * h);
  return v;
}

void SliceConfig::validate() const {
  for (const GridRange* r : {&tau_L, &tau_R}) {
    if (r->steps < 1) throw std::invalid_argument("grid steps must be at least 1");
    if (!(r->min < r->max)) throw std::invalid_argument("grid range must satisfy min < max");
  }
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
}

const char* to_string(RegionCode c) {
  switch (c) {
    case RegionCode::OutsidePhi: return "outside_phi";
    case RegionCode::PhiMinusByg: return "phi_minus_byg";
    case RegionCode::Byg: return "byg";
  }
  return "?";
}

SweepRow sweep_row(const Params& xi, int n_max) {
  SweepRow row;
  row.tau_L = xi.tau_L;
  row.tau_R = xi.tau_R;
  const RegionClass rc = classify_region(xi, n_max);
  if (!rc.in_Phi) return row;
  row.region = rc.in_Phi_BYG ? RegionCode::Byg : RegionCode::PhiMinusByg;
  row.rn_index = rc.rn_index;
  row.phi = phi_formula(xi);
  try {
    row.phi_g = phi_formula(renormalise(xi));
  } catch (const Error&) {
    // g(xi) left the real-eigenvalue range through overflow; leave blank.
  }
  row.J1 = rc.flags->J1;
  row.J2 = rc.flags->J2;
  row.sum_stable = rc.flags->sum_stable;
  row.thm1 = rc.flags->thm1_applies;
  row.thm2 = rc.flags->thm2_applies;
  return row;
}

std::vector<SweepRow> sweep_rows(const SliceConfig& cfg) {
  cfg.validate();
  const std::vector<double> tl = cfg.tau_L.centres(), tr = cfg.tau_R.centres();
  std::vector<SweepRow> rows(tl.size() * tr.size());
  parallel_for(tl.size(), cfg.jobs, [&](std::size_t i) {
    for (std::size_t j = 0; j < tr.size(); ++j)
      rows[i * tr.size() + j] = sweep_row({tl[i], cfg.delta_L, tr[j], cfg.delta_R}, cfg.n_max);
  });
  return rows;
}

std::string format_real(std::optional<double> v) {
  if (!v) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    os << format_real(r.tau_L) << ',' << format_real(r.tau_R) << ',' << to_string(r.region) << ',';
    if (r.rn_index) os << *r.rn_index;
    os << ',' << format_real(r.phi) << ',' << format_real(r.phi_g) << ',' << format_real(r.J1) << ','
       << format_real(r.J2) << ',' << format_real(r.sum_stable) << ',' << (r.thm1 ? 1 : 0) << ','
       << (r.thm2 ? 1 : 0) << '\n';
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << text;
  f.close();
  if (!f) throw std::runtime_error("write to '" + path.string() + "' failed");
}

void run_sweep(const SliceConfig& cfg, const std::filesystem::path& out) {
  std::ostringstream os;
  write_sweep_csv(os, sweep_rows(cfg));
  write_text(out, os.str());
}

namespace {

// Non-finite values have no JSON literal; they become null.
ojson real(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson point(const Point& p) { return ojson::array({real(p.x), real(p.y)}); }

ojson points(const std::vector<Point>& v) {
  ojson a = ojson::array();
  for (const Point& p : v) a.push_back(point(p));
  return a;
}

ojson params_json(const Params& xi) {
  return {{"tau_L", xi.tau_L}, {"delta_L", xi.delta_L}, {"tau_R", xi.tau_R}, {"delta_R", xi.delta_R}};
}

ojson manifold_json(const std::string& label, const ManifoldApprox& m, const std::string& word) {
  ojson lines = ojson::array();
  for (const Polyline& p : m.polylines) lines.push_back(points(p.vertices));
  ojson j = {{"label", label},
             {"kind", to_string(m.kind)},
             {"base", to_string(m.base)},
             {"branch", m.branch},
             {"depth", m.depth}};
  if (!word.empty()) j["word"] = word;
  j["polylines"] = std::move(lines);
  return j;
}

template <class Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

ojson multipliers_json(const PeriodicCycle& c) {
  ojson m = ojson::array();
  for (const auto& z : c.multipliers) m.push_back({{"re", real(z.real())}, {"im", real(z.imag())}});
  return m;
}

}  // namespace

ojson cycle_json(const PeriodicCycle& c) {
  return {{"word", c.word},
          {"points", points(c.points)},
          {"multipliers", multipliers_json(c)},
          {"saddle", c.saddle}};
}

ojson portrait_json(const Params& xi, const PortraitOptions& opts) {
  if (auto v = phi_violation(xi)) throw DomainError("portrait requires xi in Phi: violates " + *v);
  ojson j;
  j["params"] = params_json(xi);
  const FixedPoints fp = fixed_points(xi);
  j["fixed_points"] = {{"X", point(fp.X)}, {"Y", point(fp.Y)}};

  const SpecialPoints sp = stage("special_points", [&] { return special_points(xi); });
  j["special_points"] = {{"D", point(sp.D)},   {"U", point(sp.U)},   {"V", point(sp.V)},
                         {"B", point(sp.B)},   {"W", point(sp.W)},   {"T", point(sp.T)},
                         {"Z", sp.Z ? point(*sp.Z) : ojson(nullptr)},
                         {"fV", point(sp.fV)}, {"finvV", point(sp.finvV)}};

  // Omega is a triangle for every xi in Phi; only its invariance needs Phi_BYG.
  const bool byg = in_phi_byg(xi);
  std::optional<TrapRegion> trap;
  if (byg) trap = stage("trapping_region", [&] { return trapping_region(xi); });
  if (trap) {
    j["omega"] = points(trap->omega.vertices);
    j["f_omega"] = points(trap->f_omega.vertices);
  } else {
    j["omega"] = nullptr;
    j["f_omega"] = nullptr;
  }

  ojson manifolds = ojson::array();
  const ManifoldApprox wu = stage("manifold Wu(X)", [&] {
    return grow_manifold(xi, {ManifoldKind::Unstable, ManifoldBase::X, "", ""}, opts.unstable_depth);
  });
  manifolds.push_back(manifold_json("Wu(X)", wu, ""));
  manifolds.push_back(manifold_json("Ws(X)", stage("manifold Ws(X)", [&] {
    return grow_manifold(xi, {ManifoldKind::Stable, ManifoldBase::X, "", ""}, opts.stable_depth);
  }), ""));
  manifolds.push_back(manifold_json("Wu(Y) right", stage("manifold Wu(Y)", [&] {
    return grow_manifold(xi, {ManifoldKind::Unstable, ManifoldBase::Y, "right", ""},
                         opts.unstable_y_depth);
  }), ""));

  ojson cycles = ojson::array();
  if (opts.word) {
    const PeriodicCycle c = stage("cycle " + *opts.word, [&] { return find_cycle(xi, *opts.word); });
    cycles.push_back(cycle_json(c));
    Box box = trap ? trap->omega.bbox() : bounding_box(wu.polyline().vertices);
    box = box.dilated(1e-6 * box.diagonal());
    manifolds.push_back(manifold_json("Ws(" + *opts.word + ")", stage("manifold Ws(cycle)", [&] {
      return grow_manifold(xi, {ManifoldKind::Stable, ManifoldBase::Cycle, "", *opts.word},
                           opts.cycle_depth, {1'000'000, INFINITY, box});
    }), *opts.word));
  }
  j["manifolds"] = std::move(manifolds);

  if (byg) {
    AttractorOptions ao;
    ao.samples = opts.attractor_samples;
    ao.seed = opts.seed;
    const AttractorApprox a = stage("attractor", [&] { return attractor_cloud(xi, ao); });
    j["attractor"] = {{"backend", "orbit"},
                      {"samples", a.cloud.size()},
                      {"cluster_eps", a.cluster_eps},
                      {"n_components", a.n_components},
                      {"n_clipped", a.n_clipped},
                      {"cloud", points(a.cloud)},
                      {"component_labels", a.component_labels}};
  } else {
    j["attractor"] = nullptr;
  }
  j["cycles"] = std::move(cycles);
  return j;
}

void run_portrait(const Params& xi, const PortraitOptions& opts, const std::filesystem::path& out) {
  write_text(out, portrait_json(xi, opts).dump() + "\n");
}

void write_trace_csv(std::ostream& os, const CurveTrace& trace) {
  os << kTraceHeader << '\n';
  for (const CurveSample& s : trace.samples) {
    os << format_real(s.tau_L) << ',' << format_real(s.tau_R_star) << ','
       << (s.tau_R_star ? format_real(s.residual) : std::string()) << ',' << s.iterations << ','
       << trace.depth << '\n';
  }
}

CurveTrace run_ht_trace(const TraceConfig& cfg, const std::filesystem::path& out) {
  const CurveTrace trace =
      trace_ht_curve(cfg.delta_L, cfg.delta_R, cfg.tau_L, cfg.bisect_tol, cfg.depth, cfg.options);
  std::ostringstream os;
  write_trace_csv(os, trace);
  write_text(out, os.str());
  return trace;
}

ojson verify_json(const VerifyReport& report, const VerifyOptions& opts) {
  ojson scope;
  if (opts.point)
    scope = {{"mode", "point"}, {"params", params_json(*opts.point)}};
  else
    scope = {{"mode", "random"}, {"n", opts.n}, {"seed", opts.seed}};
  ojson suites = ojson::array();
  for (const SuiteResult& s : report.suites)
    suites.push_back({{"name", s.name},
                      {"module", s.module},
                      {"samples", s.samples},
                      {"worst_violation", real(s.worst_violation)},
                      {"tolerance", s.tolerance},
                      {"passed", s.passed},
                      {"note", s.note}});
  return {{"scope", scope}, {"all_passed", report.all_passed()}, {"suites", suites}};
}

std::string verify_summary(const VerifyReport& report) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const SuiteResult& s : report.suites) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-12s %-34s n=%-6zu worst=%-10.3g tol=%.1g", s.passed ? "ok" : "FAIL",
                  s.module.c_str(), s.name.c_str(), s.samples, s.worst_violation, s.tolerance);
    os << line;
    if (!s.note.empty() && (!s.passed || s.samples == 0)) os << "  (" << s.note << ")";
    os << '\n';
    if (!s.passed) ++failed;
  }
  os << report.suites.size() - failed << " of " << report.suites.size() << " suites passed\n";
  return os.str();
}

ojson classify_json(const Params& xi, int n_max) {
  const RegionClass rc = classify_region(xi, n_max);
  const SweepRow row = sweep_row(xi, n_max);
  ojson j;
  j["params"] = params_json(xi);
  j["in_phi"] = rc.in_Phi;
  if (auto v = phi_violation(xi)) j["phi_violation"] = *v;
  j["in_phi_byg"] = rc.in_Phi_BYG;
  j["region_code"] = to_string(row.region);
  j["rn_index"] = rc.rn_index ? ojson(*rc.rn_index) : ojson(nullptr);
  const auto opt = [](std::optional<double> v) { return v ? real(*v) : ojson(nullptr); };
  j["phi"] = opt(row.phi);
  j["phi_g"] = opt(row.phi_g);
  j["J1"] = opt(row.J1);
  j["J2"] = opt(row.J2);
  j["sum_stable"] = opt(row.sum_stable);
  j["thm1_applies"] = row.thm1;
  j["thm2_applies"] = row.thm2;
  if (rc.in_Phi) {
    const SliceQuantities q = slice_quantities(xi);
    j["lambda_star"] = q.lambda_star;
    j["tau_L_corner"] = q.tau_L_corner;
    j["m_crit"] = q.m_crit ? real(*q.m_crit) : ojson(nullptr);
  }
  return j;
}

}  // namespace bcnf
