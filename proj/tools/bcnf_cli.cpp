// Command-line front end: classify, sweep, portrait, ht-trace, verify, cycle.
//
// Every option lives on the root app and subcommands fall through to it, so a
// config file can set any of them with plain `key = value` lines.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bcnf/bifurcation.hpp"
#include "bcnf/cycles.hpp"
#include "bcnf/errors.hpp"
#include "bcnf/io.hpp"
#include "bcnf/verify.hpp"

namespace {

struct Args {
  std::optional<double> tau_L, delta_L, tau_R, delta_R;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  std::string out = "-";

  bcnf::SliceConfig slice;
  std::string tau_L_grid;

  bcnf::PortraitOptions portrait;
  std::string word = "LRR";

  double tol = 1e-5;
  int depth = 25;
  int scan_steps = 48;

  bool point = false;
  std::size_t random_n = 1000;
  std::vector<std::string> suites;
  bool corrupt_tolerance = false;
};

bcnf::Params require_params(const Args& a) {
  if (!a.tau_L || !a.delta_L || !a.tau_R || !a.delta_R)
    throw CLI::ValidationError("parameters", "--tau-l, --delta-l, --tau-r and --delta-r are all required");
  return {*a.tau_L, *a.delta_L, *a.tau_R, *a.delta_R};
}

// "" is an empty grid.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    double v = 0.0;
    if (!CLI::detail::lexical_cast(item, v))
      throw CLI::ValidationError("--tau-l-grid", "not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Border-collision normal form laboratory"};
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "Read options from a key = value file; flags override it");
  Args a;

  app.add_option("--tau-l", a.tau_L, "tau_L");
  app.add_option("--delta-l", a.delta_L, "delta_L");
  app.add_option("--tau-r", a.tau_R, "tau_R");
  app.add_option("--delta-r", a.delta_R, "delta_R");
  app.add_option("--seed", a.seed, "RNG seed for all sampling")->capture_default_str();
  app.add_option("--jobs", a.jobs, "Worker threads; 0 uses every core")->capture_default_str();
  app.add_option("--out", a.out, "Output path, - for stdout")->capture_default_str();

  const std::string grid = "Slice grid";
  app.add_option("--tau-l-min", a.slice.tau_L.min)->group(grid)->capture_default_str();
  app.add_option("--tau-l-max", a.slice.tau_L.max)->group(grid)->capture_default_str();
  app.add_option("--tau-l-steps", a.slice.tau_L.steps)->group(grid)->capture_default_str();
  app.add_option("--tau-r-min", a.slice.tau_R.min)->group(grid)->capture_default_str();
  app.add_option("--tau-r-max", a.slice.tau_R.max)->group(grid)->capture_default_str();
  app.add_option("--tau-r-steps", a.slice.tau_R.steps)->group(grid)->capture_default_str();
  app.add_option("--n-max", a.slice.n_max, "Largest renormalisation depth for R_n")
      ->group(grid)
      ->capture_default_str();
  app.add_option("--tau-l-grid", a.tau_L_grid, "Explicit comma-separated tau_L values for ht-trace; empty for none")
      ->group(grid);

  const std::string por = "Portrait";
  app.add_option("--word", a.word, "Cycle itinerary")->group(por)->capture_default_str();
  auto* portrait_word = app.add_flag("--with-cycle", "Add the cycle --word and its stable manifold to a portrait")
                            ->group(por);
  app.add_option("--unstable-depth", a.portrait.unstable_depth)->group(por)->capture_default_str();
  app.add_option("--stable-depth", a.portrait.stable_depth)->group(por)->capture_default_str();
  app.add_option("--cycle-depth", a.portrait.cycle_depth)->group(por)->capture_default_str();
  app.add_option("--samples", a.portrait.attractor_samples, "Attractor samples")
      ->group(por)
      ->capture_default_str();

  const std::string ht = "HT trace";
  app.add_option("--tol", a.tol, "Bisection tolerance in tau_R")->group(ht)->capture_default_str();
  app.add_option("--depth", a.depth, "Growth depth of W^u(X)")->group(ht)->capture_default_str();
  app.add_option("--scan-steps", a.scan_steps, "Coarse scan samples before bisection")
      ->group(ht)
      ->capture_default_str();

  const std::string ver = "Verify";
  app.add_flag("--point", a.point, "Run every suite at the given parameters")->group(ver);
  app.add_option("--random", a.random_n, "Samples per suite")->group(ver)->capture_default_str();
  app.add_option("--suite", a.suites, "Only run these suites")->group(ver)->delimiter(',');
  app.add_flag("--corrupt-tolerance", a.corrupt_tolerance)->group("");

  auto* classify = app.add_subcommand("classify", "Region and chaos indices of one point (JSON)");
  auto* sweep = app.add_subcommand("sweep", "Classify a tau_L x tau_R grid (CSV)");
  auto* portrait = app.add_subcommand("portrait", "Phase-portrait bundle of one point (JSON)");
  auto* trace = app.add_subcommand("ht-trace", "Trace the HT curve over a tau_L grid (CSV)");
  auto* verify = app.add_subcommand("verify", "Run the property suites; exit 1 if any fails");
  auto* cycle = app.add_subcommand("cycle", "Periodic cycle of the itinerary --word (JSON)");
  for (CLI::App* s : {classify, sweep, portrait, trace, verify, cycle}) s->fallthrough();

  try {
    app.parse(argc, argv);
    if (*classify) {
      bcnf::write_text(a.out, bcnf::classify_json(require_params(a), a.slice.n_max).dump(2) + "\n");
    } else if (*sweep) {
      if (!a.delta_L || !a.delta_R)
        throw CLI::ValidationError("slice", "--delta-l and --delta-r are required");
      a.slice.delta_L = *a.delta_L;
      a.slice.delta_R = *a.delta_R;
      a.slice.jobs = a.jobs;
      bcnf::run_sweep(a.slice, a.out);
    } else if (*portrait) {
      a.portrait.seed = a.seed;
      if (*portrait_word) a.portrait.word = a.word;
      bcnf::run_portrait(require_params(a), a.portrait, a.out);
    } else if (*trace) {
      if (!a.delta_L || !a.delta_R)
        throw CLI::ValidationError("slice", "--delta-l and --delta-r are required");
      bcnf::TraceConfig cfg;
      cfg.delta_L = *a.delta_L;
      cfg.delta_R = *a.delta_R;
      if (app.count("--tau-l-grid") > 0) {
        cfg.tau_L = parse_grid(a.tau_L_grid);
      } else if (a.slice.tau_L.steps > 0) {
        cfg.tau_L = a.slice.tau_L.centres();
      }
      cfg.bisect_tol = a.tol;
      cfg.depth = a.depth;
      cfg.options.scan_steps = a.scan_steps;
      cfg.options.jobs = a.jobs;
      cfg.options.ht.word = a.word;
      bcnf::run_ht_trace(cfg, a.out);
    } else if (*verify) {
      bcnf::VerifyOptions opts;
      if (a.point) opts.point = require_params(a);
      opts.n = a.random_n;
      opts.seed = a.seed;
      opts.only = a.suites;
      opts.corrupt_tolerance = a.corrupt_tolerance;
      for (const std::string& s : opts.only) {
        const auto names = bcnf::verify_suite_names();
        if (std::find(names.begin(), names.end(), s) == names.end())
          throw CLI::ValidationError("--suite", "unknown suite '" + s + "'");
      }
      const bcnf::VerifyReport report = bcnf::run_verify_suites(opts);
      // The summary goes to stderr when the JSON report takes stdout.
      (a.out == "-" ? std::cerr : std::cout) << bcnf::verify_summary(report);
      bcnf::write_text(a.out, bcnf::verify_json(report, opts).dump(2) + "\n");
      return report.all_passed() ? 0 : 1;
    } else if (*cycle) {
      bcnf::write_text(a.out, bcnf::cycle_json(bcnf::find_cycle(require_params(a), a.word)).dump(2) + "\n");
    }
  } catch (const CLI::Error& e) {
    // --help exits 0; every usage error exits 2 like a library error.
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
