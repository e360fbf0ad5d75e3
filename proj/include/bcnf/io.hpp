#pragma once

// File formats and the batch drivers behind the command-line tool: slice
// sweeps (CSV), phase portraits (JSON), HT traces (CSV) and verify reports.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bcnf/bifurcation.hpp"
#include "bcnf/core.hpp"
#include "bcnf/cycles.hpp"
#include "bcnf/param_space.hpp"
#include "bcnf/verify.hpp"

namespace bcnf {

/// `steps` cells over [min, max]; samples sit at cell centres.
struct GridRange {
  double min = 0.0;
  double max = 1.0;
  int steps = 1;

  std::vector<double> centres() const;
};

struct SliceConfig {
  double delta_L = 0.2;
  double delta_R = 0.5;
  GridRange tau_L{1.0, 3.0, 200};
  GridRange tau_R{-4.0, -1.0, 200};
  int n_max = kDefaultRnMax;
  unsigned jobs = 0;  // 0: all cores

  /// Throws std::invalid_argument on nonpositive steps or unordered ranges.
  void validate() const;
};

enum class RegionCode { OutsidePhi, PhiMinusByg, Byg };

const char* to_string(RegionCode c);

struct SweepRow {
  double tau_L = 0.0;
  double tau_R = 0.0;
  RegionCode region = RegionCode::OutsidePhi;
  std::optional<int> rn_index;
  std::optional<double> phi, phi_g, J1, J2, sum_stable;  // unset outside Phi
  bool thm1 = false;
  bool thm2 = false;
};

inline constexpr const char* kSweepHeader =
    "tau_L,tau_R,region_code,rn_index,phi,phi_g,J1,J2,sum_stable,thm1,thm2";
inline constexpr const char* kTraceHeader = "tau_L,tau_R_star,residual,iterations,depth";

SweepRow sweep_row(const Params& xi, int n_max = kDefaultRnMax);

/// Rows in row-major order, tau_L outer.
std::vector<SweepRow> sweep_rows(const SliceConfig& cfg);

/// "%.17g", or empty for an unset value.
std::string format_real(std::optional<double> v);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void run_sweep(const SliceConfig& cfg, const std::filesystem::path& out);

struct PortraitOptions {
  int unstable_depth = 12;
  int stable_depth = 8;
  int unstable_y_depth = 6;
  std::optional<std::string> word;  // include this cycle and its stable manifold
  int cycle_depth = 8;
  std::size_t attractor_samples = 20000;
  std::uint64_t seed = 0;
};

/// Requires xi in Phi (DomainError naming the violated inequality). Errors
/// from later stages come back as StageError. The attractor is null
/// outside Phi_BYG, where it is not defined.
nlohmann::ordered_json portrait_json(const Params& xi, const PortraitOptions& opts = {});
void run_portrait(const Params& xi, const PortraitOptions& opts, const std::filesystem::path& out);

struct TraceConfig {
  double delta_L = 0.2;
  double delta_R = 0.5;
  std::vector<double> tau_L;
  double bisect_tol = 1e-5;
  int depth = 25;
  TraceOptions options;
};

void write_trace_csv(std::ostream& os, const CurveTrace& trace);
CurveTrace run_ht_trace(const TraceConfig& cfg, const std::filesystem::path& out);

nlohmann::ordered_json verify_json(const VerifyReport& report, const VerifyOptions& opts);
std::string verify_summary(const VerifyReport& report);

nlohmann::ordered_json classify_json(const Params& xi, int n_max = kDefaultRnMax);
nlohmann::ordered_json cycle_json(const PeriodicCycle& c);

/// Writes `text` to `path`, or to stdout when path is "-". Throws
/// std::runtime_error mentioning the path on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bcnf
