#pragma once

// Randomised property suites over the whole library. Each suite reduces its
// checks to a nonnegative violation per sample and passes when the worst
// violation stays within the suite's tolerance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcnf/core.hpp"

namespace bcnf {

struct SuiteResult {
  std::string name;
  std::string module;
  std::size_t samples = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::string note;  // why a suite drew no samples, or what failed first
};

struct VerifyOptions {
  std::optional<Params> point;  // run every suite at this one point instead of sampling
  std::size_t n = 1000;         // samples per suite when sampling
  std::uint64_t seed = 0;
  bool corrupt_tolerance = false;  // harness self-test: every tolerance becomes negative
  std::vector<std::string> only;   // suite names to run; empty runs all
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool all_passed() const;
};

VerifyReport run_verify_suites(const VerifyOptions& opts = {});

/// Names of all suites in run order.
std::vector<std::string> verify_suite_names();

}  // namespace bcnf
