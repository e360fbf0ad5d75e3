#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the tool through the shell; `args` is appended verbatim.
Run run(const std::string& args) {
  const std::string cmd = std::string(BCNF_CLI) + " " + args;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

const std::string xi_a = "--tau-l 1.5 --delta-l 0.2 --tau-r -2 --delta-r 0.5";

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("classify") {
  const Run r = run("classify " + xi_a);
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["rn_index"] == 0);
  CHECK(j["thm2_applies"] == true);
}

TEST_CASE("config file with a flag override") {
  const auto cfg = temp_file("bcnf_cli_cfg.toml", "tau-l = 1.5\ndelta-l = 0.2\ntau-r = -2\ndelta-r = 0.5\n");
  const Run r = run("classify --config " + cfg.string() + " --tau-r -1.7");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["params"]["tau_L"] == 1.5);
  CHECK(j["params"]["tau_R"] == -1.7);

  const auto bad = temp_file("bcnf_cli_bad.toml", "tau-l = 1.5\nno-such-key = 3\n");
  CHECK(run("classify --config " + bad.string() + " 2>/dev/null").status == 2);
  std::filesystem::remove(cfg);
  std::filesystem::remove(bad);
}

TEST_CASE("usage and domain errors exit 2") {
  CHECK(run("classify --tau-l 1.5 2>/dev/null").status == 2);
  CHECK(run("2>/dev/null").status == 2);
  const Run r = run("portrait --tau-l 1.1 --delta-l 0.2 --tau-r -2 --delta-r 0.5 2>&1 >/dev/null");
  CHECK(r.status == 2);
  CHECK(r.out.find("tau_L > delta_L + 1") != std::string::npos);
  CHECK(run("verify --random 3 --suite no_such_suite 2>/dev/null").status == 2);
}

TEST_CASE("verify exit codes") {
  const Run ok = run("verify --random 5 --suite eigen_identities,u_above_v 2>/dev/null");
  CHECK(ok.status == 0);
  CHECK(nlohmann::json::parse(ok.out)["all_passed"] == true);
  CHECK(run("verify --random 5 --suite eigen_identities --corrupt-tolerance >/dev/null 2>&1").status == 1);
  const Run pt = run("verify --point " + xi_a + " 2>/dev/null");
  CHECK(pt.status == 0);
}

TEST_CASE("sweep output is identical for one and four workers") {
  const std::string grid = " --delta-l 0.2 --delta-r 0.5 --tau-l-steps 17 --tau-r-steps 13";
  const Run a = run("sweep --jobs 1" + grid), b = run("sweep --jobs 4" + grid);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 1 + 17 * 13);
}

TEST_CASE("ht-trace with an empty grid writes only the header") {
  const Run r = run("ht-trace --delta-l 0.2 --delta-r 0.5 --tau-l-grid ''");
  CHECK(r.status == 0);
  CHECK(r.out == "tau_L,tau_R_star,residual,iterations,depth\n");
}

TEST_CASE("cycle") {
  const Run r = run("cycle --tau-l 1.3 --delta-l 0.2 --tau-r -1.7 --delta-r 0.5 --word LRR");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["points"].size() == 3);
  CHECK(j["saddle"] == true);
}

TEST_CASE("output to a file") {
  const auto path = std::filesystem::temp_directory_path() / "bcnf_cli_out.json";
  CHECK(run("classify " + xi_a + " --out " + path.string()).status == 0);
  std::ifstream f(path);
  CHECK(nlohmann::json::parse(f)["in_phi"] == true);
  std::filesystem::remove(path);
}
