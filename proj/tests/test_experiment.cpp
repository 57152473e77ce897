// Copyright 2026 The qbclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "qbc/errors.hpp"
#include "qbc/experiment.hpp"
#include "qbc/verify.hpp"

using namespace qbc;

namespace {

const char* kRevealingConfig = R"({
  "protocol": {
    "family": "custom",
    "custom": {
      "d_A": 1, "d_B": 2, "N": 1,
      "phi0": [[1,0],[0,0]],
      "phi1": [[0,0],[1,0]],
      "actions": [
        [[[1,0],[0,0]],[[0,0],[1,0]]],
        [[[1,0],[0,0]],[[0,0],[-1,0]]]
      ]
    }
  },
  "seed": 7
})";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

#ifdef QBC_CLI_PATH
int run_cli(const std::string& args) {
  const std::string cmd = std::string(QBC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("config defaults are applied when fields are omitted") {
  ExperimentConfig cfg = parse_config("{}");
  CHECK(cfg.protocol.flavor == Flavor::Near);
  CHECK(cfg.protocol.N == 6);
  CHECK(cfg.protocol.m == 3);
  CHECK(cfg.protocol.d == 2);
  CHECK(cfg.omega_samples == 20);
  CHECK(cfg.seed == 12345);
  CHECK(!cfg.sweep);
  CHECK(!cfg.output);
}

TEST_CASE("config parsing rejects malformed documents with diagnostics") {
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1,2,3]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"protocol": {"family": "bogus"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"omega_samples": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seed": -3})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"protocol": {"N": 99}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"protocol": {"d": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"N_min": 5, "N_max": 2}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"output": {"path": "x", "format": "xml"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"bob_sub": {"p": [1.0]}})"), ConfigError);
}

TEST_CASE("custom protocols must satisfy the type invariants on load") {
  // phi0 is not normalized
  CHECK_THROWS_AS(
      run_attack(parse_config(R"({
        "protocol": {"family": "custom", "custom": {
          "d_A": 1, "d_B": 2, "N": 1,
          "phi0": [[2,0],[0,0]], "phi1": [[0,0],[1,0]],
          "actions": [[[[1,0],[0,0]],[[0,0],[1,0]]]]
        }}})")),
      ConfigError);
}

TEST_CASE("conceal on the perfect family reports vanishing deficits") {
  ExperimentConfig cfg = parse_config(
      R"({"protocol": {"family": "perfect", "N": 3, "m": 2, "d": 2}})");
  ConcealReport rep = run_conceal(cfg);
  CHECK(rep.rows.size() == 2u + 20u);  // extremes plus samples
  CHECK(rep.max_deficit <= 1e-10);
}

TEST_CASE("conceal on the near family stays within the 2^-N budget") {
  ExperimentConfig cfg = parse_config(
      R"({"protocol": {"family": "near", "N": 4, "m": 2, "d": 2}})");
  CHECK(run_conceal(cfg).max_deficit <= 0.0625);
}

TEST_CASE("conceal reports the revealing toy without failing") {
  ConcealReport rep = run_conceal(parse_config(kRevealingConfig));
  CHECK(std::abs(rep.max_deficit - 1.0) < 1e-10);
}

TEST_CASE("attack on the perfect family succeeds with certainty") {
  ExperimentConfig cfg = parse_config(
      R"({"protocol": {"family": "perfect", "N": 3, "m": 3, "d": 2}})");
  ReportRow row = run_attack(cfg);
  CHECK(row.min_success >= 1.0 - 1e-9);
  CHECK(row.all_bounds_hold);
  CHECK(row.delta_prime <= 1e-12);
}

TEST_CASE("attack on the near family holds the margin at 50 samples") {
  ExperimentConfig cfg = parse_config(
      R"({"protocol": {"family": "near", "N": 6, "m": 3, "d": 2},
          "omega_samples": 50})");
  ReportRow row = run_attack(cfg);
  CHECK(row.all_bounds_hold);
  CHECK(row.margin >= 0.0);
  CHECK(row.bound == 1.0 - 2.0 * row.c_estimate * row.delta_prime);
}

TEST_CASE("attack rows are deterministic for a fixed seed") {
  ExperimentConfig cfg = parse_config(R"({"seed": 99})");
  ReportRow a = run_attack(cfg);
  ReportRow b = run_attack(cfg);
  CHECK(to_csv({a}, cfg.seed) == to_csv({b}, cfg.seed));
  CHECK(to_json({a}, cfg.seed) == to_json({b}, cfg.seed));
}

TEST_CASE("the revealing toy produces an exact golden CSV") {
  ExperimentConfig cfg = parse_config(kRevealingConfig);
  ReportRow row = run_attack(cfg);
  const std::string expected =
      "# seed=7\n"
      "N,m,d,delta_prime,c_estimate,min_success,mean_success,bound,margin,"
      "all_bounds_hold\n"
      "1,2,1,1,1,0,0,-1,1,true\n";
  CHECK(to_csv({row}, cfg.seed) == expected);
}

TEST_CASE("sweep produces one monotone row per security parameter") {
  ExperimentConfig cfg = parse_config(
      R"({"protocol": {"family": "near", "N": 2, "m": 2, "d": 2},
          "sweep": {"N_min": 2, "N_max": 8}})");
  std::vector<ReportRow> rows = run_sweep(cfg);
  REQUIRE(rows.size() == 7);
  CHECK(rows.back().delta_prime < rows.front().delta_prime);
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].delta_prime <= rows[i - 1].delta_prime + 1e-9);
    CHECK(rows[i].min_success + 1e-9 >= rows[i - 1].min_success);
  }
  for (const ReportRow& r : rows) CHECK(r.all_bounds_hold);
}

TEST_CASE("sweep on the perfect family gives all-zero deficits") {
  ExperimentConfig cfg = parse_config(
      R"({"protocol": {"family": "perfect"},
          "sweep": {"N_min": 2, "N_max": 4}})");
  for (const ReportRow& r : run_sweep(cfg)) {
    CHECK(r.delta_prime <= 1e-12);
    CHECK(r.min_success >= 1.0 - 1e-9);
  }
}

TEST_CASE("sweep without a sweep block is a config error") {
  CHECK_THROWS_AS(run_sweep(parse_config("{}")), ConfigError);
}

TEST_CASE("bob-sub matches complementary point masses to the uniform target") {
  ExperimentConfig cfg = parse_config(
      R"({"protocol": {"family": "near", "N": 4, "m": 2, "d": 2},
          "bob_sub": {"omegas": [[1,0],[0,1]], "p": [0.5,0.5],
                      "omega0": [0.5,0.5]}})");
  BobSubReport rep = run_bob_sub(cfg);
  CHECK(rep.matched);
  CHECK(rep.trace_distance_b0 <= 1e-10);
  CHECK(rep.trace_distance_b1 <= 1e-10);
  CHECK(rep.collapse_prob_error <= 1e-10);
  CHECK(rep.collapse_state_error <= 1e-10);
  CHECK(rep.all_bounds_hold);
}

TEST_CASE("bob-sub flags a mismatched target distribution") {
  ExperimentConfig cfg = parse_config(
      R"({"protocol": {"family": "near", "N": 4, "m": 2, "d": 2},
          "bob_sub": {"omegas": [[1,0],[0,1]], "p": [0.5,0.5],
                      "omega0": [0.9,0.1]}})");
  BobSubReport rep = run_bob_sub(cfg);
  CHECK(!rep.matched);
  CHECK(rep.trace_distance_b0 > 1e-3);
  CHECK(!rep.all_bounds_hold);
}

TEST_CASE("bob-sub with one distribution degenerates to honest behavior") {
  ExperimentConfig cfg = parse_config(
      R"({"protocol": {"family": "near", "N": 4, "m": 2, "d": 2},
          "bob_sub": {"omegas": [[0.3,0.7]], "p": [1.0]}})");
  BobSubReport rep = run_bob_sub(cfg);
  CHECK(rep.n == 1);
  CHECK(rep.matched);
  CHECK(rep.trace_distance_b0 <= 1e-10);
  CHECK(rep.all_bounds_hold);
}

TEST_CASE("12-significant-digit formatting uses plain decimal points") {
  CHECK(format_sig12(1.0) == "1");
  CHECK(format_sig12(0.5) == "0.5");
  CHECK(format_sig12(-1.0) == "-1");
  CHECK(format_sig12(0.0317541634481457) == "0.0317541634481");
  CHECK(format_sig12(1.49029802943e-08) == "1.49029802943e-08");
}

TEST_CASE("verify passes on the default config and reports every module") {
  std::vector<CheckResult> results = run_verify(parse_config("{}"));
  bool all = true;
  bool saw_hilbert = false, saw_fidelity = false, saw_attack = false,
       saw_protocol = false;
  for (const CheckResult& r : results) {
    all = all && r.passed;
    saw_hilbert = saw_hilbert || r.id.rfind("hilbert.", 0) == 0;
    saw_fidelity = saw_fidelity || r.id.rfind("fidelity.", 0) == 0;
    saw_attack = saw_attack || r.id.rfind("attack.", 0) == 0;
    saw_protocol = saw_protocol || r.id.rfind("protocol.", 0) == 0;
  }
  CHECK(all);
  CHECK(saw_hilbert);
  CHECK(saw_fidelity);
  CHECK(saw_attack);
  CHECK(saw_protocol);
  // both built-in flavors are exercised
  int family_checks = 0;
  for (const CheckResult& r : results)
    if (r.id == "protocol.family_deficit_guarantee") ++family_checks;
  CHECK(family_checks == 2);
}

TEST_CASE("verify names the unitarity invariant on an injected fault") {
  const char* faulty = R"({
    "protocol": {"family": "custom", "custom": {
      "d_A": 1, "d_B": 2, "N": 1,
      "phi0": [[1,0],[0,0]], "phi1": [[0,0],[1,0]],
      "actions": [[[[1,0],[0,0]],[[0,0],[0.5,0]]]]
    }}})";
  std::vector<CheckResult> results = run_verify(parse_config(faulty));
  bool found_failure = false;
  for (const CheckResult& r : results)
    if (r.id == "protocol.actions_unitary") found_failure = !r.passed;
  CHECK(found_failure);
}

#ifdef QBC_CLI_PATH

TEST_CASE("cli: defaults succeed and config errors exit with 2") {
  CHECK(run_cli("attack") == 0);
  CHECK(run_cli("conceal") == 0);
  CHECK(run_cli("attack --config /no/such/file.json") == 2);
  CHECK(run_cli("attack --bogus-flag") == 2);
  CHECK(run_cli("") == 2);  // a subcommand is required
}

TEST_CASE("cli: attack outputs are byte-identical across runs") {
  const std::string o1 = "/tmp/qbc_test_run1.csv", o2 = "/tmp/qbc_test_run2.csv";
  REQUIRE(run_cli("attack --seed 2024 --out " + o1) == 0);
  REQUIRE(run_cli("attack --seed 2024 --out " + o2) == 0);
  const std::string c1 = slurp(o1), c2 = slurp(o2);
  CHECK(!c1.empty());
  CHECK(c1 == c2);
  CHECK(c1.rfind("# seed=2024\n", 0) == 0);
  std::remove(o1.c_str());
  std::remove(o2.c_str());
}

TEST_CASE("cli: verify exits 1 on an injected non-unitary action") {
  const std::string cfg_path = "/tmp/qbc_test_fault.json";
  std::ofstream(cfg_path) << R"({
    "protocol": {"family": "custom", "custom": {
      "d_A": 1, "d_B": 2, "N": 1,
      "phi0": [[1,0],[0,0]], "phi1": [[0,0],[1,0]],
      "actions": [[[[1,0],[0,0]],[[0,0],[0.5,0]]]]
    }}})";
  CHECK(run_cli("verify --config " + cfg_path) == 1);
  CHECK(run_cli("attack --config " + cfg_path) == 2);
  std::remove(cfg_path.c_str());
}

TEST_CASE("cli: mismatched bob-sub target exits 1") {
  const std::string cfg_path = "/tmp/qbc_test_mismatch.json";
  std::ofstream(cfg_path) << R"({
    "protocol": {"family": "near", "N": 4, "m": 2, "d": 2},
    "bob_sub": {"omegas": [[1,0],[0,1]], "p": [0.5,0.5], "omega0": [0.9,0.1]}
  })";
  CHECK(run_cli("bob-sub --config " + cfg_path) == 1);
  std::remove(cfg_path.c_str());
}

#endif  // QBC_CLI_PATH
