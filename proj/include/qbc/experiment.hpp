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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbc/attack.hpp"
#include "qbc/protocol.hpp"
#include "qbc/random.hpp"

namespace qbc {

enum class OutputFormat { Csv, Json };

struct OutputSpec {
  std::string path;
  OutputFormat format = OutputFormat::Csv;
};

struct CustomProtocolSpec {
  int d_A = 1;
  int d_B = 2;
  int N = 1;
  CVec phi0, phi1;            // length d_A * d_B, register-major (A slow)
  std::vector<CMat> actions;  // m matrices, d_B x d_B, row-major in config
};

struct ProtocolSpec {
  Flavor flavor = Flavor::Near;
  int N = 6, m = 3, d = 2;
  std::optional<CustomProtocolSpec> custom;
};

struct SweepSpec {
  int n_min = 2;
  int n_max = 8;
};

struct BobSubSpec {
  std::vector<std::vector<double>> omegas;  // n candidate distributions
  std::vector<double> p;                    // weights over the candidates
  std::optional<std::vector<double>> omega0;  // target; default = effective
};

struct ExperimentConfig {
  ProtocolSpec protocol;
  int omega_samples = 20;
  std::uint64_t seed = 12345;
  std::optional<SweepSpec> sweep;
  std::optional<OutputSpec> output;
  std::optional<BobSubSpec> bob_sub;
};

// Parses the JSON config document; complex scalars are [re, im] pairs,
// matrices row-major nested arrays. Throws ConfigError on anything
// malformed. load_config reads and parses a file.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Instantiates the configured protocol. Custom matrices are put through the
// full type invariants here (normalization, unitarity).
ProtocolInstance build_protocol(const ProtocolSpec& spec);

// One line of attack output; the CSV schema is fixed:
// N,m,d,delta_prime,c_estimate,min_success,mean_success,bound,margin,all_bounds_hold
struct ReportRow {
  int N = 0, m = 0, d = 0;
  double delta_prime = 0, c_estimate = 0;
  double min_success = 0, mean_success = 0;
  double bound = 0, margin = 0;
  bool all_bounds_hold = false;
};

struct ConcealRow {
  std::string kind;  // "extreme" or "random"
  int index = 0;
  double deficit = 0;
};

struct ConcealReport {
  std::vector<ConcealRow> rows;
  double max_deficit = 0;
};

struct BobSubReport {
  int n = 0, m = 0;
  std::vector<double> effective;
  std::vector<double> omega0;
  bool matched = false;
  double trace_distance_b0 = 0, trace_distance_b1 = 0;
  double collapse_prob_error = 0, collapse_state_error = 0;
  bool all_bounds_hold = false;
};

// Command cores. Each derives every random draw from cfg.seed, so repeated
// runs with one config are bit-identical.
ConcealReport run_conceal(const ExperimentConfig& cfg);
ReportRow run_attack(const ExperimentConfig& cfg);
std::vector<ReportRow> run_sweep(const ExperimentConfig& cfg);
BobSubReport run_bob_sub(const ExperimentConfig& cfg);

// Evaluates one protocol instance: universal cheat, branch decomposition,
// success at all extreme points plus omega_samples random mixes.
ReportRow attack_row(const ProtocolInstance& p, int n_label, int d_label,
                     int omega_samples, Rng& rng);

// Serialization. CSV starts with a "# seed=<u64>" comment line followed by
// the fixed header row; numbers carry 12 significant digits with '.' as the
// decimal separator. JSON mirrors the field names and includes the seed.
std::string to_csv(const std::vector<ReportRow>& rows, std::uint64_t seed);
std::string to_json(const std::vector<ReportRow>& rows, std::uint64_t seed);
std::string to_csv(const ConcealReport& report, std::uint64_t seed);
std::string to_json(const ConcealReport& report, std::uint64_t seed);
std::string to_csv(const BobSubReport& report, std::uint64_t seed);
std::string to_json(const BobSubReport& report, std::uint64_t seed);

// Writes via a temp file + rename so readers never observe partial output.
void atomic_write_file(const std::string& path, const std::string& content);

// 12-significant-digit formatting used by the CSV writers.
std::string format_sig12(double x);

}  // namespace qbc
