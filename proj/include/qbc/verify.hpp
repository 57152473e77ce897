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

#include <string>
#include <vector>

#include "qbc/experiment.hpp"

namespace qbc {

struct CheckResult {
  std::string id;      // e.g. "attack.sum_beta_zero"
  bool passed = false;
  std::string detail;  // measured quantity vs tolerance
};

// Runs the full invariant suite at the configured sizes: core linear
// algebra, fidelity, attack bound chain and protocol substitution checks.
// Family configs exercise both built-in flavors; custom configs validate
// the supplied matrices first and run the instance-level checks on them.
std::vector<CheckResult> run_verify(const ExperimentConfig& cfg);

std::string verify_to_json(const std::vector<CheckResult>& results,
                           std::uint64_t seed);

}  // namespace qbc
