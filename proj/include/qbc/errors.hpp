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

#include <stdexcept>
#include <string>

namespace qbc {

// Structural misuse: unknown/duplicate registers, shape mismatches,
// out-of-range indices. Caller bug, not a numerical condition.
class LayoutError : public std::invalid_argument {
 public:
  explicit LayoutError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical contract failed: state not normalized, matrix not PSD,
// an identity that must hold broke beyond tolerance.
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

// Bad experiment configuration (missing file, malformed document,
// out-of-range parameter). Maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qbc
