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
#include <random>
#include <vector>

#include "qbc/hilbert.hpp"

namespace qbc {

// Deterministic stream derivation (splitmix64 step). Used to give each
// sweep row its own stream so results never depend on evaluation order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Seedable source for every randomized quantity in the project. The engine
// is mt19937_64 (bit-exact across platforms by the standard); all derived
// transforms below are written against its raw 64-bit output only, so a
// given seed reproduces every draw byte-for-byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform();
  // Standard normal via Box-Muller (two uniforms per draw, no cached spare).
  double gaussian();
  // Standard complex normal, E|z|^2 = 1.
  Complex complex_gaussian();
  // Uniform integer in [0, n).
  int index(int n);

  // Uniform point on the probability simplex (normalized exponentials).
  std::vector<double> simplex(int m);

  // Haar-random pure state amplitudes of the given dimension.
  CVec state(int dim);
  // Haar-random unitary (complex Gaussian matrix + phase-fixed QR).
  CMat unitary(int dim);
  // Full-rank random density matrix G G^dagger / tr.
  CMat density(int dim);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace qbc
