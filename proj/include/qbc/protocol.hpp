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

#include <utility>
#include <vector>

#include "qbc/hilbert.hpp"

namespace qbc {

// Probability weights over Bob's m possible actions. Entries must be
// nonnegative (within tol::norm) and sum to one (within tol::norm).
class Distribution {
 public:
  explicit Distribution(std::vector<double> weights);

  static Distribution uniform(int m);
  static Distribution point_mass(int m, int j);

  int size() const { return static_cast<int>(w_.size()); }
  double at(int j) const;
  const std::vector<double>& weights() const { return w_; }

 private:
  std::vector<double> w_;
};

enum class Flavor { Perfect, Near, Custom };

// A two-sided commitment instance: Alice-Bob resource states phi0/phi1 on
// registers A (dim d_A) and B (dim d_B), plus Bob's m candidate actions on
// B. Bob picks action j with a probability he keeps secret; the security
// parameter N labels family members.
class ProtocolInstance {
 public:
  ProtocolInstance(int d_A, int d_B, CVec phi0, CVec phi1,
                   std::vector<CMat> actions, int N, Flavor flavor);

  int d_A() const { return d_A_; }
  int d_B() const { return d_B_; }
  int m() const { return static_cast<int>(actions_.size()); }
  int N() const { return N_; }
  Flavor flavor() const { return flavor_; }

  const JointPureState& phi(int b) const;
  const Operator& action(int j) const;

 private:
  int d_A_, d_B_, N_;
  Flavor flavor_;
  std::vector<JointPureState> phis_;
  std::vector<Operator> actions_;
};

// Built-in families on d x d registers (2 <= d <= 16):
//  - Perfect: phi_b = (shift^b x I)|max entangled>; Bob's visible state is
//    independent of both the bit and his action mix, so concealment is exact.
//  - Near: phi_b = sqrt(1-eps)|max entangled> + sqrt(eps)|product_b| with
//    eps = 2^-N and orthogonal product perturbations carrying distinct
//    B-side marginals, so concealment is off by at most eps.
// Actions in both are m distinct diagonal phase rotations.
ProtocolInstance make_family(Flavor flavor, int N, int m, int d);

// Cyclic shift |i> -> |i+1 mod d>; the bit-encoding unitary of the perfect
// family.
CMat cyclic_shift(int d);

// Bob's honest state when his action follows omega0: the omega0-weighted
// superposition of acted states, each tagged by an orthonormal ancilla
// slot. Registers A, B, xi; identical content to committed_state.
JointPureState appendix_state(const ProtocolInstance& p,
                              const Distribution& omega0, int b);

// A two-level purification: Bob superposes n committed states, one per
// candidate distribution omega_k, tagged by a second ancilla chi.
struct MetaPurification {
  ProtocolInstance base;
  std::vector<Distribution> omegas;
  Distribution p_k;
  JointPureState state0;  // registers A, B, xi, chi
  JointPureState state1;
};

MetaPurification meta_purify(const ProtocolInstance& p,
                             std::vector<Distribution> omegas,
                             Distribution p_k);

// Marginal action distribution sum_k p_k * omega_k.
Distribution effective_distribution(const std::vector<Distribution>& omegas,
                                    const Distribution& p_k);

// Projective measurement of chi in its basis: returns the branch weight and
// the renormalized post-measurement state (registers A, B, xi). Selecting a
// zero-weight branch is an error.
std::pair<double, JointPureState> collapse_ancilla(const MetaPurification& mp,
                                                   int b, int k);

// Reduced state on all non-BobAncilla registers. Bob never surrenders his
// ancillas, so this is the most any check by Alice can probe.
DensityOperator alice_visible(const JointPureState& s);

}  // namespace qbc
