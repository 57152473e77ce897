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

#include "qbc/fidelity.hpp"
#include "qbc/protocol.hpp"

namespace qbc {

// The point-mass distributions: every omega is a mixture of these, and the
// distribution-independent attack is built from them alone.
struct ExtremeSet {
  int m = 0;
  std::vector<Distribution> members;

  static ExtremeSet of(int m);
};

// Per-branch decomposition of an Alice cheat unitary against the extreme
// points, plus the derived bound data. Overlaps follow the phase-absorbed
// convention: the uniform-purification overlap is made real nonnegative,
// and each branch overlap is reported as (1 - alpha_j) + i*beta_j.
struct CheatReport {
  double delta_prime = 0.0;     // uniform-purification deficit
  std::vector<double> alphas;   // one per extreme point, all >= 0
  std::vector<double> betas;    // imaginary parts, sum to 0
  double c_estimate = 0.0;      // max_j alpha_j / delta_prime (0 if delta'~0)
  double alpha_bar = 0.0;       // omega-weighted mean alpha (set by caller)
  double beta_bar = 0.0;        // omega-weighted mean beta (set by caller)
  double success = 0.0;         // cheat success at a specific omega
  double bound = 1.0;           // 1 - 2 * c_estimate * delta_prime
  double margin = 0.0;          // success - bound
};

// Bob's full post-commit state when his action mix is omega: the
// omega-weighted superposition of acted resource states, each branch tagged
// by an orthonormal ancilla slot. Registers A (Alice), B (Bob),
// xi (Bob ancilla, dim m).
JointPureState committed_state(const ProtocolInstance& p, int b,
                               const Distribution& omega);

// How far the two committed states' Bob-visible reductions (B plus xi) are
// from indistinguishable at this omega: fidelity and its deficit.
FidelityResult concealment_deficit(const ProtocolInstance& p,
                                   const Distribution& omega);

// Alice's best bit-flip rotation when omega is known: maximizes the overlap
// between the two committed states over unitaries on A. overlap = fidelity
// of Bob's reductions = 1 - deficit(omega).
struct OptimalCheat {
  Operator u_alice;
  double overlap = 0.0;
};
OptimalCheat optimal_cheat(const ProtocolInstance& p, const Distribution& omega);

// Alice's omega-independent rotation: the maximizer for the uniform
// superposition of extreme-point committed states. delta_prime is that
// superposition's overlap deficit; the same unitary then beats
// 1 - 2*c*delta_prime at every omega.
struct UniversalCheat {
  Operator u_alice;
  double delta_prime = 0.0;
};
UniversalCheat universal_cheat(const ProtocolInstance& p);

// Splits u_alice's action across the extreme points. Checks the internal
// identities delta' = mean(alpha) and sum(beta) = 0 (within 1e-9) by
// computing the uniform overlap through an independent route, and fills
// c_estimate and bound.
CheatReport alpha_beta_decomposition(const ProtocolInstance& p,
                                     const Operator& u_alice);

// |<committed(1, omega)| (U x I) |committed(0, omega)>|^2.
double cheat_success(const ProtocolInstance& p, const Distribution& omega,
                     const Operator& u_alice);

// Same quantity for externally supplied state pairs (e.g. meta-purified
// states); layouts must match and u_alice must act on Alice registers.
double cheat_success_between(const JointPureState& s1, const JointPureState& s0,
                             const Operator& u_alice);
Complex cheat_overlap_between(const JointPureState& s1, const JointPureState& s0,
                              const Operator& u_alice);

// omega-weighted (alpha_bar, beta_bar). Enforces alpha_bar <= c * delta'
// and the unit-overlap consequence (alpha_bar^2 + beta_bar^2)/2 <= alpha_bar
// (both within 1e-9).
std::pair<double, double> weighted_moments(const CheatReport& report,
                                           const Distribution& omega);

// Numerical witness that Bob-side rotations cannot disturb the attack:
// applies u_bob (on B and/or xi) to both committed states and returns the
// absolute change in cheat success. Must vanish to ~1e-10.
double bob_unitary_invariance(const ProtocolInstance& p, const Distribution& omega,
                              const Operator& u_alice, const Operator& u_bob);

}  // namespace qbc
