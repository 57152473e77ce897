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

#include "qbc/hilbert.hpp"

namespace qbc {

struct FidelityResult {
  double value = 0.0;    // in [0, 1] up to tol::norm
  double deficit = 0.0;  // 1 - value
};

// Fidelity of two density operators on the same layout, computed as the
// trace norm of sqrt(rho1) * sqrt(rho0). Symmetric in its arguments.
FidelityResult uhlmann_fidelity(const DensityOperator& rho1,
                                const DensityOperator& rho0);

// Trace distance (1/2)||rho - sigma||_1; the operational distinguishability
// metric used for substitution checks.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

// Purifies rho by attaching one ancilla register of dimension dim(rho)
// (rank-padded). Eigenvalues are sorted descending and eigenvector phases
// are fixed, so the output is deterministic. Tracing out the ancilla
// recovers rho.
JointPureState canonical_purification(const DensityOperator& rho,
                                      const std::string& ancilla_name = "purifier",
                                      Owner ancilla_owner = Owner::Alice);

struct OverlapResult {
  double value = 0.0;  // max |<psi1|(U x I)|psi0>| over unitaries U
  Operator maximizer;  // attaining U on the named registers
};

// Maximizes |<psi1|(U x I)|psi0>| over unitaries U acting on alice_regs
// (a nonempty proper subset of the shared layout). The maximum equals the
// fidelity of the two reduced states on the remaining registers; it is the
// nuclear norm of the cross-Gram matrix M0 * M1^dagger of the two states
// reshaped against alice_regs, attained at U = V * W^dagger from its SVD.
// The returned overlap is real nonnegative (phase absorbed into U).
OverlapResult max_purification_overlap(const JointPureState& psi1,
                                       const JointPureState& psi0,
                                       const std::vector<std::string>& alice_regs);

}  // namespace qbc
