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

namespace qbc::tol {

// Shared numerical tolerances. Absolute, chosen for unit-scale objects
// (normalized states, density matrices, unitaries).
inline constexpr double norm = 1e-10;     // state norms, traces, weights
inline constexpr double herm = 1e-10;     // Hermiticity deviation
inline constexpr double unitary = 1e-9;   // ||U'U - I||_max
inline constexpr double svd = 1e-9;       // SVD reconstruction
inline constexpr double psd = 1e-10;      // eigenvalue negativity allowance
inline constexpr double sqrt_tol = 1e-9;  // matrix sqrt residuals

// Joint dimensions above this are refused outright; everything here is
// meant for exact desk-scale numerics, not bulk simulation.
inline constexpr long max_total_dim = 4096;

}  // namespace qbc::tol
