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

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "qbc/layout.hpp"

namespace qbc {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

// Normalized pure state over a register layout. Construction checks
// length, finiteness and unit norm (tol::norm).
class JointPureState {
 public:
  JointPureState(RegisterLayout layout, CVec amplitudes);

  const RegisterLayout& layout() const { return layout_; }
  const CVec& amplitudes() const { return amps_; }
  long dim() const { return amps_.size(); }

 private:
  RegisterLayout layout_;
  CVec amps_;
};

// Hermitian PSD trace-one operator over a layout. The stored matrix is
// symmetrized on construction; eigenvalues below -tol::psd are rejected.
class DensityOperator {
 public:
  DensityOperator(RegisterLayout layout, CMat matrix);

  const RegisterLayout& layout() const { return layout_; }
  const CMat& matrix() const { return mat_; }
  long dim() const { return mat_.rows(); }

 private:
  RegisterLayout layout_;
  CMat mat_;
};

// Linear operator over a layout; unitarity is checked when flagged (default).
class Operator {
 public:
  Operator(RegisterLayout layout, CMat matrix, bool unitary = true);

  static Operator identity(RegisterLayout layout);

  const RegisterLayout& layout() const { return layout_; }
  const CMat& matrix() const { return mat_; }
  bool is_unitary() const { return unitary_; }
  long dim() const { return mat_.rows(); }

 private:
  RegisterLayout layout_;
  CMat mat_;
  bool unitary_;
};

// --- composition ---

JointPureState tensor(const JointPureState& a, const JointPureState& b);
Operator tensor(const Operator& a, const Operator& b);

// <bra|ket>; layouts must match exactly.
Complex overlap(const JointPureState& bra, const JointPureState& ket);

// Applies op to the subset of s's registers matching op's layout by name
// (dims must agree); all other registers are untouched.
JointPureState apply(const Operator& op, const JointPureState& s);

// --- reductions ---

// Partial trace keeping the named registers (a set; result registers stay
// in layout order). keep must be nonempty and name existing registers.
DensityOperator partial_trace(const JointPureState& s,
                              const std::vector<std::string>& keep);
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep);

// Flattens s into a matrix whose rows run over the named registers (layout
// order) and whose columns run over the rest. Inverse of register-major
// indexing; used for purification overlaps.
CMat reshape_rows(const JointPureState& s, const std::vector<std::string>& row_regs);

// --- matrix decompositions ---

struct SvdResult {
  CMat u;                 // rows x rows, unitary
  RVec singular_values;   // min(rows, cols), nonincreasing
  CMat v;                 // cols x cols, unitary; m = u * diag * v^dagger
};

SvdResult svd(const CMat& m);

// Principal square root of a Hermitian PSD matrix via eigendecomposition.
// Eigenvalues below -tol::psd are an error; small negatives are clamped.
CMat sqrtm_psd(const CMat& rho);

// Largest absolute entry (0 for empty matrices).
double max_abs(const CMat& m);

}  // namespace qbc
