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

#include "qbc/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

#include "qbc/errors.hpp"
#include "qbc/tolerances.hpp"

namespace qbc {

namespace {

// Flat-index offsets of every multi-index over the registers at the given
// layout positions, enumerated with the last listed position fastest. The
// returned vector has prod(dims) entries; adding an entry to a base offset
// lands on the amplitude with those digits set.
std::vector<long> subindex_offsets(const RegisterLayout& layout,
                                   const std::vector<int>& positions) {
  long count = 1;
  for (int p : positions) count *= layout.reg(p).dim;
  std::vector<long> offsets(count, 0);
  long repeat = count;
  for (int p : positions) {
    const long dim = layout.reg(p).dim;
    const long stride = layout.strides()[p];
    repeat /= dim;
    for (long i = 0; i < count; ++i) offsets[i] += ((i / repeat) % dim) * stride;
  }
  return offsets;
}

RegisterLayout sub_layout(const RegisterLayout& layout,
                          const std::vector<int>& positions) {
  std::vector<Register> regs;
  regs.reserve(positions.size());
  for (int p : positions) regs.push_back(layout.reg(p));
  return RegisterLayout(std::move(regs));
}

void require_finite(const CMat& m, const char* who) {
  if (!m.allFinite()) throw InvariantError(std::string(who) + ": non-finite input");
}

}  // namespace

double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// --- types ---

JointPureState::JointPureState(RegisterLayout layout, CVec amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout_.total_dim())
    throw LayoutError("state: amplitude length " + std::to_string(amps_.size()) +
                      " != layout dimension " + std::to_string(layout_.total_dim()));
  if (!amps_.allFinite()) throw InvariantError("state: non-finite amplitude");
  const double n = amps_.norm();
  if (std::abs(n - 1.0) > tol::norm)
    throw InvariantError("state: norm " + std::to_string(n) + " is not 1");
}

DensityOperator::DensityOperator(RegisterLayout layout, CMat matrix)
    : layout_(std::move(layout)), mat_(std::move(matrix)) {
  if (mat_.rows() != layout_.total_dim() || mat_.cols() != layout_.total_dim())
    throw LayoutError("density: matrix shape does not match layout dimension");
  require_finite(mat_, "density");
  if (max_abs(mat_ - mat_.adjoint()) > tol::herm)
    throw InvariantError("density: not Hermitian within tolerance");
  mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
  if (std::abs(mat_.trace().real() - 1.0) > tol::norm)
    throw InvariantError("density: trace is not 1 within tolerance");
  Eigen::SelfAdjointEigenSolver<CMat> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::psd)
    throw InvariantError("density: negative eigenvalue " +
                         std::to_string(es.eigenvalues().minCoeff()));
}

Operator::Operator(RegisterLayout layout, CMat matrix, bool unitary)
    : layout_(std::move(layout)), mat_(std::move(matrix)), unitary_(unitary) {
  if (mat_.rows() != layout_.total_dim() || mat_.cols() != layout_.total_dim())
    throw LayoutError("operator: matrix shape does not match layout dimension");
  require_finite(mat_, "operator");
  if (unitary_) {
    CMat gram = mat_.adjoint() * mat_;
    gram.diagonal().array() -= 1.0;
    if (max_abs(gram) > tol::unitary)
      throw InvariantError("operator: not unitary within tolerance");
  }
}

Operator Operator::identity(RegisterLayout layout) {
  const long d = layout.total_dim();
  return Operator(std::move(layout), CMat::Identity(d, d), true);
}

// --- composition ---

JointPureState tensor(const JointPureState& a, const JointPureState& b) {
  RegisterLayout layout = concat(a.layout(), b.layout());
  CVec amps = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return JointPureState(std::move(layout), std::move(amps));
}

Operator tensor(const Operator& a, const Operator& b) {
  RegisterLayout layout = concat(a.layout(), b.layout());
  CMat m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return Operator(std::move(layout), std::move(m), a.is_unitary() && b.is_unitary());
}

Complex overlap(const JointPureState& bra, const JointPureState& ket) {
  if (!(bra.layout() == ket.layout()))
    throw LayoutError("overlap: states live on different layouts");
  return bra.amplitudes().dot(ket.amplitudes());  // conjugates bra
}

JointPureState apply(const Operator& op, const JointPureState& s) {
  const RegisterLayout& sl = s.layout();
  std::vector<int> positions;  // in op register order
  positions.reserve(op.layout().register_count());
  for (const Register& r : op.layout().registers()) {
    const int pos = sl.index_of(r.name);  // throws if absent
    if (sl.reg(pos).dim != r.dim)
      throw LayoutError("apply: dimension mismatch on register '" + r.name + "'");
    positions.push_back(pos);
  }
  std::vector<int> sorted = positions;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> env;
  for (int i = 0; i < sl.register_count(); ++i)
    if (!std::binary_search(sorted.begin(), sorted.end(), i)) env.push_back(i);

  const std::vector<long> sub = subindex_offsets(sl, positions);
  const std::vector<long> base = subindex_offsets(sl, env);
  const long ds = static_cast<long>(sub.size());
  const CMat& u = op.matrix();
  const CVec& in = s.amplitudes();
  CVec out = CVec::Zero(in.size());
  CVec x(ds), y(ds);
  for (long b0 : base) {
    for (long c = 0; c < ds; ++c) x(c) = in(b0 + sub[c]);
    y.noalias() = u * x;
    for (long r = 0; r < ds; ++r) out(b0 + sub[r]) = y(r);
  }
  return JointPureState(sl, std::move(out));
}

// --- reductions ---

namespace {

struct Split {
  std::vector<long> keep_offsets, traced_offsets;
  RegisterLayout kept;
};

Split split_layout(const RegisterLayout& layout, const std::vector<std::string>& keep) {
  if (keep.empty()) throw LayoutError("partial_trace: keep set must be nonempty");
  const std::vector<int> keep_pos = layout.positions_of(keep);
  const std::vector<int> traced_pos = layout.positions_not_of(keep);
  return {subindex_offsets(layout, keep_pos), subindex_offsets(layout, traced_pos),
          sub_layout(layout, keep_pos)};
}

}  // namespace

DensityOperator partial_trace(const JointPureState& s,
                              const std::vector<std::string>& keep) {
  Split sp = split_layout(s.layout(), keep);
  const long kd = static_cast<long>(sp.keep_offsets.size());
  const CVec& a = s.amplitudes();
  CMat rho = CMat::Zero(kd, kd);
  CVec slice(kd);
  for (long t : sp.traced_offsets) {
    for (long k = 0; k < kd; ++k) slice(k) = a(sp.keep_offsets[k] + t);
    rho.noalias() += slice * slice.adjoint();
  }
  return DensityOperator(std::move(sp.kept), std::move(rho));
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep) {
  Split sp = split_layout(rho.layout(), keep);
  const long kd = static_cast<long>(sp.keep_offsets.size());
  const CMat& m = rho.matrix();
  CMat out = CMat::Zero(kd, kd);
  for (long t : sp.traced_offsets)
    for (long c = 0; c < kd; ++c)
      for (long r = 0; r < kd; ++r)
        out(r, c) += m(sp.keep_offsets[r] + t, sp.keep_offsets[c] + t);
  return DensityOperator(std::move(sp.kept), std::move(out));
}

CMat reshape_rows(const JointPureState& s, const std::vector<std::string>& row_regs) {
  const RegisterLayout& layout = s.layout();
  const std::vector<int> row_pos = layout.positions_of(row_regs);
  const std::vector<int> col_pos = layout.positions_not_of(row_regs);
  if (row_pos.empty() || col_pos.empty())
    throw LayoutError("reshape_rows: row registers must be a nonempty proper subset");
  const std::vector<long> ro = subindex_offsets(layout, row_pos);
  const std::vector<long> co = subindex_offsets(layout, col_pos);
  CMat m(ro.size(), co.size());
  for (size_t c = 0; c < co.size(); ++c)
    for (size_t r = 0; r < ro.size(); ++r) m(r, c) = s.amplitudes()(ro[r] + co[c]);
  return m;
}

// --- decompositions ---

SvdResult svd(const CMat& m) {
  require_finite(m, "svd");
  if (m.rows() <= 32 && m.cols() <= 32) {
    Eigen::JacobiSVD<CMat> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
  }
  Eigen::BDCSVD<CMat> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

CMat sqrtm_psd(const CMat& rho) {
  if (rho.rows() != rho.cols()) throw LayoutError("sqrtm_psd: matrix not square");
  require_finite(rho, "sqrtm_psd");
  if (max_abs(rho - rho.adjoint()) > tol::herm)
    throw InvariantError("sqrtm_psd: not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (rho + rho.adjoint().eval()));
  RVec lam = es.eigenvalues();
  for (long i = 0; i < lam.size(); ++i) {
    if (lam(i) < -tol::psd)
      throw InvariantError("sqrtm_psd: negative eigenvalue " + std::to_string(lam(i)));
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qbc
