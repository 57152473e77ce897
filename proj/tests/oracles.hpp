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

// Independent reference implementations used to cross-check the library.
// Everything here recomputes results from first principles through a
// different route than the code under test (explicit digit walks, direct
// linear solves, closed forms), so agreement is meaningful.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "qbc/hilbert.hpp"

namespace oracle {

// Partial trace by brute-force digit decomposition of flat indices: every
// joint index is split into per-register digits (last register fastest),
// the kept digits form the row/column indices, and discarded digits are
// summed over. No stride tables from the library are used.
inline qbc::CMat partial_trace(const qbc::JointPureState& s,
                               const std::vector<std::string>& keep) {
  const auto& regs = s.layout().registers();
  const int r = static_cast<int>(regs.size());
  std::vector<int> dims(r);
  std::vector<bool> kept(r, false);
  long keep_dim = 1;
  for (int i = 0; i < r; ++i) {
    dims[i] = regs[i].dim;
    for (const std::string& name : keep)
      if (regs[i].name == name) kept[i] = true;
    if (kept[i]) keep_dim *= dims[i];
  }
  const auto digits_of = [&](long flat) {
    std::vector<int> dig(r);
    for (int i = r - 1; i >= 0; --i) {
      dig[i] = static_cast<int>(flat % dims[i]);
      flat /= dims[i];
    }
    return dig;
  };
  const auto keep_index = [&](const std::vector<int>& dig) {
    long idx = 0;
    for (int i = 0; i < r; ++i)
      if (kept[i]) idx = idx * dims[i] + dig[i];
    return idx;
  };
  const auto rest_match = [&](const std::vector<int>& a,
                              const std::vector<int>& b) {
    for (int i = 0; i < r; ++i)
      if (!kept[i] && a[i] != b[i]) return false;
    return true;
  };
  const long total = s.amplitudes().size();
  qbc::CMat rho = qbc::CMat::Zero(keep_dim, keep_dim);
  for (long x = 0; x < total; ++x) {
    const std::vector<int> dx = digits_of(x);
    for (long y = 0; y < total; ++y) {
      const std::vector<int> dy = digits_of(y);
      if (!rest_match(dx, dy)) continue;
      rho(keep_index(dx), keep_index(dy)) +=
          s.amplitudes()(x) * std::conj(s.amplitudes()(y));
    }
  }
  return rho;
}

// Nuclear norm through the Hermitian eigenproblem of X X^dagger rather
// than an SVD: sum of sqrt of eigenvalues.
inline double nuclear_norm(const qbc::CMat& x) {
  Eigen::SelfAdjointEigenSolver<qbc::CMat> es(x * x.adjoint());
  double sum = 0.0;
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    sum += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  return sum;
}

// Fidelity of a pure state against an arbitrary density matrix:
// F = sqrt(<psi|rho|psi>).
inline double pure_vs_mixed_fidelity(const qbc::CVec& psi, const qbc::CMat& rho) {
  return std::sqrt(std::abs((psi.adjoint() * rho * psi)(0, 0)));
}

// Fidelity of two commuting (here: diagonal) density matrices:
// F = sum_i sqrt(p_i q_i).
inline double diagonal_fidelity(const std::vector<double>& p,
                                const std::vector<double>& q) {
  double f = 0.0;
  for (size_t i = 0; i < p.size(); ++i) f += std::sqrt(p[i] * q[i]);
  return f;
}

// Uniform-purification overlap deficit of the near family, in closed form.
// With eps = 2^-N the cross-Gram of the uniform purification works out to
// (1-eps)/d * I plus a rank-one correction mixing the two perturbation
// directions, whose nuclear norm is
//   (d-2)(1-eps)/d + (2/d) * sqrt((1-eps) * (1-eps+eps*d)),
// independent of the action count m.
inline double near_delta_prime(int N, int d) {
  const double eps = std::ldexp(1.0, -N);
  return 1.0 - ((d - 2) * (1.0 - eps) / d +
                (2.0 / d) * std::sqrt((1.0 - eps) * (1.0 - eps + eps * d)));
}

// Recovers the unique unitary with (U x I)|s0> = |s1> by a direct linear
// solve on the Alice-rows reshape: U = M1 M0^dagger (M0 M0^dagger)^-1.
// Valid when the Alice marginal of s0 is full rank.
inline qbc::CMat solve_encoding_unitary(const qbc::JointPureState& s1,
                                        const qbc::JointPureState& s0,
                                        const std::vector<std::string>& alice) {
  const qbc::CMat m1 = qbc::reshape_rows(s1, alice);
  const qbc::CMat m0 = qbc::reshape_rows(s0, alice);
  return m1 * m0.adjoint() * (m0 * m0.adjoint()).inverse();
}

// Largest absolute entry difference after aligning global phase on the
// largest entry of `a`. Returns ~0 iff a = e^{i theta} b.
inline double phase_aligned_distance(const qbc::CMat& a, const qbc::CMat& b) {
  long rmax = 0, cmax = 0;
  a.cwiseAbs().maxCoeff(&rmax, &cmax);
  const qbc::Complex ra = a(rmax, cmax), rb = b(rmax, cmax);
  if (std::abs(ra) == 0.0 || std::abs(rb) == 0.0)
    return qbc::max_abs(a - b);
  const qbc::Complex phase = (ra / std::abs(ra)) / (rb / std::abs(rb));
  return qbc::max_abs(a - phase * b);
}

}  // namespace oracle
