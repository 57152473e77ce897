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

#include "qbc/fidelity.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "qbc/errors.hpp"
#include "qbc/tolerances.hpp"

namespace qbc {

FidelityResult uhlmann_fidelity(const DensityOperator& rho1,
                                const DensityOperator& rho0) {
  if (!(rho1.layout() == rho0.layout()))
    throw LayoutError("fidelity: operators live on different layouts");
  const CMat prod = sqrtm_psd(rho1.matrix()) * sqrtm_psd(rho0.matrix());
  const double value = svd(prod).singular_values.sum();
  return {value, 1.0 - value};
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (!(rho.layout() == sigma.layout()))
    throw LayoutError("trace_distance: operators live on different layouts");
  Eigen::SelfAdjointEigenSolver<CMat> es(rho.matrix() - sigma.matrix(),
                                         Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

JointPureState canonical_purification(const DensityOperator& rho,
                                      const std::string& ancilla_name,
                                      Owner ancilla_owner) {
  const long d = rho.dim();
  Eigen::SelfAdjointEigenSolver<CMat> es(rho.matrix());
  if (es.eigenvalues().minCoeff() < -tol::psd)
    throw InvariantError("canonical_purification: input not PSD");

  // Descending eigenvalues, each eigenvector phase-fixed on its largest
  // entry, so equal inputs purify to identical amplitude vectors.
  std::vector<long> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](long a, long b) {
    return es.eigenvalues()(a) > es.eigenvalues()(b);
  });

  std::vector<Register> regs = rho.layout().registers();
  regs.push_back({ancilla_name, static_cast<int>(d), ancilla_owner});
  RegisterLayout layout(std::move(regs));

  CVec amps = CVec::Zero(d * d);
  for (long slot = 0; slot < d; ++slot) {
    const long i = order[slot];
    const double lam = std::max(es.eigenvalues()(i), 0.0);
    if (lam == 0.0) continue;
    CVec v = es.eigenvectors().col(i);
    long peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    const Complex ph = v(peak) / std::abs(v(peak));
    v *= std::conj(ph);
    const double w = std::sqrt(lam);
    for (long r = 0; r < d; ++r) amps(r * d + slot) = w * v(r);  // ancilla fastest
  }
  amps /= amps.norm();  // absorbs clamped negative mass, ~1e-12 at most
  return JointPureState(std::move(layout), std::move(amps));
}

OverlapResult max_purification_overlap(const JointPureState& psi1,
                                       const JointPureState& psi0,
                                       const std::vector<std::string>& alice_regs) {
  if (!(psi1.layout() == psi0.layout()))
    throw LayoutError("max_purification_overlap: states live on different layouts");
  const CMat m1 = reshape_rows(psi1, alice_regs);
  const CMat m0 = reshape_rows(psi0, alice_regs);  // validates proper subset

  // <psi1|(U x I)|psi0> = tr(U * M0 * M1^dagger); the unitary maximum of
  // |tr(U X)| is the nuclear norm of X, attained at U = V W^dagger.
  const CMat cross_gram = m0 * m1.adjoint();
  SvdResult dec = svd(cross_gram);
  const double value = dec.singular_values.sum();
  CMat u = dec.v * dec.u.adjoint();

  const std::vector<int> row_pos = psi1.layout().positions_of(alice_regs);
  std::vector<Register> regs;
  regs.reserve(row_pos.size());
  for (int p : row_pos) regs.push_back(psi1.layout().reg(p));
  return {value, Operator(RegisterLayout(std::move(regs)), std::move(u), true)};
}

}  // namespace qbc
