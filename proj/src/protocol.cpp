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

#include "qbc/protocol.hpp"

#include <cmath>
#include <numbers>

#include "qbc/attack.hpp"
#include "qbc/errors.hpp"
#include "qbc/tolerances.hpp"

namespace qbc {

// --- Distribution ---

Distribution::Distribution(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw LayoutError("distribution: needs at least one weight");
  double sum = 0.0;
  for (double q : w_) {
    if (!(q > -tol::norm))  // also rejects NaN
      throw InvariantError("distribution: negative weight " + std::to_string(q));
    sum += q;
  }
  if (std::abs(sum - 1.0) > tol::norm)
    throw InvariantError("distribution: weights sum to " + std::to_string(sum));
}

Distribution Distribution::uniform(int m) {
  if (m < 1) throw LayoutError("distribution: m must be positive");
  return Distribution(std::vector<double>(m, 1.0 / m));
}

Distribution Distribution::point_mass(int m, int j) {
  if (m < 1) throw LayoutError("distribution: m must be positive");
  if (j < 0 || j >= m) throw LayoutError("distribution: point mass index out of range");
  std::vector<double> w(m, 0.0);
  w[j] = 1.0;
  return Distribution(std::move(w));
}

double Distribution::at(int j) const {
  if (j < 0 || j >= size()) throw LayoutError("distribution: index out of range");
  return w_[j];
}

// --- ProtocolInstance ---

namespace {

RegisterLayout resource_layout(int d_A, int d_B) {
  return RegisterLayout({{"A", d_A, Owner::Alice}, {"B", d_B, Owner::Bob}});
}

RegisterLayout action_layout(int d_B) {
  return RegisterLayout({{"B", d_B, Owner::Bob}});
}

}  // namespace

ProtocolInstance::ProtocolInstance(int d_A, int d_B, CVec phi0, CVec phi1,
                                   std::vector<CMat> actions, int N, Flavor flavor)
    : d_A_(d_A), d_B_(d_B), N_(N), flavor_(flavor) {
  if (d_A < 1 || d_B < 1) throw LayoutError("protocol: register dims must be >= 1");
  if (N < 1) throw LayoutError("protocol: N must be >= 1");
  if (actions.empty()) throw LayoutError("protocol: needs at least one action");
  phis_.emplace_back(resource_layout(d_A, d_B), std::move(phi0));
  phis_.emplace_back(resource_layout(d_A, d_B), std::move(phi1));
  actions_.reserve(actions.size());
  for (auto& v : actions)
    actions_.emplace_back(action_layout(d_B), std::move(v), /*unitary=*/true);
}

const JointPureState& ProtocolInstance::phi(int b) const {
  if (b != 0 && b != 1) throw LayoutError("protocol: bit must be 0 or 1");
  return phis_[b];
}

const Operator& ProtocolInstance::action(int j) const {
  if (j < 0 || j >= m()) throw LayoutError("protocol: action index out of range");
  return actions_[j];
}

// --- families ---

CMat cyclic_shift(int d) {
  CMat x = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) x((i + 1) % d, i) = 1.0;
  return x;
}

ProtocolInstance make_family(Flavor flavor, int N, int m, int d) {
  if (flavor != Flavor::Perfect && flavor != Flavor::Near)
    throw LayoutError("make_family: flavor must be perfect or near");
  if (N < 1) throw LayoutError("make_family: N must be >= 1");
  if (m < 1) throw LayoutError("make_family: m must be >= 1");
  if (d < 2 || d > 16) throw LayoutError("make_family: d must be in [2, 16]");

  CVec entangled = CVec::Zero(d * d);
  for (int i = 0; i < d; ++i) entangled(i * d + i) = 1.0 / std::sqrt(double(d));

  CVec phi0, phi1;
  if (flavor == Flavor::Perfect) {
    phi0 = entangled;
    phi1 = CVec::Zero(d * d);
    // (shift x I): row block i of the A index moves to i+1
    for (int i = 0; i < d; ++i) phi1(((i + 1) % d) * d + i) = entangled(i * d + i);
  } else {
    const double eps = std::ldexp(1.0, -N);  // 2^-N
    // Orthogonal product perturbations |0>|1> and |1>|0>: same overlap
    // structure for both bits but visibly different B-side marginals.
    CVec lam0 = CVec::Zero(d * d);
    lam0(0 * d + 1) = 1.0;
    CVec lam1 = CVec::Zero(d * d);
    lam1(1 * d + 0) = 1.0;
    phi0 = std::sqrt(1.0 - eps) * entangled + std::sqrt(eps) * lam0;
    phi1 = std::sqrt(1.0 - eps) * entangled + std::sqrt(eps) * lam1;
  }

  std::vector<CMat> actions;
  actions.reserve(m);
  for (int j = 0; j < m; ++j) {
    const double theta = 2.0 * std::numbers::pi * (j + 1) / (2.0 * m + 1.0);
    CMat v = CMat::Zero(d, d);
    for (int k = 0; k < d; ++k) v(k, k) = std::polar(1.0, k * theta);
    actions.push_back(std::move(v));
  }
  return ProtocolInstance(d, d, std::move(phi0), std::move(phi1), std::move(actions),
                          N, flavor);
}

// --- purification layers ---

JointPureState appendix_state(const ProtocolInstance& p, const Distribution& omega0,
                              int b) {
  return committed_state(p, b, omega0);
}

MetaPurification meta_purify(const ProtocolInstance& p,
                             std::vector<Distribution> omegas, Distribution p_k) {
  const int n = static_cast<int>(omegas.size());
  if (n < 1) throw LayoutError("meta_purify: needs at least one distribution");
  if (p_k.size() != n)
    throw LayoutError("meta_purify: weight count does not match distribution count");
  for (const Distribution& w : omegas)
    if (w.size() != p.m())
      throw LayoutError("meta_purify: distribution length does not match action count");

  std::vector<JointPureState> states;
  for (int b = 0; b < 2; ++b) {
    std::vector<Register> regs = committed_state(p, b, omegas[0]).layout().registers();
    regs.push_back({"chi", n, Owner::BobAncilla});
    RegisterLayout layout(regs);
    CVec amps = CVec::Zero(layout.total_dim());
    for (int k = 0; k < n; ++k) {
      const double w = std::sqrt(std::max(p_k.at(k), 0.0));
      if (w == 0.0) continue;
      const JointPureState branch = committed_state(p, b, omegas[k]);
      const CVec& sub = branch.amplitudes();
      for (long i = 0; i < sub.size(); ++i) amps(i * n + k) = w * sub(i);
    }
    states.emplace_back(std::move(layout), std::move(amps));
  }
  return {p, std::move(omegas), std::move(p_k), std::move(states[0]),
          std::move(states[1])};
}

Distribution effective_distribution(const std::vector<Distribution>& omegas,
                                    const Distribution& p_k) {
  if (omegas.empty()) throw LayoutError("effective_distribution: empty distribution set");
  if (p_k.size() != static_cast<int>(omegas.size()))
    throw LayoutError("effective_distribution: weight count mismatch");
  const int m = omegas[0].size();
  std::vector<double> q(m, 0.0);
  for (size_t k = 0; k < omegas.size(); ++k) {
    if (omegas[k].size() != m)
      throw LayoutError("effective_distribution: ragged distribution set");
    for (int j = 0; j < m; ++j) q[j] += p_k.at(static_cast<int>(k)) * omegas[k].at(j);
  }
  return Distribution(std::move(q));
}

std::pair<double, JointPureState> collapse_ancilla(const MetaPurification& mp, int b,
                                                   int k) {
  const int n = mp.p_k.size();
  if (k < 0 || k >= n) throw LayoutError("collapse_ancilla: branch index out of range");
  if (b != 0 && b != 1) throw LayoutError("collapse_ancilla: bit must be 0 or 1");
  const JointPureState& s = (b == 0) ? mp.state0 : mp.state1;

  std::vector<Register> regs = s.layout().registers();
  regs.pop_back();  // drop chi
  RegisterLayout layout(std::move(regs));
  CVec sub(layout.total_dim());
  for (long i = 0; i < sub.size(); ++i) sub(i) = s.amplitudes()(i * n + k);
  const double prob = sub.squaredNorm();
  if (prob <= 1e-14)
    throw InvariantError("collapse_ancilla: branch " + std::to_string(k) +
                         " has zero probability");
  sub /= std::sqrt(prob);
  return {prob, JointPureState(std::move(layout), std::move(sub))};
}

DensityOperator alice_visible(const JointPureState& s) {
  std::vector<std::string> keep;
  for (const Register& r : s.layout().registers())
    if (r.owner != Owner::BobAncilla) keep.push_back(r.name);
  if (keep.size() == static_cast<size_t>(s.layout().register_count()))
    throw LayoutError("alice_visible: state has no Bob-ancilla registers");
  if (keep.empty())
    throw LayoutError("alice_visible: state has only Bob-ancilla registers");
  return partial_trace(s, keep);
}

}  // namespace qbc
