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

#include "qbc/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qbc/errors.hpp"
#include "qbc/tolerances.hpp"

namespace qbc {

namespace {

// Registers of u must exist in the state and be owned by one of the given
// parties; used to keep cheat unitaries on Alice's side and Bob rotations
// off it.
void require_owned_by(const Operator& u, const RegisterLayout& state,
                      std::initializer_list<Owner> allowed, const char* who) {
  for (const Register& r : u.layout().registers()) {
    const Register& sr = state.reg(state.index_of(r.name));
    bool ok = false;
    for (Owner o : allowed) ok = ok || (sr.owner == o);
    if (!ok)
      throw LayoutError(std::string(who) + ": register '" + r.name +
                        "' is not on the allowed side");
  }
}

}  // namespace

ExtremeSet ExtremeSet::of(int m) {
  ExtremeSet e;
  e.m = m;
  e.members.reserve(m);
  for (int j = 0; j < m; ++j) e.members.push_back(Distribution::point_mass(m, j));
  return e;
}

JointPureState committed_state(const ProtocolInstance& p, int b,
                               const Distribution& omega) {
  if (b != 0 && b != 1) throw LayoutError("committed_state: bit must be 0 or 1");
  if (omega.size() != p.m())
    throw LayoutError("committed_state: distribution length " +
                      std::to_string(omega.size()) + " != action count " +
                      std::to_string(p.m()));
  const int m = p.m();
  RegisterLayout layout({{"A", p.d_A(), Owner::Alice},
                         {"B", p.d_B(), Owner::Bob},
                         {"xi", m, Owner::BobAncilla}});
  CVec amps = CVec::Zero(layout.total_dim());
  for (int j = 0; j < m; ++j) {
    const double w = std::sqrt(std::max(omega.at(j), 0.0));
    if (w == 0.0) continue;
    const CVec branch = apply(p.action(j), p.phi(b)).amplitudes();
    for (long i = 0; i < branch.size(); ++i) amps(i * m + j) = w * branch(i);
  }
  return JointPureState(std::move(layout), std::move(amps));
}

FidelityResult concealment_deficit(const ProtocolInstance& p,
                                   const Distribution& omega) {
  const DensityOperator bob1 = partial_trace(committed_state(p, 1, omega), {"B", "xi"});
  const DensityOperator bob0 = partial_trace(committed_state(p, 0, omega), {"B", "xi"});
  return uhlmann_fidelity(bob1, bob0);
}

OptimalCheat optimal_cheat(const ProtocolInstance& p, const Distribution& omega) {
  const JointPureState s1 = committed_state(p, 1, omega);
  const JointPureState s0 = committed_state(p, 0, omega);
  OverlapResult r = max_purification_overlap(s1, s0, {"A"});
  return {std::move(r.maximizer), r.value};
}

UniversalCheat universal_cheat(const ProtocolInstance& p) {
  const ExtremeSet ext = ExtremeSet::of(p.m());
  const MetaPurification uniform =
      meta_purify(p, ext.members, Distribution::uniform(p.m()));
  OverlapResult r = max_purification_overlap(uniform.state1, uniform.state0, {"A"});
  return {std::move(r.maximizer), 1.0 - r.value};
}

Complex cheat_overlap_between(const JointPureState& s1, const JointPureState& s0,
                              const Operator& u_alice) {
  require_owned_by(u_alice, s0.layout(), {Owner::Alice}, "cheat overlap");
  return overlap(s1, apply(u_alice, s0));
}

double cheat_success_between(const JointPureState& s1, const JointPureState& s0,
                             const Operator& u_alice) {
  return std::norm(cheat_overlap_between(s1, s0, u_alice));
}

double cheat_success(const ProtocolInstance& p, const Distribution& omega,
                     const Operator& u_alice) {
  return cheat_success_between(committed_state(p, 1, omega),
                               committed_state(p, 0, omega), u_alice);
}

CheatReport alpha_beta_decomposition(const ProtocolInstance& p,
                                     const Operator& u_alice) {
  if (!u_alice.is_unitary())
    throw InvariantError("alpha_beta_decomposition: cheat operator must be unitary");
  const int m = p.m();
  const ExtremeSet ext = ExtremeSet::of(m);

  // Deficit of the uniform purification, computed directly on the joint
  // states; the branch sums below must reproduce it.
  const MetaPurification uniform = meta_purify(p, ext.members, Distribution::uniform(m));
  const Complex raw = cheat_overlap_between(uniform.state1, uniform.state0, u_alice);
  const double mag = std::abs(raw);
  const Complex phase = (mag > 0.0) ? std::conj(raw) / mag : Complex(1.0, 0.0);

  CheatReport rep;
  rep.delta_prime = 1.0 - mag;
  rep.alphas.resize(m);
  rep.betas.resize(m);
  for (int j = 0; j < m; ++j) {
    const Complex o = phase * cheat_overlap_between(committed_state(p, 1, ext.members[j]),
                                                    committed_state(p, 0, ext.members[j]),
                                                    u_alice);
    rep.alphas[j] = 1.0 - o.real();
    rep.betas[j] = o.imag();
  }

  const double mean_alpha =
      std::accumulate(rep.alphas.begin(), rep.alphas.end(), 0.0) / m;
  const double beta_sum = std::accumulate(rep.betas.begin(), rep.betas.end(), 0.0);
  if (std::abs(rep.delta_prime - mean_alpha) > 1e-9)
    throw InvariantError("alpha_beta_decomposition: mean(alpha) disagrees with the "
                         "uniform-purification deficit");
  if (std::abs(beta_sum) > 1e-9)
    throw InvariantError("alpha_beta_decomposition: beta sum is nonzero");

  if (rep.delta_prime > 1e-12) {
    rep.c_estimate =
        *std::max_element(rep.alphas.begin(), rep.alphas.end()) / rep.delta_prime;
  } else {
    rep.c_estimate = 0.0;  // exact concealment; the bound degenerates to 1
  }
  rep.bound = 1.0 - 2.0 * rep.c_estimate * rep.delta_prime;
  return rep;
}

std::pair<double, double> weighted_moments(const CheatReport& report,
                                           const Distribution& omega) {
  const int m = static_cast<int>(report.alphas.size());
  if (omega.size() != m)
    throw LayoutError("weighted_moments: distribution length mismatch");
  double a = 0.0, b = 0.0;
  for (int j = 0; j < m; ++j) {
    a += omega.at(j) * report.alphas[j];
    b += omega.at(j) * report.betas[j];
  }
  if (a > report.c_estimate * report.delta_prime + 1e-9)
    throw InvariantError("weighted_moments: alpha_bar exceeds c * delta'");
  if (0.5 * (a * a + b * b) > a + 1e-9)
    throw InvariantError("weighted_moments: quadratic overlap bound violated");
  return {a, b};
}

double bob_unitary_invariance(const ProtocolInstance& p, const Distribution& omega,
                              const Operator& u_alice, const Operator& u_bob) {
  const JointPureState s1 = committed_state(p, 1, omega);
  const JointPureState s0 = committed_state(p, 0, omega);
  require_owned_by(u_bob, s0.layout(), {Owner::Bob, Owner::BobAncilla},
                   "bob_unitary_invariance");
  const double before = cheat_success_between(s1, s0, u_alice);
  const double after =
      cheat_success_between(apply(u_bob, s1), apply(u_bob, s0), u_alice);
  return std::abs(after - before);
}

}  // namespace qbc
