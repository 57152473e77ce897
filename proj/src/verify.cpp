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

#include "qbc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "qbc/errors.hpp"
#include "qbc/tolerances.hpp"

namespace qbc {

namespace {

std::string num(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

// --- generic linear-algebra checks ---

void check_hilbert(std::vector<CheckResult>& out, Rng& rng) {
  RegisterLayout l3({{"A", 2, Owner::Alice}, {"B", 3, Owner::Bob},
                     {"xi", 2, Owner::BobAncilla}});

  {  // keep-all partial trace is the identity on density operators
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      DensityOperator rho(l3, rng.density(12));
      DensityOperator back = partial_trace(rho, {"A", "B", "xi"});
      worst = std::max(worst, max_abs(back.matrix() - rho.matrix()));
    }
    out.push_back({"hilbert.partial_trace_identity", worst <= 1e-12,
                   "max deviation " + num(worst)});
  }
  {  // reductions of random pure states are unit-trace PSD
    double worst = 0.0;
    const std::vector<std::vector<std::string>> keeps = {
        {"A"}, {"B"}, {"xi"}, {"A", "xi"}, {"B", "xi"}, {"A", "B"}};
    for (int t = 0; t < 5; ++t) {
      JointPureState s(l3, rng.state(12));
      for (const auto& keep : keeps) {
        // DensityOperator construction enforces trace/PSD; measure trace drift
        DensityOperator rho = partial_trace(s, keep);
        worst = std::max(worst, std::abs(rho.matrix().trace().real() - 1.0));
      }
    }
    out.push_back({"hilbert.partial_trace_unit_trace", worst <= tol::norm,
                   "max trace deviation " + num(worst)});
  }
  {  // marginals of product states are pure
    double worst = 1.0;
    for (int t = 0; t < 5; ++t) {
      JointPureState a(RegisterLayout({{"A", 3, Owner::Alice}}), rng.state(3));
      JointPureState b(RegisterLayout({{"B", 4, Owner::Bob}}), rng.state(4));
      DensityOperator rho = partial_trace(tensor(a, b), {"A"});
      worst = std::min(worst, (rho.matrix() * rho.matrix()).trace().real());
    }
    out.push_back({"hilbert.product_marginal_purity", worst >= 1.0 - tol::norm,
                   "min purity " + num(worst)});
  }
  {  // SVD reconstructs and is unitarily invariant
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      CMat m(4, 6);
      for (int c = 0; c < 6; ++c)
        for (int r = 0; r < 4; ++r) m(r, c) = rng.complex_gaussian();
      SvdResult dec = svd(m);
      CMat sigma = CMat::Zero(4, 6);
      for (int i = 0; i < 4; ++i) sigma(i, i) = dec.singular_values(i);
      worst = std::max(worst, max_abs(dec.u * sigma * dec.v.adjoint() - m));
      const RVec before = dec.singular_values;
      const RVec after = svd(rng.unitary(4) * m * rng.unitary(6)).singular_values;
      worst = std::max(worst, (before - after).cwiseAbs().maxCoeff());
    }
    out.push_back({"hilbert.svd_reconstruction", worst <= tol::svd,
                   "max residual " + num(worst)});
  }
  {  // psd sqrt squares back and commutes
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      const CMat rho = rng.density(5);
      const CMat root = sqrtm_psd(rho);
      worst = std::max(worst, max_abs(root * root - rho));
      worst = std::max(worst, max_abs(root * rho - rho * root));
    }
    out.push_back({"hilbert.sqrtm_square_commute", worst <= tol::sqrt_tol,
                   "max residual " + num(worst)});
  }
}

// --- fidelity checks ---

void check_fidelity(std::vector<CheckResult>& out, Rng& rng) {
  {  // purification route equals density route
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const int da = 2 + rng.index(3), db = 2 + rng.index(3);
      RegisterLayout l({{"A", da, Owner::Alice}, {"B", db, Owner::Bob}});
      JointPureState s1(l, rng.state(da * db));
      JointPureState s0(l, rng.state(da * db));
      const double via_overlap = max_purification_overlap(s1, s0, {"A"}).value;
      const double via_density =
          uhlmann_fidelity(partial_trace(s1, {"B"}), partial_trace(s0, {"B"})).value;
      worst = std::max(worst, std::abs(via_overlap - via_density));
    }
    out.push_back({"fidelity.uhlmann_consistency", worst <= 1e-8,
                   "max route disagreement " + num(worst) + " over 200 pairs"});
  }
  {  // mixing away from rho never raises fidelity
    bool ok = true;
    double worst = 0.0;
    RegisterLayout l({{"A", 3, Owner::Alice}});
    for (int t = 0; t < 5; ++t) {
      DensityOperator rho(l, rng.density(3));
      const CMat sigma = rng.density(3);
      double prev = 1.0;
      for (int g = 0; g <= 10; ++g) {
        const double w = g / 10.0;
        DensityOperator mix(l, (1.0 - w) * rho.matrix() + w * sigma);
        const double f = uhlmann_fidelity(rho, mix).value;
        worst = std::max(worst, f - prev);
        ok = ok && (f <= prev + 1e-9);
        prev = f;
      }
    }
    out.push_back({"fidelity.monotone_mixing", ok, "max rise " + num(worst)});
  }
  {  // joint rotation leaves fidelity alone
    double worst = 0.0;
    RegisterLayout l({{"A", 4, Owner::Alice}});
    for (int t = 0; t < 5; ++t) {
      DensityOperator rho(l, rng.density(4));
      DensityOperator sig(l, rng.density(4));
      const CMat u = rng.unitary(4);
      DensityOperator rho2(l, u * rho.matrix() * u.adjoint());
      DensityOperator sig2(l, u * sig.matrix() * u.adjoint());
      worst = std::max(worst, std::abs(uhlmann_fidelity(rho, sig).value -
                                       uhlmann_fidelity(rho2, sig2).value));
    }
    out.push_back({"fidelity.unitary_invariance", worst <= 1e-9,
                   "max deviation " + num(worst)});
  }
  {  // the returned maximizer actually attains the reported value
    double worst = 0.0;
    RegisterLayout l({{"A", 3, Owner::Alice}, {"B", 3, Owner::Bob}});
    for (int t = 0; t < 5; ++t) {
      JointPureState s1(l, rng.state(9));
      JointPureState s0(l, rng.state(9));
      OverlapResult r = max_purification_overlap(s1, s0, {"A"});
      const double attained = std::abs(overlap(s1, apply(r.maximizer, s0)));
      worst = std::max(worst, std::abs(attained - r.value));
    }
    out.push_back({"fidelity.attainment", worst <= 1e-9, "max gap " + num(worst)});
  }
}

// --- per-instance checks ---

std::string tagged(const std::string& tag, const std::string& detail) {
  return "[" + tag + "] " + detail;
}

void check_instance(std::vector<CheckResult>& out, const std::string& tag,
                    const ProtocolInstance& p, int omega_samples, Rng& rng) {
  const int m = p.m();

  {  // family concealment guarantees
    double worst = 0.0;
    for (int j = 0; j < m; ++j)
      worst = std::max(
          worst, concealment_deficit(p, Distribution::point_mass(m, j)).deficit);
    for (int i = 0; i < std::min(omega_samples, 20); ++i)
      worst = std::max(worst,
                       concealment_deficit(p, Distribution(rng.simplex(m))).deficit);
    if (p.flavor() == Flavor::Perfect)
      out.push_back({"protocol.family_deficit_guarantee", worst <= 1e-10,
                     tagged(tag, "max deficit " + num(worst))});
    else if (p.flavor() == Flavor::Near)
      out.push_back({"protocol.family_deficit_guarantee",
                     worst <= std::ldexp(1.0, -p.N()) + 1e-9,
                     tagged(tag, "max deficit " + num(worst) + " vs 2^-N")});
  }

  UniversalCheat uc = universal_cheat(p);
  CheatReport rep;
  try {
    rep = alpha_beta_decomposition(p, uc.u_alice);
  } catch (const InvariantError& e) {
    out.push_back({"attack.sum_alpha_identity", false, tagged(tag, e.what())});
    return;
  }

  {
    const double mean_alpha =
        std::accumulate(rep.alphas.begin(), rep.alphas.end(), 0.0) / m;
    out.push_back({"attack.sum_alpha_identity",
                   std::abs(rep.delta_prime - mean_alpha) <= 1e-9,
                   tagged(tag, "|delta' - mean(alpha)| = " +
                                   num(std::abs(rep.delta_prime - mean_alpha)))});
    const double beta_sum =
        std::accumulate(rep.betas.begin(), rep.betas.end(), 0.0);
    out.push_back({"attack.sum_beta_zero", std::abs(beta_sum) <= 1e-9,
                   tagged(tag, "|sum(beta)| = " + num(std::abs(beta_sum)))});
    const bool c_ok = rep.delta_prime > 1e-12
                          ? (rep.c_estimate > 0.0 && rep.c_estimate <= m + 1e-12)
                          : rep.c_estimate == 0.0;
    out.push_back({"attack.c_estimate_range", c_ok,
                   tagged(tag, "c = " + num(rep.c_estimate) + ", m = " +
                                   std::to_string(m))});
  }

  {  // success beats the universal bound at extreme points and random mixes
    bool ok = true;
    double worst_margin = 1.0;
    auto eval = [&](const Distribution& omega) {
      const double s = cheat_success(p, omega, uc.u_alice);
      worst_margin = std::min(worst_margin, s - rep.bound);
      ok = ok && (s > rep.bound - 1e-9);
      try {
        weighted_moments(rep, omega);
      } catch (const InvariantError&) {
        ok = false;
      }
    };
    for (int j = 0; j < m; ++j) eval(Distribution::point_mass(m, j));
    out.push_back({"attack.extreme_point_bound", ok,
                   tagged(tag, "min margin " + num(worst_margin))});
    const int samples = std::max(50, omega_samples);
    for (int i = 0; i < samples; ++i) eval(Distribution(rng.simplex(m)));
    out.push_back({"attack.random_omega_bound", ok,
                   tagged(tag, "min margin " + num(worst_margin) + " over " +
                                   std::to_string(samples) + " samples")});
  }

  if (rep.delta_prime <= 1e-12) {  // exact concealment: the attack is perfect
    double worst = 1.0;
    for (int i = 0; i < 20; ++i)
      worst = std::min(
          worst, cheat_success(p, Distribution(rng.simplex(m)), uc.u_alice));
    out.push_back({"attack.perfect_case_success", worst >= 1.0 - 1e-9,
                   tagged(tag, "min success " + num(worst))});
  }

  {  // Bob-side rotations cannot move the success probability
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      const Distribution omega(rng.simplex(m));
      Operator on_xi(RegisterLayout({{"xi", m, Owner::BobAncilla}}), rng.unitary(m));
      worst = std::max(worst,
                       bob_unitary_invariance(p, omega, uc.u_alice, on_xi));
      Operator on_bob(RegisterLayout({{"B", p.d_B(), Owner::Bob},
                                      {"xi", m, Owner::BobAncilla}}),
                      rng.unitary(p.d_B() * m));
      worst = std::max(worst,
                       bob_unitary_invariance(p, omega, uc.u_alice, on_bob));
    }
    out.push_back({"attack.bob_local_invariance", worst <= 1e-10,
                   tagged(tag, "max success shift " + num(worst))});
  }

  {  // substitution: matching effective distribution is invisible to Alice
    const int n = 3;
    std::vector<Distribution> omegas;
    for (int k = 0; k < n; ++k) omegas.emplace_back(rng.simplex(m));
    const Distribution pk(rng.simplex(n));
    const MetaPurification mp = meta_purify(p, omegas, pk);
    const Distribution eff = effective_distribution(omegas, pk);
    double worst = 0.0;
    for (int b = 0; b < 2; ++b) {
      const JointPureState& meta = (b == 0) ? mp.state0 : mp.state1;
      worst = std::max(worst,
                       trace_distance(alice_visible(meta),
                                      alice_visible(appendix_state(p, eff, b))));
    }
    out.push_back({"protocol.substitution_indistinguishability", worst <= 1e-10,
                   tagged(tag, "max trace distance " + num(worst))});

    // reduction identity: the meta state cheats exactly like the effective mix
    const double meta_success =
        cheat_success_between(mp.state1, mp.state0, uc.u_alice);
    const double eff_success = cheat_success(p, eff, uc.u_alice);
    out.push_back({"protocol.reduction_identity",
                   std::abs(meta_success - eff_success) <= 1e-10,
                   tagged(tag, "|meta - effective| = " +
                                   num(std::abs(meta_success - eff_success)))});

    // collapse bookkeeping: branch weights sum to one, branches reproduce
    double prob_sum = 0.0, state_err = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto [prob, state] = collapse_ancilla(mp, 0, k);
      prob_sum += prob;
      const Complex o = overlap(state, committed_state(p, 0, omegas[k]));
      state_err = std::max(state_err, std::abs(1.0 - std::abs(o)));
    }
    const bool ok = std::abs(prob_sum - 1.0) <= 1e-10 && state_err <= 1e-10;
    out.push_back({"protocol.collapse_consistency", ok,
                   tagged(tag, "prob sum err " + num(std::abs(prob_sum - 1.0)) +
                                   ", state err " + num(state_err))});
  }

  if (p.flavor() == Flavor::Near) {  // deficit shrinks with the security parameter
    bool ok = true;
    double prev = 1.0;
    std::string trail;
    for (int n = 2; n <= 8; ++n) {
      const ProtocolInstance q = make_family(Flavor::Near, n, m, p.d_A());
      const double dp = universal_cheat(q).delta_prime;
      ok = ok && dp <= prev + 1e-9 && dp <= std::ldexp(1.0, -n) + 1e-9;
      prev = dp;
    }
    out.push_back({"attack.delta_prime_monotone", ok,
                   tagged(tag, "N = 2..8 at m = " + std::to_string(m))});
  }
}

}  // namespace

std::vector<CheckResult> run_verify(const ExperimentConfig& cfg) {
  std::vector<CheckResult> out;
  Rng rng(cfg.seed);
  check_hilbert(out, rng);
  check_fidelity(out, rng);

  if (cfg.protocol.flavor == Flavor::Custom) {
    // Validate the raw matrices first so a bad config names the exact
    // invariant instead of dying at construction.
    const CustomProtocolSpec& c = *cfg.protocol.custom;
    const double n0 = c.phi0.norm(), n1 = c.phi1.norm();
    const bool norm_ok =
        std::abs(n0 - 1.0) <= tol::norm && std::abs(n1 - 1.0) <= tol::norm;
    out.push_back({"protocol.states_normalized", norm_ok,
                   "|phi0| = " + num(n0) + ", |phi1| = " + num(n1)});
    double worst = 0.0;
    for (const CMat& v : c.actions) {
      CMat gram = v.adjoint() * v;
      gram.diagonal().array() -= 1.0;
      worst = std::max(worst, max_abs(gram));
    }
    const bool unit_ok = worst <= tol::unitary;
    out.push_back({"protocol.actions_unitary", unit_ok,
                   "max ||V'V - I|| = " + num(worst)});
    if (norm_ok && unit_ok)
      check_instance(out, "custom", build_protocol(cfg.protocol),
                     cfg.omega_samples, rng);
    return out;
  }

  for (Flavor f : {Flavor::Perfect, Flavor::Near}) {
    const ProtocolInstance p =
        make_family(f, cfg.protocol.N, cfg.protocol.m, cfg.protocol.d);
    const std::string tag = (f == Flavor::Perfect) ? "perfect" : "near";
    out.push_back({"protocol.states_normalized", true, tagged(tag, "constructed")});
    out.push_back({"protocol.actions_unitary", true, tagged(tag, "constructed")});
    check_instance(out, tag, p, cfg.omega_samples, rng);
  }
  return out;
}

std::string verify_to_json(const std::vector<CheckResult>& results,
                           std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["checks"] = nlohmann::ordered_json::array();
  bool all = true;
  for (const CheckResult& r : results) {
    nlohmann::ordered_json c;
    c["id"] = r.id;
    c["passed"] = r.passed;
    c["detail"] = r.detail;
    j["checks"].push_back(c);
    all = all && r.passed;
  }
  j["all_passed"] = all;
  return j.dump(2) + "\n";
}

}  // namespace qbc
