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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qbc/errors.hpp"
#include "qbc/fidelity.hpp"
#include "qbc/random.hpp"
#include "test_support.hpp"

using namespace qbc;

namespace {

RegisterLayout single(int d) {
  return RegisterLayout({{"A", d, Owner::Alice}});
}

DensityOperator pure_density(const RegisterLayout& l, const CVec& psi) {
  return DensityOperator(l, psi * psi.adjoint());
}

}  // namespace

TEST_CASE("fidelity of a state with itself is one") {
  Rng rng(501);
  RegisterLayout l = single(4);
  DensityOperator rho(l, rng.density(4));
  FidelityResult f = uhlmann_fidelity(rho, rho);
  CHECK(std::abs(f.value - 1.0) < 1e-10);
  CHECK(f.deficit == 1.0 - f.value);
}

TEST_CASE("fidelity of orthogonal pure states is zero") {
  RegisterLayout l = single(2);
  CVec e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  CHECK(uhlmann_fidelity(pure_density(l, e0), pure_density(l, e1)).value < 1e-10);
}

TEST_CASE("fidelity of |0><0| against the maximally mixed state is 1/sqrt(2)") {
  RegisterLayout l = single(2);
  CVec e0(2);
  e0 << 1, 0;
  DensityOperator mixed(l, 0.5 * CMat::Identity(2, 2));
  const double f = uhlmann_fidelity(pure_density(l, e0), mixed).value;
  CHECK(std::abs(f - 0.7071067811865476) < 1e-12);
}

TEST_CASE("pure-vs-mixed fidelity matches the sqrt expectation oracle") {
  Rng rng(502);
  RegisterLayout l = single(3);
  for (int t = 0; t < 10; ++t) {
    const CVec psi = rng.state(3);
    const CMat rho = rng.density(3);
    const double got =
        uhlmann_fidelity(pure_density(l, psi), DensityOperator(l, rho)).value;
    // rank-deficient rho1: sqrtm lifts eigenvalue noise to sqrt(eps) ~ 1e-8
    CHECK(std::abs(got - oracle::pure_vs_mixed_fidelity(psi, rho)) < 1e-8);
  }
}

TEST_CASE("diagonal fidelity matches the Bhattacharyya sum") {
  Rng rng(503);
  RegisterLayout l = single(4);
  for (int t = 0; t < 10; ++t) {
    const std::vector<double> p = rng.simplex(4), q = rng.simplex(4);
    CMat dp = CMat::Zero(4, 4), dq = CMat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
      dp(i, i) = p[i];
      dq(i, i) = q[i];
    }
    const double got =
        uhlmann_fidelity(DensityOperator(l, dp), DensityOperator(l, dq)).value;
    CHECK(std::abs(got - oracle::diagonal_fidelity(p, q)) < 1e-10);
  }
}

TEST_CASE("fidelity is symmetric and unitarily invariant") {
  Rng rng(504);
  RegisterLayout l = single(4);
  DensityOperator rho(l, rng.density(4));
  DensityOperator sig(l, rng.density(4));
  CHECK(std::abs(uhlmann_fidelity(rho, sig).value -
                 uhlmann_fidelity(sig, rho).value) < 1e-9);
  const CMat u = rng.unitary(4);
  DensityOperator rho2(l, u * rho.matrix() * u.adjoint());
  DensityOperator sig2(l, u * sig.matrix() * u.adjoint());
  CHECK(std::abs(uhlmann_fidelity(rho, sig).value -
                 uhlmann_fidelity(rho2, sig2).value) < 1e-9);
}

TEST_CASE("fidelity rejects mismatched dimensions") {
  Rng rng(505);
  DensityOperator a(single(2), rng.density(2));
  DensityOperator b(single(3), rng.density(3));
  CHECK_THROWS_AS(uhlmann_fidelity(a, b), LayoutError);
}

TEST_CASE("mixing away from rho never raises fidelity") {
  Rng rng(506);
  RegisterLayout l = single(3);
  for (int t = 0; t < 5; ++t) {
    DensityOperator rho(l, rng.density(3));
    const CMat sigma = rng.density(3);
    double prev = 1.0;
    for (int g = 0; g <= 10; ++g) {
      const double w = g / 10.0;
      DensityOperator mix(l, (1.0 - w) * rho.matrix() + w * sigma);
      const double f = uhlmann_fidelity(rho, mix).value;
      CHECK(f <= prev + 1e-9);
      prev = f;
    }
  }
}

TEST_CASE("trace distance separates orthogonal states and vanishes on equals") {
  RegisterLayout l = single(2);
  CVec e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  CHECK(std::abs(trace_distance(pure_density(l, e0), pure_density(l, e1)) - 1.0) <
        1e-12);
  CHECK(trace_distance(pure_density(l, e0), pure_density(l, e0)) < 1e-14);
}

TEST_CASE("canonical purification of a pure state is a product") {
  RegisterLayout l = single(2);
  CVec e0(2);
  e0 << 1, 0;
  JointPureState pur = canonical_purification(pure_density(l, e0));
  // reduced state on the original register reproduces |0><0|
  DensityOperator back = partial_trace(pur, {"A"});
  CHECK(max_abs(back.matrix() - e0 * e0.adjoint()) < 1e-10);
  // purity of the ancilla marginal: product state
  DensityOperator anc = partial_trace(pur, {"purifier"});
  CHECK(std::abs((anc.matrix() * anc.matrix()).trace().real() - 1.0) < 1e-10);
}

TEST_CASE("canonical purification of the maximally mixed state is Bell-type") {
  RegisterLayout l = single(2);
  DensityOperator mixed(l, 0.5 * CMat::Identity(2, 2));
  JointPureState pur = canonical_purification(mixed);
  // maximally entangled: both marginals are I/2
  DensityOperator on_a = partial_trace(pur, {"A"});
  DensityOperator on_anc = partial_trace(pur, {"purifier"});
  CHECK(max_abs(on_a.matrix() - 0.5 * CMat::Identity(2, 2)) < 1e-10);
  CHECK(max_abs(on_anc.matrix() - 0.5 * CMat::Identity(2, 2)) < 1e-10);
}

TEST_CASE("canonical purification round-trips random densities") {
  Rng rng(507);
  RegisterLayout l = single(3);
  for (int t = 0; t < 10; ++t) {
    DensityOperator rho(l, rng.density(3));
    JointPureState pur = canonical_purification(rho);
    DensityOperator back = partial_trace(pur, {"A"});
    CHECK(max_abs(back.matrix() - rho.matrix()) < 1e-10);
  }
}

TEST_CASE("max purification overlap of a state with itself is one") {
  Rng rng(508);
  RegisterLayout l = support::qubit_ab();
  JointPureState s(l, rng.state(4));
  OverlapResult r = max_purification_overlap(s, s, {"A"});
  CHECK(std::abs(r.value - 1.0) < 1e-10);
  // maximizer is the identity up to global phase
  CHECK(oracle::phase_aligned_distance(CMat::Identity(2, 2),
                                       r.maximizer.matrix()) < 1e-9);
}

TEST_CASE("orthogonal Bob-side supports give zero overlap") {
  // A x B with B dim 4: psi0 lives on B in {0,1}, psi1 on B in {2,3}.
  RegisterLayout l({{"A", 2, Owner::Alice}, {"B", 4, Owner::Bob}});
  CVec a0 = CVec::Zero(8), a1 = CVec::Zero(8);
  a0(0) = a0(4 + 1) = 1.0 / std::sqrt(2.0);
  a1(2) = a1(4 + 3) = 1.0 / std::sqrt(2.0);
  OverlapResult r =
      max_purification_overlap(JointPureState(l, a1), JointPureState(l, a0), {"A"});
  CHECK(r.value < 1e-10);
}

TEST_CASE("purification overlap equals reduced-state fidelity") {
  Rng rng(509);
  RegisterLayout l({{"A", 3, Owner::Alice}, {"B", 3, Owner::Bob}});
  for (int t = 0; t < 20; ++t) {
    JointPureState s1(l, rng.state(9));
    JointPureState s0(l, rng.state(9));
    const double via_overlap = max_purification_overlap(s1, s0, {"A"}).value;
    const double via_density =
        uhlmann_fidelity(partial_trace(s1, {"B"}), partial_trace(s0, {"B"})).value;
    CHECK(std::abs(via_overlap - via_density) < 1e-8);
  }
}

TEST_CASE("the returned maximizer attains the reported overlap") {
  Rng rng(510);
  RegisterLayout l({{"A", 3, Owner::Alice}, {"B", 2, Owner::Bob}});
  for (int t = 0; t < 10; ++t) {
    JointPureState s1(l, rng.state(6));
    JointPureState s0(l, rng.state(6));
    OverlapResult r = max_purification_overlap(s1, s0, {"A"});
    const Complex attained = overlap(s1, apply(r.maximizer, s0));
    CHECK(std::abs(std::abs(attained) - r.value) < 1e-9);
    // phase-absorbed convention: the attained overlap is real nonnegative
    CHECK(attained.real() > -1e-9);
    CHECK(std::abs(attained.imag()) < 1e-9);
    // no unitary found by random search does better
    for (int k = 0; k < 5; ++k) {
      Operator u(RegisterLayout({{"A", 3, Owner::Alice}}), rng.unitary(3));
      CHECK(std::abs(overlap(s1, apply(u, s0))) <= r.value + 1e-9);
    }
  }
}

TEST_CASE("max purification overlap rejects bad register subsets") {
  Rng rng(511);
  RegisterLayout l = support::qubit_ab();
  JointPureState s1(l, rng.state(4));
  JointPureState s0(l, rng.state(4));
  CHECK_THROWS_AS(max_purification_overlap(s1, s0, {}), LayoutError);
  CHECK_THROWS_AS(max_purification_overlap(s1, s0, {"A", "B"}), LayoutError);
  CHECK_THROWS_AS(max_purification_overlap(s1, s0, {"C"}), LayoutError);
}
