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

#include "qbc/random.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>

#include "qbc/errors.hpp"

namespace qbc {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed ^ (stream * 0x9E3779B97F4A7C15ull);
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  // 53 high bits -> [0, 1); avoids distribution objects, whose output is
  // implementation-defined.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) / std::sqrt(2.0);
}

int Rng::index(int n) {
  if (n < 1) throw LayoutError("rng: index range must be positive");
  const int k = static_cast<int>(uniform() * n);
  return k < n ? k : n - 1;
}

std::vector<double> Rng::simplex(int m) {
  if (m < 1) throw LayoutError("rng: simplex size must be positive");
  std::vector<double> w(m);
  double sum = 0.0;
  for (double& x : w) {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    x = -std::log(u);  // unit exponential; normalized vector is flat on the simplex
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

CVec Rng::state(int dim) {
  if (dim < 1) throw LayoutError("rng: state dimension must be positive");
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = complex_gaussian();
  const double n = v.norm();
  if (n == 0.0) return state(dim);  // astronomically unlikely
  return v / n;
}

CMat Rng::unitary(int dim) {
  if (dim < 1) throw LayoutError("rng: unitary dimension must be positive");
  CMat g(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) g(r, c) = complex_gaussian();
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the column phases so the factorization has positive diagonal;
  // this makes the distribution Haar and the output deterministic.
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    q.col(i) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

CMat Rng::density(int dim) {
  if (dim < 1) throw LayoutError("rng: density dimension must be positive");
  CMat g(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) g(r, c) = complex_gaussian();
  CMat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace qbc
