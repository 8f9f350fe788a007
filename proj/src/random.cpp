// Copyright 2026 The catq Authors.
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

#include "catq/random.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

namespace catq {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng stream(std::uint64_t master, std::uint64_t index) {
  const std::uint64_t a = splitmix64(master);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  return g;
}

UnitaryOperator haar_unitary(std::size_t d, Rng& rng) {
  // QR of a Ginibre matrix with the phases of R's diagonal moved into Q.
  Eigen::MatrixXcd g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const cplx diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return UnitaryOperator(ComplexMatrix(q));
}

ComplexVector haar_pure_state(std::size_t d, Rng& rng) {
  ComplexVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

DensityMatrix random_density_matrix(std::size_t d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(rho));
}

std::vector<double> random_probability(std::size_t d, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(d);
  double total = 0.0;
  for (double& x : p) {
    x = expo(rng);
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

MajorizingPair random_majorizing_pair(std::size_t d, Rng& rng) {
  const std::vector<double> lambda = random_probability(d, rng);
  // Doubly stochastic matrix as a random convex mixture of permutations.
  const std::vector<double> weights = random_probability(d, rng);
  std::vector<double> mu(d, 0.0);
  std::vector<std::size_t> perm(d);
  for (std::size_t k = 0; k < d; ++k) perm[k] = k;
  for (std::size_t w = 0; w < d; ++w) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t k = 0; k < d; ++k) mu[k] += weights[w] * lambda[perm[k]];
  }
  auto rotated = [&](const std::vector<double>& spec) {
    const ComplexMatrix u = haar_unitary(d, rng).matrix();
    ComplexMatrix diag = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                             static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < d; ++k) {
      diag(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = spec[k];
    }
    ComplexMatrix m = u * diag * u.adjoint();
    m = 0.5 * (m + m.adjoint());
    return DensityMatrix(std::move(m));
  };
  DensityMatrix rho = rotated(lambda);
  DensityMatrix rho_prime = rotated(mu);
  return MajorizingPair{std::move(rho), std::move(rho_prime)};
}

}  // namespace catq
