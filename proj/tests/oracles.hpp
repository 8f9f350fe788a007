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

#pragma once

// Naive reference computations used by the tests. None of these call into the
// library's kernels; they work from definitions with explicit index loops.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "catq/qcore.hpp"

namespace oracle {

using catq::ComplexMatrix;
using catq::ComplexVector;
using catq::cplx;
using Index = Eigen::Index;

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index r = 0; r < out.rows(); ++r)
    for (Index c = 0; c < out.cols(); ++c)
      out(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
  return out;
}

inline ComplexVector basis_vector(Index d, Index i) {
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1.0;
  return v;
}

// Trace out the second factor of a (da * db) operator: sum_t (1 (x) <t|) A (1 (x) |t>).
inline ComplexMatrix trace_second(const ComplexMatrix& a, Index da, Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  const ComplexMatrix ia = ComplexMatrix::Identity(da, da);
  for (Index t = 0; t < db; ++t) {
    const ComplexMatrix e = kron(ia, basis_vector(db, t));
    out += e.adjoint() * a * e;
  }
  return out;
}

inline ComplexMatrix trace_first(const ComplexMatrix& a, Index da, Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  const ComplexMatrix ib = ComplexMatrix::Identity(db, db);
  for (Index t = 0; t < da; ++t) {
    const ComplexMatrix e = kron(basis_vector(da, t), ib);
    out += e.adjoint() * a * e;
  }
  return out;
}

inline double trace_norm(const ComplexMatrix& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues().sum();
}

inline double frobenius(const ComplexMatrix& a) {
  double acc = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

inline double entropy_bits(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0) s -= x * std::log2(x);
  return s;
}

inline std::vector<double> eigenvalues(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a);
  std::vector<double> out;
  for (Index i = 0; i < a.rows(); ++i) out.push_back(solver.eigenvalues()(i).real());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline double entropy(const ComplexMatrix& rho) {
  std::vector<double> ev = eigenvalues(rho);
  for (double& x : ev)
    if (x < 1e-14) x = 0.0;
  return entropy_bits(ev);
}

// Projectors onto each basis vector, summed.
inline ComplexMatrix pinch(const ComplexMatrix& rho, const ComplexMatrix& basis) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (Index i = 0; i < basis.cols(); ++i) {
    const ComplexMatrix p = basis.col(i) * basis.col(i).adjoint();
    out += p * rho * p;
  }
  return out;
}

inline cplx omega(Index d, long long k) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
}

inline ComplexMatrix shift(Index d) {
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) x((i + 1) % d, i) = 1.0;
  return x;
}

inline ComplexMatrix clock(Index d) {
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) z(i, i) = omega(d, i);
  return z;
}

inline ComplexMatrix power(const ComplexMatrix& a, long long k) {
  ComplexMatrix out = ComplexMatrix::Identity(a.rows(), a.cols());
  for (long long i = 0; i < k; ++i) out = out * a;
  return out;
}

// Wigner function straight from (1/d) tr(w Pi w^dagger M), w = tau^(pq) X^q Z^p.
inline std::vector<double> wigner(const ComplexMatrix& m) {
  const Index d = m.rows();
  const cplx tau = -std::polar(1.0, std::numbers::pi / static_cast<double>(d));
  ComplexMatrix parity = ComplexMatrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) parity((d - j) % d, j) = 1.0;
  std::vector<double> w(static_cast<std::size_t>(d * d));
  for (Index p = 0; p < d; ++p)
    for (Index q = 0; q < d; ++q) {
      const ComplexMatrix disp = std::pow(tau, static_cast<double>(p * q)) *
                                 power(shift(d), q) * power(clock(d), p);
      const cplx v = (disp * parity * disp.adjoint() * m).trace() / static_cast<double>(d);
      w[static_cast<std::size_t>(q * d + p)] = v.real();
    }
  return w;
}

inline ComplexMatrix haar_like(Index d, unsigned seed) {
  // Independent of the library generator: QR of a matrix from std::minstd_rand.
  std::minstd_rand rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = cplx(n(rng), n(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return ComplexMatrix(Eigen::MatrixXcd(qr.householderQ()));
}

inline ComplexMatrix random_state(Index d, unsigned seed) {
  std::minstd_rand rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = cplx(n(rng), n(rng));
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline double max_abs(const ComplexMatrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace oracle
