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

#include "catq/weyl.hpp"

#include <cmath>
#include <numbers>

#include "catq/error.hpp"

namespace catq {

namespace {

long long mod(long long x, std::size_t m) {
  const auto n = static_cast<long long>(m);
  return ((x % n) + n) % n;
}

void require_at_least_two(std::size_t d, const char* what) {
  if (d < 2) throw PreconditionError(std::string(what) + ": dimension must be at least 2");
}

void require_odd(std::size_t d, const char* what) {
  if (d % 2 == 0 || d < 3) throw PreconditionError(std::string(what) + ": d must be odd and >= 3");
}

}  // namespace

UnitaryOperatorBasis::UnitaryOperatorBasis(std::size_t m, std::vector<ComplexMatrix> ops)
    : m_(m), ops_(std::move(ops)) {
  for (const auto& op : ops_) {
    if (static_cast<std::size_t>(op.rows()) != m || op.rows() != op.cols()) {
      throw DimensionError("UnitaryOperatorBasis: operator has the wrong size");
    }
  }
}

cplx root_of_unity(std::size_t m, long long k) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod(k, m)) /
                             static_cast<double>(m));
}

cplx weyl_tau(std::size_t m) {
  return -std::polar(1.0, std::numbers::pi / static_cast<double>(m));
}

UnitaryOperator shift_x(std::size_t d) {
  require_at_least_two(d, "shift_x");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) x((i + 1) % n, i) = 1.0;
  return UnitaryOperator::trusted(std::move(x));
}

UnitaryOperator clock_z(std::size_t d) {
  require_at_least_two(d, "clock_z");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix z = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) z(j, j) = root_of_unity(d, j);
  return UnitaryOperator::trusted(std::move(z));
}

ComplexMatrix pauli_op(std::size_t m, long long r, long long s) {
  // (X^r Z^s)|j> = omega^(s j) |j + r>
  const auto n = static_cast<Eigen::Index>(m);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  const long long rr = mod(r, m);
  for (Eigen::Index j = 0; j < n; ++j) {
    u((j + rr) % n, j) = root_of_unity(m, mod(s, m) * j);
  }
  return u;
}

cplx weyl_tau_power(std::size_t m, long long e) {
  const long long k = mod(e, 2 * m);
  const double sign = k % 2 == 0 ? 1.0 : -1.0;
  return sign * std::polar(1.0, std::numbers::pi * static_cast<double>(k) /
                                    static_cast<double>(m));
}

ComplexMatrix weyl_op(std::size_t m, long long r, long long s) {
  return weyl_tau_power(m, r * s) * pauli_op(m, r, s);
}

UnitaryOperatorBasis weyl_basis(std::size_t m) {
  require_at_least_two(m, "weyl_basis");
  std::vector<ComplexMatrix> ops;
  ops.reserve(m * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) {
      ops.push_back(weyl_op(m, static_cast<long long>(r), static_cast<long long>(s)));
    }
  return UnitaryOperatorBasis(m, std::move(ops));
}

UnitaryOperatorBasis pauli_basis(std::size_t m) {
  require_at_least_two(m, "pauli_basis");
  std::vector<ComplexMatrix> ops;
  ops.reserve(m * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) {
      ops.push_back(pauli_op(m, static_cast<long long>(r), static_cast<long long>(s)));
    }
  return UnitaryOperatorBasis(m, std::move(ops));
}

std::pair<OrthonormalBasis, OrthonormalBasis> mub_pair(std::size_t d) {
  require_at_least_two(d, "mub_pair");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) f(j, k) = norm * root_of_unity(d, j * k);
  return {OrthonormalBasis::computational(d), OrthonormalBasis(std::move(f))};
}

UnitaryOperator weyl_displacement(std::size_t d, long long p, long long q) {
  require_odd(d, "weyl_displacement");
  // tau^(pq) X^q Z^p
  return UnitaryOperator::trusted(weyl_op(d, q, p));
}

UnitaryOperator parity_operator(std::size_t d) {
  require_odd(d, "parity_operator");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix pi = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) pi((n - j) % n, j) = 1.0;
  return UnitaryOperator::trusted(std::move(pi));
}

}  // namespace catq
