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

#include <cmath>
#include <numbers>

#include "catq/error.hpp"
#include "catq/kernels.hpp"

namespace catq::kernels::serial {

void kron(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out) {
  const auto rb = b.rows();
  const auto cb = b.cols();
  out.resize(a.rows() * rb, a.cols() * cb);
  for (Eigen::Index i1 = 0; i1 < a.rows(); ++i1)
    for (Eigen::Index i2 = 0; i2 < rb; ++i2)
      for (Eigen::Index j1 = 0; j1 < a.cols(); ++j1)
        for (Eigen::Index j2 = 0; j2 < cb; ++j2)
          out(i1 * rb + i2, j1 * cb + j2) = a(i1, j1) * b(i2, j2);
}

void partial_trace(const ComplexMatrix& op, const TraceIndex& index, ComplexMatrix& out) {
  const auto& ko = index.keep_offsets;
  const auto& to = index.trace_offsets;
  const auto n = static_cast<Eigen::Index>(ko.size());
  out.setZero(n, n);
  for (std::size_t i = 0; i < ko.size(); ++i)
    for (std::size_t j = 0; j < ko.size(); ++j) {
      cplx acc = 0.0;
      for (std::size_t t : to) {
        acc += op(static_cast<Eigen::Index>(ko[i] + t), static_cast<Eigen::Index>(ko[j] + t));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
}

void block_gram(std::span<const ComplexMatrix> left, std::span<const ComplexMatrix> right,
                ComplexMatrix& gram) {
  gram.resize(static_cast<Eigen::Index>(left.size()),
              static_cast<Eigen::Index>(right.size()));
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) {
      const ComplexMatrix& l = left[i];
      const ComplexMatrix& r = right[j];
      if (l.rows() != r.rows() || l.cols() != r.cols()) {
        throw DimensionError("block_gram: block shapes differ");
      }
      cplx acc = 0.0;
      for (Eigen::Index a = 0; a < l.rows(); ++a)
        for (Eigen::Index b = 0; b < l.cols(); ++b) acc += l(a, b) * std::conj(r(a, b));
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
}

void weighted_conjugation(std::span<const ComplexMatrix> ops, std::span<const double> weights,
                          const ComplexMatrix& sigma, ComplexMatrix& out) {
  if (ops.size() != weights.size()) throw DimensionError("weighted_conjugation: size mismatch");
  out.setZero(sigma.rows(), sigma.cols());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    out += weights[i] * (ops[i] * sigma * ops[i].adjoint());
  }
}

namespace {

std::size_t mod(long long x, std::size_t d) {
  const auto n = static_cast<long long>(d);
  return static_cast<std::size_t>(((x % n) + n) % n);
}

cplx root(std::size_t d, long long k) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod(k, d)) /
                             static_cast<double>(d));
}

}  // namespace

void wigner_forward(const ComplexMatrix& rho, std::span<double> values) {
  const auto d = static_cast<std::size_t>(rho.rows());
  if (values.size() != d * d) throw DimensionError("wigner_forward: output size");
  for (std::size_t q = 0; q < d; ++q)
    for (std::size_t p = 0; p < d; ++p) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const auto row = static_cast<Eigen::Index>((q + j) % d);
        const auto col = static_cast<Eigen::Index>(mod(static_cast<long long>(q) -
                                                       static_cast<long long>(j), d));
        acc += root(d, -2LL * static_cast<long long>(p * j)) * rho(row, col);
      }
      values[q * d + p] = acc.real() / static_cast<double>(d);
    }
}

void wigner_inverse(std::span<const double> values, std::size_t d, ComplexMatrix& rho) {
  if (values.size() != d * d) throw DimensionError("wigner_inverse: input size");
  const auto n = static_cast<Eigen::Index>(d);
  rho.setZero(n, n);
  for (std::size_t q = 0; q < d; ++q)
    for (std::size_t j = 0; j < d; ++j) {
      cplx acc = 0.0;
      for (std::size_t p = 0; p < d; ++p) {
        acc += values[q * d + p] * root(d, 2LL * static_cast<long long>(p * j));
      }
      const auto row = static_cast<Eigen::Index>((q + j) % d);
      const auto col = static_cast<Eigen::Index>(mod(static_cast<long long>(q) -
                                                     static_cast<long long>(j), d));
      rho(row, col) = acc;
    }
}

void pullback_average(std::span<const double> in, std::size_t n,
                      const PermutationTable& perms, std::span<double> out) {
  if (n == 0 || in.size() % n != 0 || out.size() != in.size()) {
    throw DimensionError("pullback_average: sizes");
  }
  const double w = 1.0 / static_cast<double>(perms.size());
  for (std::size_t c = 0; c < in.size() / n; ++c)
    for (std::size_t x = 0; x < n; ++x) {
      double acc = 0.0;
      for (const auto& perm : perms) acc += in[c * n + perm[x]];
      out[c * n + x] = acc * w;
    }
}

}  // namespace catq::kernels::serial
