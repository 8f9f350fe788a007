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

namespace catq::kernels::omp {

namespace {

using Index = Eigen::Index;

std::vector<cplx> root_table(std::size_t d) {
  std::vector<cplx> table(d);
  for (std::size_t k = 0; k < d; ++k) {
    table[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                   static_cast<double>(d));
  }
  return table;
}

}  // namespace

void kron(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out) {
  const Index ra = a.rows();
  const Index ca = a.cols();
  const Index rb = b.rows();
  const Index cb = b.cols();
  out.resize(ra * rb, ca * cb);
#pragma omp parallel for collapse(2) schedule(static)
  for (Index i1 = 0; i1 < ra; ++i1)
    for (Index j1 = 0; j1 < ca; ++j1) out.block(i1 * rb, j1 * cb, rb, cb) = a(i1, j1) * b;
}

void partial_trace(const ComplexMatrix& op, const TraceIndex& index, ComplexMatrix& out) {
  const auto& ko = index.keep_offsets;
  const auto& to = index.trace_offsets;
  const auto n = static_cast<Index>(ko.size());
  out.setZero(n, n);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      cplx acc = 0.0;
      const std::size_t ri = ko[static_cast<std::size_t>(i)];
      const std::size_t cj = ko[static_cast<std::size_t>(j)];
      for (std::size_t t : to) acc += op(static_cast<Index>(ri + t), static_cast<Index>(cj + t));
      out(i, j) = acc;
    }
  }
}

void block_gram(std::span<const ComplexMatrix> left, std::span<const ComplexMatrix> right,
                ComplexMatrix& gram) {
  const auto nl = static_cast<Index>(left.size());
  const auto nr = static_cast<Index>(right.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (left[i].rows() != right[j].rows() || left[i].cols() != right[j].cols()) {
        throw DimensionError("block_gram: block shapes differ");
      }
    }
  }
  gram.resize(nl, nr);
#pragma omp parallel for collapse(2) schedule(static)
  for (Index i = 0; i < nl; ++i)
    for (Index j = 0; j < nr; ++j) {
      const ComplexMatrix& l = left[static_cast<std::size_t>(i)];
      const ComplexMatrix& r = right[static_cast<std::size_t>(j)];
      const cplx* lp = l.data();
      const cplx* rp = r.data();
      cplx acc = 0.0;
      for (Index k = 0; k < l.size(); ++k) acc += lp[k] * std::conj(rp[k]);
      gram(i, j) = acc;
    }
}

void weighted_conjugation(std::span<const ComplexMatrix> ops, std::span<const double> weights,
                          const ComplexMatrix& sigma, ComplexMatrix& out) {
  if (ops.size() != weights.size()) throw DimensionError("weighted_conjugation: size mismatch");
  const auto n = static_cast<Index>(ops.size());
  std::vector<ComplexMatrix> terms(ops.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    terms[k] = weights[k] * (ops[k] * sigma * ops[k].adjoint());
  }
  // Summed in index order so the result does not depend on the schedule.
  out.setZero(sigma.rows(), sigma.cols());
  for (const auto& t : terms) out += t;
}

void wigner_forward(const ComplexMatrix& rho, std::span<double> values) {
  const auto d = static_cast<std::size_t>(rho.rows());
  if (values.size() != d * d) throw DimensionError("wigner_forward: output size");
  const std::vector<cplx> roots = root_table(d);
  const auto nd = static_cast<Index>(d);
#pragma omp parallel for schedule(static)
  for (Index qi = 0; qi < nd; ++qi) {
    const auto q = static_cast<std::size_t>(qi);
    std::vector<cplx> line(d);
    for (std::size_t j = 0; j < d; ++j) {
      line[j] = rho(static_cast<Index>((q + j) % d), static_cast<Index>((q + d - j) % d));
    }
    for (std::size_t p = 0; p < d; ++p) {
      cplx acc = 0.0;
      // omega^(-2pj) = roots[(d - 2pj mod d) mod d]
      const std::size_t step = (2 * p) % d;
      std::size_t e = 0;
      for (std::size_t j = 0; j < d; ++j) {
        acc += roots[(d - e) % d] * line[j];
        e = (e + step) % d;
      }
      values[q * d + p] = acc.real() / static_cast<double>(d);
    }
  }
}

void wigner_inverse(std::span<const double> values, std::size_t d, ComplexMatrix& rho) {
  if (values.size() != d * d) throw DimensionError("wigner_inverse: input size");
  const std::vector<cplx> roots = root_table(d);
  const auto nd = static_cast<Index>(d);
  rho.setZero(nd, nd);
#pragma omp parallel for schedule(static)
  for (Index qi = 0; qi < nd; ++qi) {
    const auto q = static_cast<std::size_t>(qi);
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t step = (2 * j) % d;
      std::size_t e = 0;
      cplx acc = 0.0;
      for (std::size_t p = 0; p < d; ++p) {
        acc += values[q * d + p] * roots[e];
        e = (e + step) % d;
      }
      rho(static_cast<Index>((q + j) % d), static_cast<Index>((q + d - j) % d)) = acc;
    }
  }
}

void pullback_average(std::span<const double> in, std::size_t n,
                      const PermutationTable& perms, std::span<double> out) {
  if (n == 0 || in.size() % n != 0 || out.size() != in.size()) {
    throw DimensionError("pullback_average: sizes");
  }
  const double w = 1.0 / static_cast<double>(perms.size());
  const auto columns = static_cast<Index>(in.size() / n);
#pragma omp parallel for schedule(static)
  for (Index ci = 0; ci < columns; ++ci) {
    const std::size_t base = static_cast<std::size_t>(ci) * n;
    for (std::size_t x = 0; x < n; ++x) {
      double acc = 0.0;
      for (const auto& perm : perms) acc += in[base + perm[x]];
      out[base + x] = acc * w;
    }
  }
}

}  // namespace catq::kernels::omp
