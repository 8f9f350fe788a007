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

// Hot loops used by the channel code. Each kernel exists twice with the same
// signature: a plain serial reference and an OpenMP version. Callers go
// through the unqualified names in catq::kernels, which forward to the OpenMP
// version. The serial versions are kept for testing and benchmarking.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "catq/qcore.hpp"

namespace catq::kernels {

// Row-major offsets so that full index = keep_offsets[i] + trace_offsets[t].
struct TraceIndex {
  std::vector<std::size_t> keep_offsets;
  std::vector<std::size_t> trace_offsets;
};
TraceIndex make_trace_index(std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

// One permutation of {0..n-1} per map; out[x] = mean_j in[perm_j[x]].
using PermutationTable = std::vector<std::vector<std::size_t>>;

#define CATQ_KERNEL_DECLS                                                     \
  void kron(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out); \
  void partial_trace(const ComplexMatrix& op, const TraceIndex& index,       \
                     ComplexMatrix& out);                                    \
  /* gram(i, j) = tr(left_i right_j^dagger) */                               \
  void block_gram(std::span<const ComplexMatrix> left,                       \
                  std::span<const ComplexMatrix> right, ComplexMatrix& gram); \
  /* out = sum_i w_i U_i sigma U_i^dagger */                                 \
  void weighted_conjugation(std::span<const ComplexMatrix> ops,              \
                            std::span<const double> weights,                 \
                            const ComplexMatrix& sigma, ComplexMatrix& out); \
  /* values[q * d + p] = (1/d) sum_j omega^(-2pj) rho(q+j, q-j) */           \
  void wigner_forward(const ComplexMatrix& rho, std::span<double> values);   \
  void wigner_inverse(std::span<const double> values, std::size_t d,         \
                      ComplexMatrix& rho);                                   \
  /* each length-n column c: out[c*n + x] = mean_j in[c*n + perm_j[x]] */    \
  void pullback_average(std::span<const double> in, std::size_t n,           \
                        const PermutationTable& perms, std::span<double> out);

namespace serial {
CATQ_KERNEL_DECLS
}  // namespace serial

namespace omp {
CATQ_KERNEL_DECLS
}  // namespace omp

#undef CATQ_KERNEL_DECLS

using omp::block_gram;
using omp::kron;
using omp::partial_trace;
using omp::pullback_average;
using omp::weighted_conjugation;
using omp::wigner_forward;
using omp::wigner_inverse;

}  // namespace catq::kernels
