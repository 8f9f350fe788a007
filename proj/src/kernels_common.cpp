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

#include <algorithm>
#include <numeric>

#include "catq/error.hpp"
#include "catq/kernels.hpp"

namespace catq::kernels {

namespace {

// Offsets of every multi-index over `factors`, last factor fastest.
std::vector<std::size_t> enumerate_offsets(const std::vector<std::size_t>& factors,
                                           std::span<const std::size_t> dims,
                                           const std::vector<std::size_t>& strides) {
  std::size_t count = 1;
  for (std::size_t f : factors) count *= dims[f];
  std::vector<std::size_t> offsets(count, 0);
  std::vector<std::size_t> digit(factors.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) off += digit[k] * strides[factors[k]];
    offsets[n] = off;
    for (std::size_t k = factors.size(); k-- > 0;) {
      if (++digit[k] < dims[factors[k]]) break;
      digit[k] = 0;
    }
  }
  return offsets;
}

}  // namespace

TraceIndex make_trace_index(std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw DimensionError("partial_trace: repeated factor in keep set");
  }
  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (!std::binary_search(kept.begin(), kept.end(), f)) traced.push_back(f);
  }
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t f = dims.size(); f-- > 1;) strides[f - 1] = strides[f] * dims[f];
  return TraceIndex{enumerate_offsets(kept, dims, strides),
                    enumerate_offsets(traced, dims, strides)};
}

}  // namespace catq::kernels
