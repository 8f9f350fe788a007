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

#include <cstdint>
#include <random>
#include <vector>

#include "catq/qcore.hpp"

namespace catq {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Independent generator for trial `index` under `master`. The same
// (master, index) pair always yields the same stream, whatever thread runs it.
Rng stream(std::uint64_t master, std::uint64_t index);

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
UnitaryOperator haar_unitary(std::size_t d, Rng& rng);
ComplexVector haar_pure_state(std::size_t d, Rng& rng);
// Hilbert-Schmidt measure: G G^dagger / tr.
DensityMatrix random_density_matrix(std::size_t d, Rng& rng);
// Uniform on the simplex.
std::vector<double> random_probability(std::size_t d, Rng& rng);

// rho' has a spectrum obtained from rho's by a random doubly stochastic
// matrix, so rho majorizes rho'. Both eigenbases are Haar random.
struct MajorizingPair {
  DensityMatrix rho;
  DensityMatrix rho_prime;
};
MajorizingPair random_majorizing_pair(std::size_t d, Rng& rng);

}  // namespace catq
