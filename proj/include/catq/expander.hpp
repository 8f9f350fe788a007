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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "catq/kernels.hpp"
#include "catq/qcore.hpp"

namespace catq {

using LatticePoint = std::array<std::int64_t, 2>;

struct AffineMap {
  std::array<std::array<std::int64_t, 2>, 2> linear{};
  LatticePoint offset{};
  std::int64_t modulus = 1;

  LatticePoint operator()(const LatticePoint& v) const;
  // v -> T^-1 (v - b)
  AffineMap inverse() const;
};

// T1 v, T2 v, T1 v + e1, T2 v + e2, then the four inverses.
std::vector<AffineMap> margulis_maps(std::size_t e);
// perms[j][x] = index of map_j(point x), x = a * e + b.
kernels::PermutationTable lattice_permutations(std::size_t e);

// S(P)(x) = (1/8) sum_j P(map_j(x)). P indexed by a * e + b.
std::vector<double> classical_step(std::span<const double> p, std::size_t e);
// Second largest |eigenvalue| of the walk operator.
double walk_second_eigenvalue(std::size_t e);

constexpr double kMargulisRate = 0.88388347648318440550;  // 5 sqrt(2) / 8

// Real d x d array over phase space points (p, q), stored q-major so that
// each fixed-q line is contiguous.
class WignerFunction {
 public:
  WignerFunction(std::size_t d, std::vector<double> values);

  std::size_t dim() const { return d_; }
  double at(std::size_t p, std::size_t q) const { return values_[q * d_ + p]; }
  std::span<const double> column(std::size_t q) const {
    return {values_.data() + q * d_, d_};
  }
  const std::vector<double>& values() const { return values_; }
  double sum() const;
  double two_norm() const;

 private:
  std::size_t d_;
  std::vector<double> values_;
};

// W(p, q) = (1/d) tr(w(p,q) Pi w(p,q)^dagger M). Odd d; M Hermitian.
WignerFunction wigner_from_state(const DensityMatrix& rho);
WignerFunction wigner_of(const ComplexMatrix& hermitian);
ComplexMatrix state_from_wigner(const WignerFunction& w);

// Applies the eight lattice maps to every q-line at once and averages.
WignerFunction expander_channel_step(const WignerFunction& w);
ComplexMatrix expander_channel_step(const ComplexMatrix& rho);

struct ExpanderSpec {
  std::size_t e = 3;
  std::size_t d = 9;
  std::size_t k = 0;
  static ExpanderSpec make(std::size_t e, std::size_t k);
};

struct ConvergenceRow {
  std::size_t k = 0;
  double measured = 0.0;  // ||T^k(rho) - pi(rho)||_2
  double bound = 0.0;     // sqrt(2 d^3) (5 sqrt 2 / 8)^k
  double min_eigenvalue = 0.0;
};
struct ConvergenceReport {
  std::size_t e = 0;
  std::vector<ConvergenceRow> rows;  // k = 0..K
  double fitted_rate = 0.0;
  bool bound_satisfied = false;
  // `k,measured_2norm,bound`
  std::string csv() const;
};
ConvergenceReport expander_convergence(const ExpanderSpec& spec, const DensityMatrix& rho);

// Geometric rate from a least-squares line through log(values), using only
// the points above relative_floor * values[0].
double fitted_decay_rate(std::span<const double> values, double relative_floor);
constexpr double kDecayFitFloor = 1e-12;

}  // namespace catq
