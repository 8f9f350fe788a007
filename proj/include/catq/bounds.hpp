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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "catq/dephaser.hpp"
#include "catq/qcore.hpp"

namespace catq {

DensityMatrix maximally_coherent_state(std::size_t d);

enum class RandomnessKind { Classical, Quantum };
std::string to_string(RandomnessKind kind);

struct EpsilonDephasingReport {
  std::size_t d = 0;
  std::size_t m = 0;
  RandomnessKind kind = RandomnessKind::Quantum;
  double epsilon_measured = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};
void to_json(nlohmann::json& j, const EpsilonDephasingReport& r);

// Maximally coherent state plus `count` Haar-random pure states from `seed`.
std::vector<DensityMatrix> default_probes(std::size_t d, std::uint64_t seed,
                                          std::size_t count = 20);

// Worst case over probes of ||E(rho) - pi(rho)||_1. The bound field carries
// the lower bound for the measured epsilon and satisfied = (m >= bound).
EpsilonDephasingReport measure_epsilon(const NoisyChannel& channel,
                                       const OrthonormalBasis& basis,
                                       const std::vector<DensityMatrix>& probes);

// max{2, d (1 - eps/2)} for 0 <= eps <= 2.
double classical_lower_bound(std::size_t d, double epsilon);
// max{2, d^((1-eps)/2) eps^(eps/2)} for 0 < eps <= 1/(6e); sqrt(d) at eps = 0.
double quantum_lower_bound(std::size_t d, double epsilon);
constexpr double kQuantumBoundEpsilonMax = 0.061313240195240384;  // 1 / (6e)
// Smallest integer m with m >= bound.
std::size_t minimal_dimension(double bound);

struct RankWitness {
  std::size_t rank = 0;
  std::size_t m = 0;
  double epsilon_measured = 0.0;
  // Smallest epsilon allowed by the rank: 2 (1 - rank / d).
  double epsilon_from_rank = 0.0;
  bool rank_within_m = false;
};
// Rank of E(|A><A|) for a classical mixture.
RankWitness rank_witness(const NoisyChannel& mixture);

// First d - 1 (or m) powers of Z.
NoisyChannel truncated_classical_channel(std::size_t d, std::size_t m);

struct EntropyBudget {
  std::size_t d = 0;
  std::size_t m = 0;
  double input_entropy = 0.0;    // S(|A><A|)
  double ancilla_entropy_in = 0.0;  // S(1/m)
  double joint_entropy = 0.0;    // S(U (|A><A| (x) 1/m) U^dagger)
  double output_entropy = 0.0;   // S(E(|A><A|))
  double ancilla_entropy_out = 0.0;
  bool chain_holds = false;
  bool saturated = false;
};
EntropyBudget entropy_budget_check(const NoisyChannel& dilation);

}  // namespace catq
