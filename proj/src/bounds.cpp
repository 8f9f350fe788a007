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

#include "catq/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "catq/error.hpp"
#include "catq/random.hpp"
#include "catq/weyl.hpp"

namespace catq {

namespace {
constexpr double kIntegerSlack = 1e-9;
constexpr double kEntropySlack = 1e-9;
}  // namespace

DensityMatrix maximally_coherent_state(std::size_t d) {
  if (d < 2) throw PreconditionError("maximally_coherent_state: d must be at least 2");
  const auto n = static_cast<Eigen::Index>(d);
  return DensityMatrix::pure(ComplexVector::Ones(n) / std::sqrt(static_cast<double>(d)));
}

std::string to_string(RandomnessKind kind) {
  return kind == RandomnessKind::Classical ? "classical" : "quantum";
}

void to_json(nlohmann::json& j, const EpsilonDephasingReport& r) {
  j = nlohmann::json{{"d", r.d},
                     {"m", r.m},
                     {"kind", to_string(r.kind)},
                     {"epsilon_measured", r.epsilon_measured},
                     {"bound", r.bound},
                     {"satisfied", r.satisfied}};
}

std::vector<DensityMatrix> default_probes(std::size_t d, std::uint64_t seed, std::size_t count) {
  std::vector<DensityMatrix> probes{maximally_coherent_state(d)};
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = stream(seed, i);
    probes.push_back(DensityMatrix::pure(haar_pure_state(d, rng)));
  }
  return probes;
}

double classical_lower_bound(std::size_t d, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 2.0)) {
    throw PreconditionError("classical_lower_bound: epsilon must lie in [0, 2]");
  }
  return std::max(2.0, static_cast<double>(d) * (1.0 - epsilon / 2.0));
}

double quantum_lower_bound(std::size_t d, double epsilon) {
  const double dd = static_cast<double>(d);
  if (epsilon == 0.0) return std::max(2.0, std::sqrt(dd));
  if (!(epsilon > 0.0 && epsilon <= kQuantumBoundEpsilonMax)) {
    throw PreconditionError("quantum_lower_bound: epsilon must lie in [0, 1/(6e)]");
  }
  return std::max(2.0, std::pow(dd, (1.0 - epsilon) / 2.0) * std::pow(epsilon, epsilon / 2.0));
}

std::size_t minimal_dimension(double bound) {
  return static_cast<std::size_t>(std::ceil(bound - kIntegerSlack));
}

EpsilonDephasingReport measure_epsilon(const NoisyChannel& channel,
                                       const OrthonormalBasis& basis,
                                       const std::vector<DensityMatrix>& probes) {
  if (probes.empty()) throw PreconditionError("measure_epsilon: no probe states");
  EpsilonDephasingReport r;
  r.d = channel.system_dim();
  r.m = channel.randomness_dim();
  r.kind = channel.kind() == NoisyChannel::Kind::ClassicalMixture ? RandomnessKind::Classical
                                                                  : RandomnessKind::Quantum;
  for (const auto& rho : probes) {
    r.epsilon_measured = std::max(r.epsilon_measured,
                                  trace_distance(apply(channel, rho), pinch(rho, basis)));
  }
  const double eps = r.epsilon_measured;
  if (r.kind == RandomnessKind::Classical) {
    r.bound = classical_lower_bound(r.d, std::min(eps, 2.0));
  } else {
    // Outside the validity range only the trivial bound remains.
    r.bound = eps <= kQuantumBoundEpsilonMax ? quantum_lower_bound(r.d, eps) : 1.0;
  }
  r.satisfied = static_cast<double>(r.m) + kIntegerSlack >= r.bound;
  return r;
}

NoisyChannel truncated_classical_channel(std::size_t d, std::size_t m) {
  if (m == 0 || m > d) throw PreconditionError("truncated_classical_channel: need 1 <= m <= d");
  const ComplexMatrix z = clock_z(d).matrix();
  std::vector<UnitaryOperator> us;
  ComplexMatrix power = z;
  for (std::size_t j = 0; j < m; ++j) {
    us.push_back(UnitaryOperator::trusted(power));
    power = power * z;
  }
  return NoisyChannel::mixture(std::move(us));
}

RankWitness rank_witness(const NoisyChannel& mixture) {
  if (mixture.kind() != NoisyChannel::Kind::ClassicalMixture) {
    throw PreconditionError("rank_witness: needs a classical mixture");
  }
  const std::size_t d = mixture.system_dim();
  const DensityMatrix a = maximally_coherent_state(d);
  const DensityMatrix out = apply(mixture, a);
  RankWitness w;
  w.m = mixture.randomness_dim();
  w.rank = numerical_rank(out.matrix());
  w.epsilon_measured = trace_distance(out, pinch(a, OrthonormalBasis::computational(d)));
  w.epsilon_from_rank =
      std::max(0.0, 2.0 * (1.0 - static_cast<double>(w.rank) / static_cast<double>(d)));
  w.rank_within_m = w.rank <= w.m;
  return w;
}

EntropyBudget entropy_budget_check(const NoisyChannel& channel) {
  if (channel.kind() != NoisyChannel::Kind::QuantumDilation) {
    throw PreconditionError("entropy_budget_check: needs a dilation");
  }
  EntropyBudget b;
  b.d = channel.system_dim();
  b.m = channel.randomness_dim();
  const auto n = static_cast<Eigen::Index>(b.d);
  const DensityMatrix a =
      DensityMatrix::pure(ComplexVector::Ones(n) / std::sqrt(static_cast<double>(b.d)));
  const DensityMatrix ancilla = DensityMatrix::maximally_mixed(b.m);
  b.input_entropy = von_neumann_entropy(a);
  b.ancilla_entropy_in = von_neumann_entropy(ancilla);
  const ComplexMatrix& u = channel.dilation_unitary().matrix();
  const ComplexMatrix joint = u * tensor(a.matrix(), ancilla.matrix()) * u.adjoint();
  b.joint_entropy = von_neumann_entropy(DensityMatrix::trusted(0.5 * (joint + joint.adjoint())));
  b.output_entropy = von_neumann_entropy(apply(channel, a));
  b.ancilla_entropy_out = von_neumann_entropy(ancilla_marginal(channel, a));
  const double gap = std::abs(b.output_entropy - b.ancilla_entropy_out);
  b.chain_holds =
      std::abs(b.joint_entropy - (b.input_entropy + b.ancilla_entropy_in)) <= kEntropySlack &&
      b.joint_entropy + kEntropySlack >= gap;
  b.saturated = std::abs(b.joint_entropy - gap) <= kEntropySlack;
  return b;
}

}  // namespace catq
