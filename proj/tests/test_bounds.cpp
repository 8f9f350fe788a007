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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "catq/bounds.hpp"
#include "catq/dephaser.hpp"
#include "catq/error.hpp"
#include "catq/random.hpp"
#include "oracles.hpp"

namespace catq {
namespace {

TEST(CoherentState, QubitIsPlusAndPure) {
  const DensityMatrix a = maximally_coherent_state(2);
  EXPECT_LE(oracle::max_abs(a.matrix() - ComplexMatrix::Constant(2, 2, 0.5)), 1e-15);
  for (std::size_t d : {3u, 8u}) {
    const DensityMatrix s = maximally_coherent_state(d);
    EXPECT_NEAR((s.matrix() * s.matrix()).trace().real(), 1.0, 1e-12);
    for (Eigen::Index i = 0; i < s.matrix().rows(); ++i)
      EXPECT_NEAR(s.matrix()(i, i).real(), 1.0 / static_cast<double>(d), 1e-15);
  }
}

TEST(Epsilon, ExactConstructionsMeasureZero) {
  for (std::size_t d = 2; d <= 9; ++d) {
    const OrthonormalBasis basis = OrthonormalBasis::computational(d);
    const auto probes = default_probes(d, 5);
    EXPECT_EQ(probes.size(), 21u);
    EXPECT_LE(measure_epsilon(build_dephasing_unitary(d, basis), basis, probes).epsilon_measured, 1e-10);
    EXPECT_LE(measure_epsilon(classical_dephasing_channel(d), basis, probes).epsilon_measured, 1e-10);
  }
}

TEST(Epsilon, IdentityChannelMeasuresCoherence) {
  const NoisyChannel id = NoisyChannel::mixture({UnitaryOperator::identity(3)});
  const DensityMatrix a = maximally_coherent_state(3);
  const EpsilonDephasingReport r = measure_epsilon(id, OrthonormalBasis::computational(3), {a});
  EXPECT_NEAR(r.epsilon_measured, oracle::trace_norm(a.matrix() - ComplexMatrix::Identity(3, 3) / 3.0), 1e-12);
  const nlohmann::json j = r;
  for (const char* key : {"d", "m", "kind", "epsilon_measured", "bound", "satisfied"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(ClassicalBound, HandValues) {
  EXPECT_DOUBLE_EQ(classical_lower_bound(7, 0.0), 7.0);
  EXPECT_DOUBLE_EQ(classical_lower_bound(7, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(classical_lower_bound(4, 0.5), 3.0);
  EXPECT_THROW(classical_lower_bound(4, 2.5), PreconditionError);
}

TEST(QuantumBound, HandValues) {
  EXPECT_DOUBLE_EQ(quantum_lower_bound(16, 0.0), 4.0);
  for (std::size_t d : {2u, 3u, 4u}) EXPECT_DOUBLE_EQ(quantum_lower_bound(d, 0.0), 2.0);
  const double eps = 0.05;
  const double via_logs = std::exp(0.475 * std::log(16.0) + 0.025 * std::log(eps));
  EXPECT_NEAR(quantum_lower_bound(16, eps), via_logs, 1e-12);
  EXPECT_THROW(quantum_lower_bound(16, 0.1), PreconditionError);
  EXPECT_THROW(quantum_lower_bound(16, -0.01), PreconditionError);
}

TEST(Bounds, ConstructionsMeetBoundsWithEqualityAtZero) {
  for (std::size_t d = 2; d <= 16; ++d) {
    EXPECT_EQ(minimal_dimension(classical_lower_bound(d, 0.0)), d);
    EXPECT_EQ(classical_dephasing_channel(d).randomness_dim(), d);
    const std::size_t mq = build_dephasing_unitary(d, OrthonormalBasis::computational(d)).randomness_dim();
    EXPECT_EQ(mq, ceil_sqrt(d));
    EXPECT_EQ(minimal_dimension(quantum_lower_bound(d, 0.0)), std::max<std::size_t>(2, ceil_sqrt(d)));
  }
  for (std::size_t d = 2; d <= 64; ++d)
    for (double eps : {0.0, kQuantumBoundEpsilonMax / 2.0, kQuantumBoundEpsilonMax})
      EXPECT_GE(static_cast<double>(ceil_sqrt(d)), quantum_lower_bound(d, eps) - 1e-12) << d;
}

TEST(Bounds, MonotoneInEpsilonAndDimension) {
  for (std::size_t d = 2; d <= 32; ++d) {
    double prev_c = classical_lower_bound(d, 0.0);
    double prev_q = quantum_lower_bound(d, 0.0);
    for (int i = 1; i <= 20; ++i) {
      const double ec = 2.0 * i / 20.0;
      const double eq = kQuantumBoundEpsilonMax * i / 20.0;
      EXPECT_LE(classical_lower_bound(d, ec), prev_c + 1e-12);
      EXPECT_LE(quantum_lower_bound(d, eq), prev_q + 1e-12);
      prev_c = classical_lower_bound(d, ec);
      prev_q = quantum_lower_bound(d, eq);
      EXPECT_LE(classical_lower_bound(d, ec), classical_lower_bound(d + 1, ec) + 1e-12);
      EXPECT_LE(quantum_lower_bound(d, eq), quantum_lower_bound(d + 1, eq) + 1e-12);
    }
  }
}

TEST(RankWitness, MixturesHaveRankAtMostM) {
  for (std::size_t d = 2; d <= 16; ++d) {
    for (std::size_t m = 1; m <= d; ++m) {
      const RankWitness w = rank_witness(truncated_classical_channel(d, m));
      EXPECT_EQ(w.m, m);
      EXPECT_TRUE(w.rank_within_m);
      EXPECT_LE(w.rank, m);
      if (m < d) {
        EXPECT_GT(w.epsilon_measured, 1e-3);
        EXPECT_GE(w.epsilon_measured + 1e-12, w.epsilon_from_rank);
      }
    }
  }
}

TEST(RankWitness, RandomUnitaryMixtures) {
  for (unsigned trial = 0; trial < 20; ++trial) {
    Rng rng = stream(95, trial);
    const std::size_t m = 1 + trial % 4;
    std::vector<UnitaryOperator> us;
    for (std::size_t i = 0; i < m; ++i) us.push_back(haar_unitary(6, rng));
    const RankWitness w = rank_witness(NoisyChannel::mixture(us));
    EXPECT_LE(w.rank, m);
  }
}

TEST(EntropyBudget, QuquartSaturates) {
  const EntropyBudget b = entropy_budget_check(build_dephasing_unitary(4, OrthonormalBasis::computational(4)));
  EXPECT_EQ(b.m, 2u);
  EXPECT_NEAR(b.joint_entropy, 1.0, 1e-9);
  EXPECT_NEAR(b.output_entropy, 2.0, 1e-9);
  EXPECT_NEAR(b.ancilla_entropy_out, 1.0, 1e-9);
  EXPECT_TRUE(b.chain_holds);
  EXPECT_TRUE(b.saturated);
}

TEST(EntropyBudget, ChainHoldsAtSquaresAndBetween) {
  for (std::size_t d : {5u, 9u, 16u}) {
    const EntropyBudget b = entropy_budget_check(build_dephasing_unitary(d, OrthonormalBasis::computational(d)));
    EXPECT_TRUE(b.chain_holds) << d;
    EXPECT_NEAR(b.joint_entropy, std::log2(static_cast<double>(b.m)), 1e-9);
    EXPECT_LE(std::abs(b.output_entropy - b.ancilla_entropy_out), std::log2(static_cast<double>(b.m)) + 1e-9);
    if (d == 9 || d == 16) {
      EXPECT_TRUE(b.saturated) << d;
    }
  }
}

TEST(EntropyBudget, TrivialChannelDegenerates) {
  const EntropyBudget b = entropy_budget_check(NoisyChannel::dilation(UnitaryOperator::identity(2), 1));
  EXPECT_NEAR(b.joint_entropy, 0.0, 1e-12);
  EXPECT_TRUE(b.chain_holds);
}

}  // namespace
}  // namespace catq
