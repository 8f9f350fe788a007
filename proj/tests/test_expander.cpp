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
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "catq/bounds.hpp"
#include "catq/error.hpp"
#include "catq/expander.hpp"
#include "catq/random.hpp"
#include "oracles.hpp"

namespace catq {
namespace {

std::vector<double> uniform(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

double l2_to_uniform(const std::vector<double>& p) {
  const double u = 1.0 / static_cast<double>(p.size());
  double acc = 0.0;
  for (double x : p) acc += (x - u) * (x - u);
  return std::sqrt(acc);
}

TEST(Margulis, EightMapsWithKnownImagesOfOrigin) {
  const std::vector<AffineMap> maps = margulis_maps(5);
  ASSERT_EQ(maps.size(), 8u);
  const LatticePoint origin{0, 0};
  EXPECT_EQ(maps[0](origin), origin);
  EXPECT_EQ(maps[2](origin), (LatticePoint{1, 0}));
  EXPECT_EQ(maps[0](LatticePoint{0, 1}), (LatticePoint{2, 1}));
  EXPECT_EQ(maps[1](LatticePoint{1, 0}), (LatticePoint{1, 2}));
}

TEST(Margulis, ForwardThenInverseIsIdentity) {
  const std::vector<AffineMap> maps = margulis_maps(5);
  for (const AffineMap& f : maps) {
    const AffineMap g = f.inverse();
    for (std::int64_t a = 0; a < 5; ++a)
      for (std::int64_t b = 0; b < 5; ++b) EXPECT_EQ(g(f(LatticePoint{a, b})), (LatticePoint{a, b}));
  }
}

TEST(Margulis, EveryMapIsAPermutation) {
  for (std::size_t e : {3u, 5u, 7u}) {
    for (const AffineMap& f : margulis_maps(e)) {
      std::set<LatticePoint> image;
      for (std::int64_t a = 0; a < static_cast<std::int64_t>(e); ++a)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(e); ++b) image.insert(f(LatticePoint{a, b}));
      EXPECT_EQ(image.size(), e * e);
    }
  }
}

TEST(ClassicalWalk, UniformIsFixed) {
  const std::vector<double> u = uniform(25);
  const std::vector<double> out = classical_step(u, 5);
  for (double x : out) EXPECT_NEAR(x, 1.0 / 25.0, 1e-15);
}

TEST(ClassicalWalk, PointMassSpreadsOverPreimages) {
  std::vector<double> p(9, 0.0);
  p[0] = 1.0;
  const std::vector<double> out = classical_step(p, 3);
  // S(P)(x) = (1/8) sum_j P(f_j(x)); mass at x counts the maps sending x to the origin.
  const std::vector<AffineMap> maps = margulis_maps(3);
  for (std::int64_t a = 0; a < 3; ++a)
    for (std::int64_t b = 0; b < 3; ++b) {
      int hits = 0;
      for (const AffineMap& f : maps) hits += f(LatticePoint{a, b}) == LatticePoint{0, 0} ? 1 : 0;
      EXPECT_NEAR(out[static_cast<std::size_t>(a * 3 + b)], hits / 8.0, 1e-15);
    }
  EXPECT_NEAR(std::accumulate(out.begin(), out.end(), 0.0), 1.0, 1e-15);
}

TEST(ClassicalWalk, ContractsTowardUniform) {
  for (std::size_t e : {3u, 5u, 7u}) {
    for (unsigned trial = 0; trial < 100; ++trial) {
      Rng rng = stream(80 + e, trial);
      const std::vector<double> p = random_probability(e * e, rng);
      const std::vector<double> out = classical_step(p, e);
      EXPECT_LE(l2_to_uniform(out), kMargulisRate * l2_to_uniform(p) + 1e-15);
    }
    EXPECT_LE(walk_second_eigenvalue(e), kMargulisRate);
  }
}

TEST(Wigner, MaximallyMixedIsFlat) {
  const WignerFunction w = wigner_from_state(DensityMatrix::maximally_mixed(5));
  for (double x : w.values()) EXPECT_NEAR(x, 1.0 / 25.0, 1e-15);
}

TEST(Wigner, NormalizedRealAndRoundTrips) {
  for (std::size_t d : {3u, 5u, 9u}) {
    Rng rng = stream(85, d);
    const DensityMatrix rho = random_density_matrix(d, rng);
    const WignerFunction w = wigner_from_state(rho);
    EXPECT_NEAR(w.sum(), 1.0, 1e-12);
    EXPECT_LE(oracle::max_abs(state_from_wigner(w) - rho.matrix()), 1e-10);
  }
  EXPECT_THROW(wigner_from_state(DensityMatrix::maximally_mixed(4)), PreconditionError);
}

TEST(Wigner, TwoNormsRelatedByDimension) {
  // For W(p,q) = (1/d) tr(A_pq M): ||M||_2^2 = d * ||W_M||_2^2.
  for (std::size_t d : {3u, 5u, 7u}) {
    Rng rng = stream(86, d);
    const DensityMatrix rho = random_density_matrix(d, rng);
    const DensityMatrix sigma = random_density_matrix(d, rng);
    const ComplexMatrix diff = rho.matrix() - sigma.matrix();
    const WignerFunction wd = wigner_of(diff);
    EXPECT_NEAR(oracle::frobenius(diff), std::sqrt(static_cast<double>(d)) * wd.two_norm(), 1e-12);
    const std::vector<double> ref = oracle::wigner(diff);
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(wd.values()[i], ref[i], 1e-12);
  }
}

TEST(Wigner, PinchedStatesHaveFlatColumns) {
  for (unsigned trial = 0; trial < 5; ++trial) {
    Rng rng = stream(87, trial);
    const DensityMatrix rho = random_density_matrix(9, rng);
    const WignerFunction w = wigner_of(oracle::pinch(rho.matrix(), ComplexMatrix::Identity(9, 9)));
    for (std::size_t q = 0; q < 9; ++q)
      for (std::size_t p = 1; p < 9; ++p) EXPECT_NEAR(w.at(p, q), w.at(0, q), 1e-12);
  }
}

TEST(ExpanderChannel, FixedPointsAndTracePreservation) {
  const ComplexMatrix id9 = ComplexMatrix::Identity(9, 9) / 9.0;
  EXPECT_LE(oracle::max_abs(expander_channel_step(id9) - id9), 1e-14);
  Rng rng = stream(88, 0);
  const DensityMatrix rho = random_density_matrix(9, rng);
  const ComplexMatrix pinched = oracle::pinch(rho.matrix(), ComplexMatrix::Identity(9, 9));
  EXPECT_LE(oracle::max_abs(expander_channel_step(pinched) - pinched), 1e-13);
  const ComplexMatrix out = expander_channel_step(rho.matrix());
  EXPECT_NEAR(std::abs(out.trace() - cplx(1.0)), 0.0, 1e-12);
  EXPECT_TRUE(is_hermitian(out, 1e-12));
}

TEST(ExpanderChannel, EachColumnFollowsTheClassicalWalk) {
  for (std::size_t e : {3u, 5u}) {
    Rng rng = stream(89, e);
    const WignerFunction w = wigner_from_state(random_density_matrix(e * e, rng));
    const WignerFunction next = expander_channel_step(w);
    for (std::size_t q = 0; q < e * e; ++q) {
      const std::span<const double> col = w.column(q);
      const std::vector<double> expected = classical_step(col, e);
      const std::span<const double> got = next.column(q);
      for (std::size_t p = 0; p < e * e; ++p) EXPECT_EQ(got[p], expected[p]);
    }
  }
}

TEST(ExpanderChannel, ColumnWeightsInvariantAndCommutesWithPinch) {
  for (unsigned trial = 0; trial < 10; ++trial) {
    Rng rng = stream(90, trial);
    const DensityMatrix rho = random_density_matrix(9, rng);
    const WignerFunction w = wigner_from_state(rho);
    const WignerFunction next = expander_channel_step(w);
    for (std::size_t q = 0; q < 9; ++q) {
      const auto a = w.column(q);
      const auto b = next.column(q);
      EXPECT_NEAR(std::accumulate(a.begin(), a.end(), 0.0), std::accumulate(b.begin(), b.end(), 0.0), 1e-12);
    }
    const ComplexMatrix id = ComplexMatrix::Identity(9, 9);
    EXPECT_LE(oracle::max_abs(oracle::pinch(expander_channel_step(rho.matrix()), id) - oracle::pinch(rho.matrix(), id)),
              1e-10);
  }
}

TEST(ExpanderChannel, CoherentInputContractsPerStep) {
  const DensityMatrix rho = maximally_coherent_state(9);
  const ComplexMatrix pinched = oracle::pinch(rho.matrix(), ComplexMatrix::Identity(9, 9));
  const ComplexMatrix out = expander_channel_step(rho.matrix());
  EXPECT_LE(oracle::frobenius(out - pinched), kMargulisRate * oracle::frobenius(rho.matrix() - pinched) + 1e-12);
}

TEST(Convergence, BoundHoldsAndDecayRateIsBelowMargulisRate) {
  const ConvergenceReport r = expander_convergence(ExpanderSpec::make(3, 20), maximally_coherent_state(9));
  ASSERT_EQ(r.rows.size(), 21u);
  const double d = 9.0;
  EXPECT_NEAR(r.rows[0].bound, std::sqrt(2.0 * d * d * d), 1e-12);
  const ComplexMatrix pinched = ComplexMatrix::Identity(9, 9) / 9.0;
  EXPECT_NEAR(r.rows[0].measured, oracle::frobenius(maximally_coherent_state(9).matrix() - pinched), 1e-12);
  for (const ConvergenceRow& row : r.rows) {
    EXPECT_LE(row.measured, row.bound);
    EXPECT_NEAR(row.bound, std::sqrt(2.0 * d * d * d) * std::pow(kMargulisRate, static_cast<double>(row.k)), 1e-9);
  }
  EXPECT_TRUE(r.bound_satisfied);
  EXPECT_LE(r.fitted_rate, kMargulisRate + 0.01);
  EXPECT_EQ(r.csv().substr(0, 21), "k,measured_2norm,boun");
}

TEST(Convergence, RejectsEvenLattice) {
  EXPECT_THROW(ExpanderSpec::make(4, 3), PreconditionError);
}

TEST(Convergence, FittedRateRecoversGeometricSequence) {
  std::vector<double> v;
  for (int k = 0; k < 10; ++k) v.push_back(3.0 * std::pow(0.6, k));
  EXPECT_NEAR(fitted_decay_rate(v, kDecayFitFloor), 0.6, 1e-12);
}

}  // namespace
}  // namespace catq
