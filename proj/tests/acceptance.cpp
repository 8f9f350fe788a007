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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria (capped at 1 for ctest).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "catq/bounds.hpp"
#include "catq/dephaser.hpp"
#include "catq/expander.hpp"
#include "catq/pqc.hpp"
#include "catq/random.hpp"
#include "catq/recurrence.hpp"
#include "catq/weyl.hpp"

namespace {

using namespace catq;

// Pinned tolerances and limits.
constexpr double kExactTol = 1e-10;
constexpr double kTransitionTol = 1e-8;
constexpr double kMachineSlack = 1e-9;
constexpr double kRecurrenceTol = 1e-9;
constexpr double kIntegerTimeTol = 1e-8;
constexpr double kSecurityTol = 1e-9;
constexpr double kRoundTripFidelityGap = 1e-10;
constexpr double kCorrectionTol = 1e-9;
constexpr double kSigmas = 3.0;
constexpr std::size_t kAuthTrials = 10000;
constexpr double kDecayRateSlack = 0.01;
constexpr double kBudgetTol = 1e-9;
constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

ComplexMatrix uniform(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return ComplexMatrix::Identity(n, n) / static_cast<double>(d);
}

void exact_dephasing(Outcome& o) {
  double worst = 0.0, worst_cat = 0.0;
  for (std::size_t d = 2; d <= 16; ++d) {
    Rng brng = stream(kSeed, 1000 + d);
    const OrthonormalBasis basis(haar_unitary(d, brng).matrix());
    const NoisyChannel ch = build_dephasing_unitary(d, basis);
    o.require(ch.randomness_dim() == ceil_sqrt(d), "ancilla dimension at d=" + std::to_string(d));
    for (unsigned t = 0; t < 50; ++t) {
      Rng rng = stream(kSeed, d * 100 + t);
      const DensityMatrix rho = random_density_matrix(d, rng);
      worst = std::max(worst, trace_norm(apply(ch, rho).matrix() - pinch(rho, basis).matrix()));
      worst_cat = std::max(worst_cat, trace_norm(ancilla_marginal(ch, rho).matrix() - uniform(ch.randomness_dim())));
    }
  }
  o.require(worst <= kExactTol, "pinch residual");
  o.require(worst_cat <= kExactTol, "catalyst residual");
  o.detail << "max residual " << worst << ", max catalyst residual " << worst_cat;
}

void classical_optimum(Outcome& o) {
  double worst = 0.0;
  std::size_t witnesses = 0;
  for (std::size_t d = 2; d <= 16; ++d) {
    const NoisyChannel ch = classical_dephasing_channel(d);
    const OrthonormalBasis basis = OrthonormalBasis::computational(d);
    o.require(ch.randomness_dim() == d, "mixture size");
    worst = std::max(worst, measure_epsilon(ch, basis, default_probes(d, kSeed + d)).epsilon_measured);
    for (std::size_t m = 1; m < d; ++m) {
      const RankWitness w = rank_witness(truncated_classical_channel(d, m));
      o.require(w.rank_within_m && w.rank <= m && w.rank < d, "truncated rank witness");
      ++witnesses;
    }
    for (unsigned t = 0; t < 5; ++t) {
      Rng rng = stream(kSeed, 5000 + d * 10 + t);
      const std::size_t m = 1 + t % (d - 1);
      std::vector<UnitaryOperator> us;
      for (std::size_t i = 0; i < m; ++i) us.push_back(haar_unitary(d, rng));
      const RankWitness w = rank_witness(NoisyChannel::mixture(us));
      o.require(w.rank <= m && w.rank < d, "random mixture rank witness");
      ++witnesses;
    }
  }
  o.require(worst <= kExactTol, "classical residual");
  o.detail << "max residual " << worst << ", " << witnesses << " rank witnesses with rank <= m < d";
}

void transitions(Outcome& o) {
  double worst = 0.0;
  for (std::size_t d = 2; d <= 6; ++d) {
    for (unsigned t = 0; t < 100; ++t) {
      Rng rng = stream(kSeed, 10000 + d * 1000 + t);
      const MajorizingPair pair = random_majorizing_pair(d, rng);
      const Transition q = transition_channel(pair.rho, pair.rho_prime, TransitionMode::Quantum);
      const Transition c = transition_channel(pair.rho, pair.rho_prime, TransitionMode::Classical);
      o.require(q.dephase.randomness_dim() == ceil_sqrt(d), "quantum ancilla size");
      o.require(c.dephase.randomness_dim() == d, "classical ancilla size");
      worst = std::max({worst, trace_norm(apply(q, pair.rho).matrix() - pair.rho_prime.matrix()),
                        trace_norm(apply(c, pair.rho).matrix() - pair.rho_prime.matrix())});
    }
  }
  o.require(worst <= kTransitionTol, "transition error");
  o.detail << "max end-to-end error " << worst << " over 1000 transitions";
}

void machine_bounds(Outcome& o) {
  double slack_sys = -INFINITY, slack_anc = -INFINITY, entropy_drop = 0.0;
  for (std::size_t d : {4u, 9u}) {
    const std::size_t m = ceil_sqrt(d);
    for (unsigned t = 0; t < 100; ++t) {
      Rng rng = stream(kSeed, 20000 + d * 1000 + t);
      const DensityMatrix rho = random_density_matrix(d, rng);
      const DensityMatrix sigma = random_density_matrix(m, rng);
      const MachineReport r = machine_iterate(rho, std::vector<DensityMatrix>(20, sigma));
      double prev_entropy = r.initial_entropy;
      for (const MachineRow& row : r.rows) {
        slack_sys = std::max(slack_sys, row.dist_system - row.bound);
        slack_anc = std::max(slack_anc, row.dist_ancilla - row.ancilla_bound);
        entropy_drop = std::max(entropy_drop, prev_entropy - row.entropy);
        prev_entropy = row.entropy;
      }
    }
  }
  o.require(slack_sys <= kMachineSlack, "system product bound");
  o.require(slack_anc <= kMachineSlack, "ancilla product bound");
  o.require(entropy_drop <= kMachineSlack, "entropy monotonicity");
  o.detail << "max(dist - bound) system " << slack_sys << ", ancilla " << slack_anc << ", max entropy drop "
           << entropy_drop;
}

void recurrence(Outcome& o) {
  for (std::size_t m : {3u, 5u, 7u, 9u, 15u}) {
    const RecurrenceSpec spec = RecurrenceSpec::make(m);
    const ControlledUnitary v = recurrence_controlled(spec);
    const OrthonormalBasis basis = OrthonormalBasis::computational(spec.d);
    std::vector<DensityMatrix> states{maximally_coherent_state(spec.d)};
    for (unsigned t = 0; t < 3; ++t) {
      Rng rng = stream(kSeed, 30000 + m * 10 + t);
      states.push_back(random_density_matrix(spec.d, rng));
    }
    double worst = 0.0;
    long long worst_k = 0;
    for (long long k = 1; k <= 2 * static_cast<long long>(m); ++k) {
      for (const DensityMatrix& rho : states) {
        const double r = trace_norm(stroboscopic_map(v, rho, k).matrix() - predicted_map(k, m, rho, basis).matrix());
        if (r > worst) {
          worst = r;
          worst_k = k;
        }
      }
    }
    o.require(worst <= kRecurrenceTol, "m=" + std::to_string(m) + " k=" + std::to_string(worst_k));
    o.detail << "m=" << m << ": " << worst << (worst > kRecurrenceTol ? " (k=" + std::to_string(worst_k) + ")" : "")
             << "; ";
  }
}

void time_sweeps(Outcome& o) {
  const std::vector<TimeSweep> sweeps = time_sweep(std::vector<std::size_t>{3, 5, 7, 11}, 64);
  for (const TimeSweep& s : sweeps) {
    o.require(s.max_integer_distance <= kIntegerTimeTol, "integer time at m=" + std::to_string(s.m));
    o.require(s.max_recurrence_deviation <= kIntegerTimeTol, "recurrence at m=" + std::to_string(s.m));
  }
  for (std::size_t i = 1; i < sweeps.size(); ++i) {
    o.require(sweeps[i].midpoint_distance < sweeps[i - 1].midpoint_distance,
              "trace-norm midpoint m=" + std::to_string(sweeps[i - 1].m) + " -> m=" + std::to_string(sweeps[i].m));
  }
  o.detail << "trace-norm midpoints";
  for (const TimeSweep& s : sweeps) o.detail << " m=" << s.m << ":" << s.midpoint_distance;
  o.detail << "; info only, HS midpoints";
  for (const TimeSweep& s : sweeps) o.detail << " m=" << s.m << ":" << s.midpoint_hs_distance;
  double worst_int = 0.0;
  for (const TimeSweep& s : sweeps) worst_int = std::max({worst_int, s.max_integer_distance, s.max_recurrence_deviation});
  o.detail << "; max integer-time residual " << worst_int;
}

Syndrome syndrome_of(const std::string& s) {
  Syndrome out;
  for (char c : s) out.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  return out;
}

void private_channel(Outcome& o) {
  const PqcKey key = PqcKey::standard();
  double worst_sec = 0.0;
  ComplexVector max_ent = ComplexVector::Zero(16);
  for (Eigen::Index i = 0; i < 4; ++i) max_ent(i * 4 + i) = 0.5;
  worst_sec = security_residual(DensityMatrix::pure(max_ent), 4, key);
  for (unsigned t = 0; t < 19; ++t) {
    Rng rng = stream(kSeed, 40000 + t);
    const std::size_t de = 2 + t % 3;
    const DensityMatrix rho_se = t % 2 ? DensityMatrix::pure(haar_pure_state(4 * de, rng))
                                       : random_density_matrix(4 * de, rng);
    worst_sec = std::max(worst_sec, security_residual(rho_se, de, key));
  }
  o.require(worst_sec <= kSecurityTol, "security residual");

  double worst_fid_gap = 0.0, worst_key_gap = 0.0;
  for (unsigned t = 0; t < 50; ++t) {
    Rng rng = stream(kSeed, 41000 + t);
    const DensityMatrix rho = random_density_matrix(4, rng);
    const Decoded dec = pqc_decode(pqc_encode(rho, key), key);
    worst_fid_gap = std::max(worst_fid_gap, 1.0 - fidelity(dec.message, rho));
    worst_key_gap = std::max(worst_key_gap, 1.0 - dec.key_fidelity);
  }
  o.require(worst_fid_gap <= kRoundTripFidelityGap, "round-trip fidelity");
  o.require(worst_key_gap <= kRoundTripFidelityGap, "key restoration");

  const std::array<Syndrome, 16> table = syndrome_table(key);
  std::set<std::string> distinct;
  for (const Syndrome& s : table) distinct.insert(s.str());
  o.require(distinct.size() == 16, "syndrome bijection");

  Rng mrng = stream(kSeed, 42000);
  const DensityMatrix msg = random_density_matrix(4, mrng);
  double worst_fix = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    const Decoded dec = pqc_decode(apply_pauli_error(pqc_encode(msg, key), PauliError::from_index(i)), key);
    const DensityMatrix fixed = correct_message(dec.message, correction_from_syndrome(extract_syndrome(dec.key), key));
    worst_fix = std::max(worst_fix, trace_norm(fixed.matrix() - msg.matrix()));
  }
  o.require(worst_fix <= kCorrectionTol, "error correction");

  double worst_z = 0.0;
  std::uint64_t stream_id = 43000;
  for (const char* v : {"0001", "0110", "1111"}) {
    for (std::size_t r : {1u, 3u, 10u}) {
      const double p_accept = std::pow(2.0, -static_cast<double>(r));
      const double rejection = 1.0 - acceptance_rate(syndrome_of(v), r, kAuthTrials, kSeed + stream_id++);
      const double sigma = std::sqrt(p_accept * (1.0 - p_accept) / static_cast<double>(kAuthTrials));
      const double z = std::abs(rejection - (1.0 - p_accept)) / sigma;
      worst_z = std::max(worst_z, z);
      o.require(z <= kSigmas, std::string("authentication v=") + v + " r=" + std::to_string(r));
    }
  }
  o.detail << "security " << worst_sec << ", 1-F " << worst_fid_gap << ", key 1-F " << worst_key_gap << ", "
           << distinct.size() << "/16 syndromes, correction " << worst_fix << ", auth max |z| " << worst_z;
}

void expander(Outcome& o) {
  for (std::size_t e : {3u, 5u, 7u}) {
    const ConvergenceReport r = expander_convergence(ExpanderSpec::make(e, 30), maximally_coherent_state(e * e));
    bool below = true;
    for (const ConvergenceRow& row : r.rows) below = below && row.measured <= row.bound;
    o.require(below && r.rows.size() == 31, "bound at e=" + std::to_string(e));
    o.require(r.fitted_rate <= kMargulisRate + kDecayRateSlack, "decay rate at e=" + std::to_string(e));
    double worst_ratio = 0.0;
    for (unsigned t = 0; t < 100; ++t) {
      Rng rng = stream(kSeed, 50000 + e * 1000 + t);
      const std::vector<double> p = random_probability(e * e, rng);
      const std::vector<double> q = classical_step(p, e);
      const double u = 1.0 / static_cast<double>(e * e);
      double before = 0.0, after = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        before += (p[i] - u) * (p[i] - u);
        after += (q[i] - u) * (q[i] - u);
      }
      worst_ratio = std::max(worst_ratio, std::sqrt(after / before));
    }
    o.require(worst_ratio <= kMargulisRate, "classical contraction at e=" + std::to_string(e));
    o.detail << "e=" << e << ": rate " << r.fitted_rate << ", worst walk ratio " << worst_ratio << "; ";
  }
}

void lower_bounds(Outcome& o) {
  for (std::size_t d = 2; d <= 16; ++d) {
    const OrthonormalBasis basis = OrthonormalBasis::computational(d);
    const NoisyChannel q = build_dephasing_unitary(d, basis);
    const NoisyChannel c = classical_dephasing_channel(d);
    o.require(minimal_dimension(classical_lower_bound(d, 0.0)) == c.randomness_dim(), "classical equality");
    o.require(minimal_dimension(quantum_lower_bound(d, 0.0)) == q.randomness_dim(), "quantum equality d=" + std::to_string(d));
    const auto probes = default_probes(d, kSeed + 60000 + d);
    o.require(measure_epsilon(q, basis, probes).epsilon_measured <= kExactTol, "quantum epsilon");
    o.require(measure_epsilon(c, basis, probes).epsilon_measured <= kExactTol, "classical epsilon");
  }
  for (std::size_t d : {4u, 9u, 16u}) {
    const EntropyBudget b = entropy_budget_check(build_dephasing_unitary(d, OrthonormalBasis::computational(d)));
    const double log_m = std::log2(static_cast<double>(b.m));
    o.require(std::abs(b.joint_entropy - log_m) <= kBudgetTol, "joint entropy d=" + std::to_string(d));
    o.require(b.chain_holds, "entropy chain d=" + std::to_string(d));
    o.require(b.saturated, "saturation d=" + std::to_string(d));
    o.detail << "d=" << d << ": S_out " << b.output_entropy << ", S_anc " << b.ancilla_entropy_out << "; ";
  }
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact optimal dephasing", 10.0, exact_dephasing},
      {2, "classical optimum and rank witness", 5.0, classical_optimum},
      {3, "state transitions", 30.0, transitions},
      {4, "machine product bounds and entropy", 30.0, machine_bounds},
      {5, "stroboscopic recurrence", 60.0, recurrence},
      {6, "continuous-time sweep", 300.0, time_sweeps},
      {7, "private quantum channel", 120.0, private_channel},
      {8, "expander convergence", 120.0, expander},
      {9, "lower-bound consistency", 30.0, lower_bounds},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& ex) {
      o.require(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs <= c.limit_seconds, "runtime limit");
    std::printf("CRITERION %d %s: %s (%.2fs / %.0fs) %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                c.limit_seconds, o.detail.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
