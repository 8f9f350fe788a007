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

#include "catq/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "catq/config.hpp"
#include "catq/error.hpp"
#include "catq/kernels.hpp"
#include "catq/weyl.hpp"

namespace catq {

namespace {

using Index = Eigen::Index;

ComplexMatrix matrix_power(const ComplexMatrix& u, long long k) {
  return ControlledUnitary{OrthonormalBasis::computational(1), {u}}.power(k).blocks.front();
}

std::vector<ComplexMatrix> blocks_for(std::size_t m, const std::vector<std::size_t>& factors,
                                      bool phased) {
  // Mixed-radix digits, first factor most significant.
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(m * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) {
      std::vector<ComplexMatrix> parts(factors.size());
      std::size_t rr = r;
      std::size_t ss = s;
      for (std::size_t j = factors.size(); j-- > 0;) {
        const std::size_t p = factors[j];
        const auto rj = static_cast<long long>(rr % p);
        const auto sj = static_cast<long long>(ss % p);
        parts[j] = phased ? weyl_op(p, rj, sj) : pauli_op(p, rj, sj);
        rr /= p;
        ss /= p;
      }
      blocks.push_back(tensor(std::span<const ComplexMatrix>(parts)));
    }
  return blocks;
}

}  // namespace

std::vector<std::size_t> prime_factors(std::size_t m) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= m; ++p) {
    while (m % p == 0) {
      out.push_back(p);
      m /= p;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

RecurrenceSpec RecurrenceSpec::make(std::size_t m) {
  if (m < 3 || m % 2 == 0) {
    throw PreconditionError("recurrence: m must be odd and at least 3");
  }
  return RecurrenceSpec{m, m * m, prime_factors(m)};
}

ControlledUnitary recurrence_controlled(const RecurrenceSpec& spec,
                                        const OrthonormalBasis& basis) {
  if (basis.dim() != spec.d) throw DimensionError("recurrence: basis dimension must be m^2");
  return ControlledUnitary{basis, blocks_for(spec.m, spec.factors, true)};
}

ControlledUnitary recurrence_controlled(const RecurrenceSpec& spec) {
  return recurrence_controlled(spec, OrthonormalBasis::computational(spec.d));
}

UnitaryOperator recurrence_unitary(const RecurrenceSpec& spec) {
  return recurrence_controlled(spec).dense();
}

ComplexMatrix stroboscopic_kernel(const ControlledUnitary& v, long long k) {
  const ControlledUnitary vk = v.power(k);
  ComplexMatrix gram;
  kernels::block_gram(vk.blocks, vk.blocks, gram);
  return gram / static_cast<double>(v.ancilla_dim());
}

DensityMatrix stroboscopic_map(const ControlledUnitary& v, const DensityMatrix& rho,
                               long long k) {
  return machine_system_map(v.power(k), rho, DensityMatrix::maximally_mixed(v.ancilla_dim()));
}

DensityMatrix predicted_map(long long k, std::size_t m, const DensityMatrix& rho,
                            const OrthonormalBasis& basis) {
  if (m == 0) throw PreconditionError("predicted_map: m must be positive");
  if (k % static_cast<long long>(m) == 0) return rho;
  return pinch(rho, basis);
}

ContinuousEvolution::ContinuousEvolution(const ControlledUnitary& v) : control_(v.control) {
  spectra_.reserve(v.blocks.size());
  for (const auto& b : v.blocks) spectra_.push_back(unitary_spectrum(UnitaryOperator(b)));
}

DensityMatrix ContinuousEvolution::at(const DensityMatrix& rho, double t) const {
  ControlledUnitary evolved{control_, {}};
  evolved.blocks.reserve(spectra_.size());
  for (const auto& s : spectra_) evolved.blocks.push_back(s.evolve(t));
  return machine_system_map(evolved, rho,
                            DensityMatrix::maximally_mixed(evolved.ancilla_dim()));
}

DensityMatrix continuous_evolution(const ControlledUnitary& v, const DensityMatrix& rho,
                                   double t) {
  return ContinuousEvolution(v).at(rho, t);
}

DensityMatrix continuous_evolution_dense(const UnitaryOperator& v, std::size_t m,
                                         const DensityMatrix& rho, double t) {
  if (rho.dim() * m != v.dim()) throw DimensionError("continuous_evolution: dimensions");
  const ComplexMatrix w = unitary_spectrum(v).evolve(t);
  const ComplexMatrix joint =
      w * tensor(rho.matrix(), DensityMatrix::maximally_mixed(m).matrix()) * w.adjoint();
  const ComplexMatrix out = partial_trace(joint, SubsystemLayout{rho.dim(), m}, {0});
  return DensityMatrix::trusted(0.5 * (out + out.adjoint()));
}

TimeSweep time_sweep(std::size_t m, std::size_t samples_per_period) {
  const RecurrenceSpec spec = RecurrenceSpec::make(m);
  check_dimension_cap(spec.d * spec.m, "time_sweep");
  if (samples_per_period == 0) throw PreconditionError("time_sweep: need at least one sample");
  const ControlledUnitary v = recurrence_controlled(spec);
  const ContinuousEvolution evolution(v);
  const OrthonormalBasis basis = OrthonormalBasis::computational(spec.d);
  const auto n = static_cast<Index>(spec.d);
  const DensityMatrix rho =
      DensityMatrix::pure(ComplexVector::Ones(n) / std::sqrt(static_cast<double>(spec.d)));
  const DensityMatrix pinched = pinch(rho, basis);

  const double period = static_cast<double>(m);
  std::vector<double> times;
  for (std::size_t j = 0; j <= samples_per_period; ++j) {
    times.push_back(period * static_cast<double>(j) / static_cast<double>(samples_per_period));
  }
  for (std::size_t j = 0; j <= m; ++j) times.push_back(static_cast<double>(j));
  times.push_back(0.5 * period);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              times.end());

  TimeSweep sweep;
  sweep.m = m;
  sweep.points.resize(times.size());
  std::vector<DensityMatrix> states(times.size(), rho);
  const auto count = static_cast<Index>(times.size());
#pragma omp parallel for schedule(dynamic)
  for (Index i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    states[k] = evolution.at(rho, times[k]);
    sweep.points[k] = SweepPoint{times[k], trace_distance(states[k], pinched)};
  }

  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const double nearest = std::round(t);
    if (std::abs(t - 0.5 * period) < 1e-12) {
      sweep.midpoint_distance = sweep.points[k].distance;
      sweep.midpoint_hs_distance = two_norm(states[k].matrix() - pinched.matrix());
    }
    if (std::abs(t - nearest) < 1e-12) {
      const auto step = static_cast<long long>(nearest);
      if (step % static_cast<long long>(m) == 0) {
        sweep.max_recurrence_deviation =
            std::max(sweep.max_recurrence_deviation, trace_distance(states[k], rho));
      } else {
        sweep.max_integer_distance =
            std::max(sweep.max_integer_distance, sweep.points[k].distance);
      }
    }
  }
  return sweep;
}

std::vector<TimeSweep> time_sweep(const std::vector<std::size_t>& m_values,
                                  std::size_t samples_per_period) {
  std::vector<TimeSweep> out;
  out.reserve(m_values.size());
  for (std::size_t m : m_values) out.push_back(time_sweep(m, samples_per_period));
  return out;
}

std::string TimeSweep::csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "m,t_over_m,distance\n";
  for (const auto& p : points) {
    out << m << ',' << p.t / static_cast<double>(m) << ',' << p.distance << '\n';
  }
  return out.str();
}

cplx phase_cancellation(std::size_t m, long long k, long long r, long long u, long long s,
                        long long v) {
  const ComplexMatrix uk = matrix_power(weyl_op(m, r - u, s - v), k);
  return weyl_tau_power(m, k * k * (u * s - r * v)) * uk.trace() / static_cast<double>(m);
}

EvenRecurrenceDiagnostic even_recurrence_diagnostic(std::size_t m, WeylPhase phase) {
  if (m < 2 || m % 2 != 0) throw PreconditionError("even_recurrence_diagnostic: m must be even");
  const ControlledUnitary v{OrthonormalBasis::computational(m * m),
                            blocks_for(m, {m}, phase == WeylPhase::Tau)};
  const auto n = static_cast<Index>(m * m);
  EvenRecurrenceDiagnostic out;
  out.m = m;
  out.phase = phase;
  const ComplexMatrix at_m = stroboscopic_kernel(v, static_cast<long long>(m));
  out.factors = at_m.real();
  out.flipped_entries = static_cast<std::size_t>((out.factors.array() < -0.5).count());
  const ComplexMatrix ones = ComplexMatrix::Ones(n, n);
  out.deviation_at_m = (at_m - ones).cwiseAbs().maxCoeff();
  out.deviation_at_2m =
      (stroboscopic_kernel(v, 2 * static_cast<long long>(m)) - ones).cwiseAbs().maxCoeff();
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  for (long long k = 1; k < static_cast<long long>(m); ++k) {
    out.worst_pinch_deviation = std::max(
        out.worst_pinch_deviation, (stroboscopic_kernel(v, k) - ident).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace catq
