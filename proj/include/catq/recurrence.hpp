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
#include <string>
#include <vector>

#include "catq/dephaser.hpp"
#include "catq/qcore.hpp"

namespace catq {

struct RecurrenceSpec {
  std::size_t m = 0;
  std::size_t d = 0;
  // Prime factors of m with multiplicity, ascending.
  std::vector<std::size_t> factors;

  // Odd m >= 3 only.
  static RecurrenceSpec make(std::size_t m);
};

std::vector<std::size_t> prime_factors(std::size_t m);

// Block (r, s) is the tensor product over prime factors p_j of U^(p_j) at the
// mixed-radix digits of r and s; system index r * m + s.
ControlledUnitary recurrence_controlled(const RecurrenceSpec& spec);
ControlledUnitary recurrence_controlled(const RecurrenceSpec& spec,
                                        const OrthonormalBasis& basis);
UnitaryOperator recurrence_unitary(const RecurrenceSpec& spec);

// tr_R[V^k (rho (x) 1/m) V^-k], k may be negative.
DensityMatrix stroboscopic_map(const ControlledUnitary& v, const DensityMatrix& rho,
                               long long k);
// id if k mod m == 0, otherwise the pinch.
DensityMatrix predicted_map(long long k, std::size_t m, const DensityMatrix& rho,
                            const OrthonormalBasis& basis);

// tr_R[exp(-iHt) (rho (x) 1/m) exp(iHt)] with H = i log V. The block spectra
// are computed once.
class ContinuousEvolution {
 public:
  explicit ContinuousEvolution(const ControlledUnitary& v);
  DensityMatrix at(const DensityMatrix& rho, double t) const;

 private:
  OrthonormalBasis control_;
  std::vector<UnitarySpectrum> spectra_;
};
DensityMatrix continuous_evolution(const ControlledUnitary& v, const DensityMatrix& rho,
                                   double t);
// Reference path through the dense Hamiltonian of the full unitary.
DensityMatrix continuous_evolution_dense(const UnitaryOperator& v, std::size_t m,
                                         const DensityMatrix& rho, double t);

struct SweepPoint {
  double t = 0.0;
  double distance = 0.0;
};
struct TimeSweep {
  std::size_t m = 0;
  std::vector<SweepPoint> points;  // ascending t over [0, m]
  double midpoint_distance = 0.0;   // t = m / 2
  double midpoint_hs_distance = 0.0;
  double max_integer_distance = 0.0;    // integer t not divisible by m
  double max_recurrence_deviation = 0.0;  // ||rho(t) - rho||_1 at t = 0, m
  // `m,t_over_m,distance`
  std::string csv() const;
};
// Maximally coherent input of dimension m^2. Samples j m / samples for
// j = 0..samples plus every integer time.
TimeSweep time_sweep(std::size_t m, std::size_t samples_per_period);
std::vector<TimeSweep> time_sweep(const std::vector<std::size_t>& m_values,
                                  std::size_t samples_per_period);

// (1/m) tau^(k^2 (us - rv)) tr(U_{r-u,s-v}^k), computed from matrices.
cplx phase_cancellation(std::size_t m, long long k, long long r, long long u,
                        long long s, long long v);

// Even m has no recurrence guarantee. The stroboscopic map at k = m
// multiplies entry (i, j) by c_i conj(c_j) where U_i^m = c_i 1. With the
// unphased blocks X^r Z^s the factors are signs (-1)^(rs) and recurrence
// only comes back at 2m; the tau phase removes them.
enum class WeylPhase { Tau, Unphased };
struct EvenRecurrenceDiagnostic {
  std::size_t m = 0;
  WeylPhase phase = WeylPhase::Tau;
  Eigen::MatrixXd factors;  // real part of c_i conj(c_j)
  std::size_t flipped_entries = 0;
  double deviation_at_m = 0.0;   // max |entry| of the map minus identity, k = m
  double deviation_at_2m = 0.0;
  // max over 0 < k < m of the distance of the k-step kernel from the pinch
  double worst_pinch_deviation = 0.0;
};
EvenRecurrenceDiagnostic even_recurrence_diagnostic(std::size_t m, WeylPhase phase);

// Kernel G(k) with tr_R[V^k (rho (x) 1/m) V^-k] = rho o G(k) in the control
// basis.
ComplexMatrix stroboscopic_kernel(const ControlledUnitary& v, long long k);

}  // namespace catq
