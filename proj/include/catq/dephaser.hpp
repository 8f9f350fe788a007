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
#include <optional>
#include <string>
#include <vector>

#include "catq/qcore.hpp"

namespace catq {

// U = sum_i |a_i><a_i| (x) U_i on system (x) ancilla. Channels built from this
// form are applied without ever materializing U.
struct ControlledUnitary {
  OrthonormalBasis control;
  std::vector<ComplexMatrix> blocks;

  std::size_t system_dim() const { return control.dim(); }
  std::size_t ancilla_dim() const {
    return blocks.empty() ? 0 : static_cast<std::size_t>(blocks.front().rows());
  }
  UnitaryOperator dense() const;
  // Same control basis, each block raised to the integer power k.
  ControlledUnitary power(long long k) const;
};

class NoisyChannel {
 public:
  enum class Kind { QuantumDilation, ClassicalMixture };

  static NoisyChannel dilation(UnitaryOperator u, std::size_t ancilla_dim);
  static NoisyChannel dilation(ControlledUnitary cu);
  static NoisyChannel mixture(std::vector<UnitaryOperator> unitaries);

  Kind kind() const { return kind_; }
  std::size_t system_dim() const { return system_dim_; }
  // Ancilla dimension for a dilation, number of unitaries for a mixture.
  std::size_t randomness_dim() const;
  const UnitaryOperator& dilation_unitary() const;
  const ControlledUnitary* controlled() const {
    return controlled_ ? &*controlled_ : nullptr;
  }
  const std::vector<UnitaryOperator>& mixture_unitaries() const {
    return mixture_;
  }

 private:
  NoisyChannel() = default;
  Kind kind_ = Kind::ClassicalMixture;
  std::size_t system_dim_ = 0;
  std::size_t ancilla_dim_ = 0;
  std::optional<UnitaryOperator> unitary_;
  std::optional<ControlledUnitary> controlled_;
  std::vector<UnitaryOperator> mixture_;
};

std::string to_string(NoisyChannel::Kind kind);

DensityMatrix pinch(const DensityMatrix& rho, const OrthonormalBasis& basis);

// Exact dephasing with ancilla dimension ceil(sqrt(d)); blocks are the
// first d Weyl operators of dimension m.
NoisyChannel build_dephasing_unitary(std::size_t d, const OrthonormalBasis& basis);
ControlledUnitary dephasing_controlled_unitary(std::size_t d,
                                               const OrthonormalBasis& basis);
std::size_t ceil_sqrt(std::size_t d);

// Ancilla starts maximally mixed.
DensityMatrix apply(const NoisyChannel& channel, const DensityMatrix& rho);
// Always goes through the dense unitary and a partial trace.
DensityMatrix apply_dense(const NoisyChannel& channel, const DensityMatrix& rho);
// Ancilla marginal tr_S[U (rho (x) 1/m) U^dagger] of a dilation.
DensityMatrix ancilla_marginal(const NoisyChannel& channel, const DensityMatrix& rho);

// rho -> (1/d) sum_j Z^j rho Z^-j
NoisyChannel classical_dephasing_channel(std::size_t d);

// D_sigma(rho) = tr_R[U (rho (x) sigma) U^dagger]
DensityMatrix machine_system_map(const ControlledUnitary& u, const DensityMatrix& rho,
                                 const DensityMatrix& sigma);
// D~_rho(sigma) = tr_S[U (rho (x) sigma) U^dagger]
DensityMatrix machine_ancilla_map(const ControlledUnitary& u, const DensityMatrix& rho,
                                  const DensityMatrix& sigma);

enum class TransitionMode { Quantum, Classical };
std::string to_string(TransitionMode mode);

struct Transition {
  UnitaryOperator pre;
  NoisyChannel dephase;
  UnitaryOperator post;
};
Transition transition_channel(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                              TransitionMode mode);
DensityMatrix apply(const Transition& t, const DensityMatrix& rho);

struct ChainReport {
  std::vector<double> marginal_residuals;
  double catalyst_residual = 0.0;
  // (i, j, I(S_i : S_j)) for i < j
  struct Pair {
    std::size_t i;
    std::size_t j;
    double mutual_information;
  };
  std::vector<Pair> mutual_information;
};
struct ChainResult {
  DensityMatrix joint;  // S_1 ... S_N R
  SubsystemLayout layout;
  ChainReport report;
};
// Every state must have the same dimension d; one catalyst of dimension
// ceil(sqrt(d)) is reused on each system in turn.
ChainResult catalytic_chain(const std::vector<DensityMatrix>& states,
                            const std::vector<OrthonormalBasis>& bases);

struct MachineStep {
  DensityMatrix rho;
  DensityMatrix sigma;
};
MachineStep machine_step(const DensityMatrix& rho, const DensityMatrix& sigma);

struct MachineRow {
  std::size_t n = 0;
  double dist_system = 0.0;
  double dist_ancilla = 0.0;
  double entropy = 0.0;
  double bound = 0.0;
  double ancilla_bound = 0.0;
};
struct MachineReport {
  double initial_distance = 0.0;  // ||rho - pi(rho)||_1
  double initial_entropy = 0.0;
  std::vector<MachineRow> rows;  // n = 1..N
  // `n,dist_system,dist_ancilla,entropy,bound`
  std::string csv() const;
};
// Row n: dist_system = ||D_{sigma_n}...D_{sigma_1}(rho) - pi(rho)||_1 with
// bound prod ||sigma_i - 1/m||_1; dist_ancilla = ||D~_rho^n(sigma_1) - 1/m||_1
// (fresh copies of rho feeding one ancilla) with bound ||rho - 1/d||_1^n;
// entropy = S of the system state.
MachineReport machine_iterate(const DensityMatrix& rho,
                              const std::vector<DensityMatrix>& sigma_stream);

struct DistillationResult {
  std::size_t mixing_steps = 0;
  double ancilla_distance = 0.0;
  double predicted_steps_bound = 0.0;
  std::vector<double> fresh_copy_residuals;
};
// d must be a perfect square m^2. The catalyst starts as the marginal of rho
// on the first factor of the m x m split. Copies of rho mix it until it is
// within `target` of uniform; then `fresh_copies` further copies are
// dephased with it, the catalyst carrying on after each one.
DistillationResult noise_distillation(const DensityMatrix& rho, double target,
                                      std::size_t fresh_copies,
                                      std::size_t max_steps = 10000);

// S (x) E1 (x) E2 with E1, E2 of dimension ceil(sqrt(d)); U acts on S E1 as
// the dephasing unitary and trivially on E2.
struct Decoherence {
  UnitaryOperator unitary;
  SubsystemLayout layout;
  ComplexVector environment;  // maximally entangled E1 E2 vector
};
Decoherence decoherence_unitary(std::size_t d, const OrthonormalBasis& basis);
DensityMatrix decohere(const Decoherence& dec, const ComplexVector& psi);
// Environment marginal tr_S of the joint output.
DensityMatrix decoherence_environment(const Decoherence& dec, const ComplexVector& psi);

// S (x) P (x) R1 (x) R2; P is a d-dim pointer with P_i = |i>, R1, R2 of
// dimension ceil(sqrt(d)). Returns the S P marginal.
DensityMatrix measurement_process(const ComplexVector& psi);

}  // namespace catq
