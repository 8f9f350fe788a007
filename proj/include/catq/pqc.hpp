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
#include <string>
#include <vector>

#include "catq/qcore.hpp"

namespace catq {

// Two message qubits S (dimension 4) and two ebits A1 B1, A2 B2. Joint
// factor order: S, A1, B1, A2, B2. The sender controls on S in basis I to
// act on A1, then in basis J = H (x) H to act on A2, with the unphased Pauli
// basis X^a Z^b (index 2a + b) as the unitary operator basis.
struct PqcKey {
  static constexpr std::size_t kMessageDim = 4;
  static constexpr std::size_t kJointDim = 64;

  OrthonormalBasis basis_i;
  OrthonormalBasis basis_j;
  std::vector<ComplexMatrix> ops;  // 4 two-by-two unitaries

  static PqcKey standard();
  static SubsystemLayout layout();
  // |phi+>_{A1B1} (x) |phi+>_{A2B2}
  static ComplexVector key_vector();
};

// Z^a X^b on the first message qubit, Z^c X^d on the second.
struct PauliError {
  std::array<std::uint8_t, 4> bits{};

  static PauliError from_index(std::size_t i);  // bits of i, a most significant
  static PauliError parse(const std::string& s);  // "abcd"
  std::size_t index() const;
  std::string str() const;
  ComplexMatrix on_message() const;
  bool operator==(const PauliError&) const = default;
};

// Phi+ -> 00, Psi+ -> 01, Phi- -> 10, Psi- -> 11 (Z exponent, X exponent).
enum class BellLabel : std::uint8_t { PhiPlus = 0, PsiPlus = 1, PhiMinus = 2, PsiMinus = 3 };
ComplexVector bell_vector(BellLabel label);
std::string to_string(BellLabel label);

struct Syndrome {
  std::vector<std::uint8_t> bits;
  std::string str() const;
  bool zero() const;
  bool operator==(const Syndrome&) const = default;
};

DensityMatrix pqc_encode(const DensityMatrix& rho, const PqcKey& key);
DensityMatrix apply_pauli_error(const DensityMatrix& joint, const PauliError& err);

struct Decoded {
  DensityMatrix message;
  DensityMatrix key;  // A1 B1 A2 B2
  double key_fidelity = 0.0;  // with |phi+>|phi+>
  DensityMatrix joint;
};
Decoded pqc_decode(const DensityMatrix& joint, const PqcKey& key);
// Marginal on S of an encoded joint state.
DensityMatrix ciphertext_marginal(const DensityMatrix& joint);

// Eve holds E of dimension dim_e alongside S. Returns
// ||tr_key[(encode (x) id)(rho_SE)] - 1/4 (x) rho_E||_1.
double security_residual(const DensityMatrix& rho_se, std::size_t dim_e,
                         const PqcKey& key);

// Each ebit marginal must be a Bell state within the configured fidelity
// tolerance; otherwise IntegrityError.
Syndrome extract_syndrome(const DensityMatrix& key_state);

// Table of the syndrome produced by each of the 16 errors, by simulation.
std::array<Syndrome, 16> syndrome_table(const PqcKey& key);
PauliError error_from_syndrome(const Syndrome& syndrome, const PqcKey& key);

// Pauli left on the decoded message by each channel error. It differs from
// the channel error itself: an X (Z) on the second qubit also leaves a Z (X)
// on the first one.
std::array<PauliError, 16> residual_table(const PqcKey& key);
PauliError correction_from_syndrome(const Syndrome& syndrome, const PqcKey& key);
DensityMatrix correct_message(const DensityMatrix& message, const PauliError& residual);

// Bilateral CNOT from an auxiliary Phi+ (control) onto chi (target), then X
// measurement on the auxiliary pair and Z measurement on chi.
struct BellDiscrimination {
  BellLabel label = BellLabel::PhiPlus;
  double confidence = 0.0;  // probability of the reported label
  std::array<double, 4> probabilities{};
};
BellDiscrimination bell_discriminate(const DensityMatrix& chi);

struct AuthResult {
  bool accept = true;
  std::size_t ebits_consumed = 0;
};
// r rounds; each round draws a uniformly random subset of bit positions
// (every position independently with probability 1/2) and checks its parity.
AuthResult parity_authenticate(const Syndrome& v, std::size_t rounds, std::uint64_t seed);
// Fraction of accepted trials; trial i uses stream(master, i).
double acceptance_rate(const Syndrome& v, std::size_t rounds, std::size_t trials,
                       std::uint64_t master_seed);

struct Transcript {
  DensityMatrix message;
  double ciphertext_marginal_distance = 0.0;
  Syndrome syndrome;
  bool accepted = true;
  std::size_t ebits_consumed = 0;
  double recovered_fidelity = 0.0;
};
// Encode, apply err in transit, decode, read the syndrome, authenticate and
// correct. Fidelity is between the corrected message and the input.
Transcript pqc_transmit(const DensityMatrix& rho, const PauliError& err,
                        std::size_t rounds, std::uint64_t seed);

// Product of two-qubit chunks, each sent with its own key pair.
std::vector<Transcript> pqc_transmit_chunks(const std::vector<DensityMatrix>& chunks,
                                            const std::vector<PauliError>& errors,
                                            std::size_t rounds, std::uint64_t seed);

double fidelity(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace catq
