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

#include "catq/pqc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "catq/config.hpp"
#include "catq/error.hpp"
#include "catq/random.hpp"
#include "catq/weyl.hpp"

namespace catq {

namespace {

using Index = Eigen::Index;

constexpr std::size_t kS = 0;
constexpr std::size_t kA1 = 1;
constexpr std::size_t kB1 = 2;
constexpr std::size_t kA2 = 3;
constexpr std::size_t kB2 = 4;

ComplexMatrix id(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Index>(d), static_cast<Index>(d));
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

// sum_i |b_i><b_i|_S (x) op_i on `target`, identity on the other key qubits.
ComplexMatrix controlled_on_message(const OrthonormalBasis& basis,
                                    const std::vector<ComplexMatrix>& ops,
                                    std::size_t target, bool conjugate) {
  ComplexMatrix out = ComplexMatrix::Zero(PqcKey::kJointDim, PqcKey::kJointDim);
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const ComplexVector b = basis.vector(i);
    std::array<ComplexMatrix, 5> factors{b * b.adjoint(), id(2), id(2), id(2), id(2)};
    factors[target] = conjugate ? ComplexMatrix(ops[i].conjugate()) : ops[i];
    out += tensor(std::span<const ComplexMatrix>(factors));
  }
  return out;
}

ComplexMatrix encoder(const PqcKey& key) {
  const ComplexMatrix ui = controlled_on_message(key.basis_i, key.ops, kA1, false);
  const ComplexMatrix uj = controlled_on_message(key.basis_j, key.ops, kA2, false);
  return uj * ui;
}

ComplexMatrix decoder(const PqcKey& key) {
  const ComplexMatrix vi = controlled_on_message(key.basis_i, key.ops, kB1, true);
  const ComplexMatrix vj = controlled_on_message(key.basis_j, key.ops, kB2, true);
  return vi * vj;
}

ComplexMatrix pauli_x() { return pauli_op(2, 1, 0); }
ComplexMatrix pauli_z() { return pauli_op(2, 0, 1); }

ComplexMatrix z_x(std::uint8_t z, std::uint8_t x) {
  ComplexMatrix out = id(2);
  if (z) out = out * pauli_z();
  if (x) out = out * pauli_x();
  return out;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a) {
  HermitianEigen eig = hermitian_eigen(a);
  ComplexMatrix scaled = eig.vectors;
  for (Index k = 0; k < eig.values.size(); ++k) {
    scaled.col(k) *= std::sqrt(std::max(0.0, eig.values(k)));
  }
  return scaled * eig.vectors.adjoint();
}

std::uint64_t chunk_seed(std::uint64_t seed, std::size_t c) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(c)));
}

AuthResult authenticate_with(const Syndrome& v, std::size_t rounds, Rng& rng) {
  AuthResult out;
  std::uniform_int_distribution<int> coin(0, 1);
  for (std::size_t round = 0; round < rounds; ++round) {
    unsigned parity = 0;
    for (std::uint8_t bit : v.bits) {
      if (coin(rng)) parity ^= bit;
    }
    // Each checked parity destroys one ebit.
    ++out.ebits_consumed;
    if (parity) {
      out.accept = false;
      break;
    }
  }
  return out;
}

}  // namespace

PqcKey PqcKey::standard() {
  const auto [comp2, hadamard] = mub_pair(2);
  (void)comp2;
  const ComplexMatrix hh = tensor(hadamard.vectors(), hadamard.vectors());
  // X^a Z^b with index 2a + b; no tau phase (see pauli_basis).
  return PqcKey{OrthonormalBasis::computational(kMessageDim), OrthonormalBasis(hh),
                pauli_basis(2).ops()};
}

SubsystemLayout PqcKey::layout() { return SubsystemLayout{4, 2, 2, 2, 2}; }

ComplexVector PqcKey::key_vector() {
  const ComplexVector phi = bell_vector(BellLabel::PhiPlus);
  return tensor(phi, phi);
}

PauliError PauliError::from_index(std::size_t i) {
  if (i >= 16) throw PreconditionError("PauliError: index must be below 16");
  PauliError e;
  for (std::size_t k = 0; k < 4; ++k) e.bits[k] = static_cast<std::uint8_t>((i >> (3 - k)) & 1U);
  return e;
}

PauliError PauliError::parse(const std::string& s) {
  if (s.size() != 4 || s.find_first_not_of("01") != std::string::npos) {
    throw PreconditionError("PauliError: expected four binary digits, got '" + s + "'");
  }
  PauliError e;
  for (std::size_t k = 0; k < 4; ++k) e.bits[k] = static_cast<std::uint8_t>(s[k] - '0');
  return e;
}

std::size_t PauliError::index() const {
  return static_cast<std::size_t>(bits[0] << 3 | bits[1] << 2 | bits[2] << 1 | bits[3]);
}

std::string PauliError::str() const {
  std::string s;
  for (auto b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

ComplexMatrix PauliError::on_message() const {
  return tensor(z_x(bits[0], bits[1]), z_x(bits[2], bits[3]));
}

ComplexVector bell_vector(BellLabel label) {
  const double h = 1.0 / std::sqrt(2.0);
  ComplexVector v = ComplexVector::Zero(4);
  switch (label) {
    case BellLabel::PhiPlus: v << h, 0, 0, h; break;
    case BellLabel::PsiPlus: v << 0, h, h, 0; break;
    case BellLabel::PhiMinus: v << h, 0, 0, -h; break;
    case BellLabel::PsiMinus: v << 0, h, -h, 0; break;
  }
  return v;
}

std::string to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return "Phi+";
    case BellLabel::PsiPlus: return "Psi+";
    case BellLabel::PhiMinus: return "Phi-";
    case BellLabel::PsiMinus: return "Psi-";
  }
  return "?";
}

std::string Syndrome::str() const {
  std::string s;
  for (auto b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

bool Syndrome::zero() const {
  return std::all_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b == 0; });
}

DensityMatrix pqc_encode(const DensityMatrix& rho, const PqcKey& key) {
  if (rho.dim() != PqcKey::kMessageDim) throw DimensionError("pqc_encode: message must be 4-dim");
  check_dimension_cap(PqcKey::kJointDim, "pqc_encode");
  const ComplexVector k = PqcKey::key_vector();
  const ComplexMatrix joint = tensor(rho.matrix(), ComplexMatrix(k * k.adjoint()));
  const ComplexMatrix u = encoder(key);
  return DensityMatrix::trusted(hermitize(u * joint * u.adjoint()));
}

DensityMatrix apply_pauli_error(const DensityMatrix& joint, const PauliError& err) {
  if (joint.dim() != PqcKey::kJointDim) throw DimensionError("apply_pauli_error: joint must be 64-dim");
  const ComplexMatrix p = tensor(err.on_message(), id(16));
  return DensityMatrix::trusted(hermitize(p * joint.matrix() * p.adjoint()));
}

Decoded pqc_decode(const DensityMatrix& joint, const PqcKey& key) {
  if (joint.dim() != PqcKey::kJointDim) throw DimensionError("pqc_decode: joint must be 64-dim");
  const ComplexMatrix v = decoder(key);
  const ComplexMatrix out = hermitize(v * joint.matrix() * v.adjoint());
  const SubsystemLayout layout = PqcKey::layout();
  DensityMatrix message = DensityMatrix::trusted(partial_trace(out, layout, {kS}));
  DensityMatrix key_state =
      DensityMatrix::trusted(partial_trace(out, layout, {kA1, kB1, kA2, kB2}));
  const double f = fidelity_with_pure(key_state, PqcKey::key_vector());
  return Decoded{std::move(message), std::move(key_state), f, DensityMatrix::trusted(out)};
}

DensityMatrix ciphertext_marginal(const DensityMatrix& joint) {
  return partial_trace(joint, PqcKey::layout(), {kS});
}

double security_residual(const DensityMatrix& rho_se, std::size_t dim_e, const PqcKey& key) {
  if (rho_se.dim() != PqcKey::kMessageDim * dim_e) {
    throw DimensionError("security_residual: rho_SE must be 4 * dim_e");
  }
  check_dimension_cap(PqcKey::kJointDim * dim_e, "security_residual");
  // Factor order S, E, A1, B1, A2, B2.
  const ComplexVector k = PqcKey::key_vector();
  const ComplexMatrix joint = tensor(rho_se.matrix(), ComplexMatrix(k * k.adjoint()));
  const ComplexMatrix ui_s = controlled_on_message(key.basis_i, key.ops, kA1, false);
  const ComplexMatrix uj_s = controlled_on_message(key.basis_j, key.ops, kA2, false);
  // Move E next to S: U acts on S (x) key, so conjugate by the swap of E and
  // the key block.
  const SubsystemLayout layout{4, dim_e, 2, 2, 2, 2};
  const auto de = static_cast<Index>(dim_e);
  ComplexMatrix u = ComplexMatrix::Zero(joint.rows(), joint.cols());
  const ComplexMatrix enc = uj_s * ui_s;  // on S (x) key, 64 x 64
  // enc[(s, k), (s', k')] -> u[(s, e, k), (s', e, k')]
  for (Index s = 0; s < 4; ++s)
    for (Index sp = 0; sp < 4; ++sp)
      for (Index e = 0; e < de; ++e) {
        u.block((s * de + e) * 16, (sp * de + e) * 16, 16, 16) = enc.block(s * 16, sp * 16, 16, 16);
      }
  const ComplexMatrix out = u * joint * u.adjoint();
  const ComplexMatrix eve = partial_trace(out, layout, {0, 1});
  const ComplexMatrix rho_e = partial_trace(rho_se.matrix(), SubsystemLayout{4, dim_e}, {1});
  return trace_norm(eve - tensor(DensityMatrix::maximally_mixed(4).matrix(), rho_e));
}

Syndrome extract_syndrome(const DensityMatrix& key_state) {
  if (key_state.dim() != 16) throw DimensionError("extract_syndrome: key state must be 16-dim");
  const SubsystemLayout layout{2, 2, 2, 2};
  Syndrome out;
  for (std::size_t ebit = 0; ebit < 2; ++ebit) {
    const std::array<std::size_t, 2> keep{2 * ebit, 2 * ebit + 1};
    const DensityMatrix pair = DensityMatrix::trusted(partial_trace(key_state.matrix(), layout, keep));
    double best = -1.0;
    std::uint8_t label = 0;
    for (std::uint8_t l = 0; l < 4; ++l) {
      const double f = fidelity_with_pure(pair, bell_vector(static_cast<BellLabel>(l)));
      if (f > best) {
        best = f;
        label = l;
      }
    }
    if (1.0 - best > tolerances().bell_fidelity) {
      throw IntegrityError("extract_syndrome: ebit " + std::to_string(ebit + 1) +
                           " is not a Bell state (best fidelity " + std::to_string(best) + ")");
    }
    out.bits.push_back(static_cast<std::uint8_t>(label >> 1));
    out.bits.push_back(static_cast<std::uint8_t>(label & 1U));
  }
  return out;
}

std::array<Syndrome, 16> syndrome_table(const PqcKey& key) {
  std::array<Syndrome, 16> table;
  const DensityMatrix reference = DensityMatrix::maximally_mixed(PqcKey::kMessageDim);
  const DensityMatrix encoded = pqc_encode(reference, key);
  for (std::size_t i = 0; i < 16; ++i) {
    const Decoded dec = pqc_decode(apply_pauli_error(encoded, PauliError::from_index(i)), key);
    table[i] = extract_syndrome(dec.key);
  }
  return table;
}

PauliError error_from_syndrome(const Syndrome& syndrome, const PqcKey& key) {
  const std::array<Syndrome, 16> table = syndrome_table(key);
  for (std::size_t i = 0; i < 16; ++i) {
    if (table[i] == syndrome) return PauliError::from_index(i);
  }
  throw IntegrityError("error_from_syndrome: syndrome " + syndrome.str() + " not in table");
}

std::array<PauliError, 16> residual_table(const PqcKey& key) {
  // A fixed full-rank probe with distinct Pauli expectations tells all 16
  // conjugations apart.
  Rng rng = stream(0x9e3779b97f4a7c15ULL, 0);
  const DensityMatrix probe = random_density_matrix(PqcKey::kMessageDim, rng);
  const DensityMatrix encoded = pqc_encode(probe, key);
  std::array<PauliError, 16> table;
  for (std::size_t i = 0; i < 16; ++i) {
    const Decoded dec = pqc_decode(apply_pauli_error(encoded, PauliError::from_index(i)), key);
    std::size_t hits = 0;
    for (std::size_t j = 0; j < 16; ++j) {
      const PauliError q = PauliError::from_index(j);
      const ComplexMatrix p = q.on_message();
      if (trace_norm(p * probe.matrix() * p.adjoint() - dec.message.matrix()) < 1e-9) {
        table[i] = q;
        ++hits;
      }
    }
    if (hits != 1) {
      throw IntegrityError("residual_table: no unique Pauli frame for error " +
                           PauliError::from_index(i).str());
    }
  }
  return table;
}

PauliError correction_from_syndrome(const Syndrome& syndrome, const PqcKey& key) {
  return residual_table(key)[error_from_syndrome(syndrome, key).index()];
}

DensityMatrix correct_message(const DensityMatrix& message, const PauliError& residual) {
  const ComplexMatrix p = residual.on_message();
  return DensityMatrix::trusted(hermitize(p.adjoint() * message.matrix() * p));
}

BellDiscrimination bell_discriminate(const DensityMatrix& chi) {
  if (chi.dim() != 4) throw DimensionError("bell_discriminate: chi must be a two-qubit state");
  // Qubit order a1 a2 s1 s2; a1, s1 on one side, a2, s2 on the other.
  const ComplexVector aux = bell_vector(BellLabel::PhiPlus);
  const ComplexMatrix state = tensor(ComplexMatrix(aux * aux.adjoint()), chi.matrix());
  ComplexMatrix cnots = ComplexMatrix::Zero(16, 16);
  for (Index in = 0; in < 16; ++in) {
    const Index a1 = (in >> 3) & 1;
    const Index a2 = (in >> 2) & 1;
    const Index s1 = ((in >> 1) & 1) ^ a1;
    const Index s2 = (in & 1) ^ a2;
    cnots((a1 << 3) | (a2 << 2) | (s1 << 1) | s2, in) = 1.0;
  }
  const ComplexMatrix after = cnots * state * cnots.adjoint();
  const auto [comp, hadamard] = mub_pair(2);
  const ComplexMatrix basis = tensor(std::array<ComplexMatrix, 4>{
      hadamard.vectors(), hadamard.vectors(), comp.vectors(), comp.vectors()});
  const ComplexMatrix in_basis = basis.adjoint() * after * basis;

  BellDiscrimination out;
  for (Index o = 0; o < 16; ++o) {
    const double p = in_basis(o, o).real();
    const unsigned z = static_cast<unsigned>(((o >> 3) & 1) ^ ((o >> 2) & 1));
    const unsigned x = static_cast<unsigned>(((o >> 1) & 1) ^ (o & 1));
    out.probabilities[(z << 1) | x] += p;
  }
  const auto best = std::max_element(out.probabilities.begin(), out.probabilities.end());
  out.label = static_cast<BellLabel>(best - out.probabilities.begin());
  out.confidence = *best;
  return out;
}

AuthResult parity_authenticate(const Syndrome& v, std::size_t rounds, std::uint64_t seed) {
  Rng rng = stream(seed, 0);
  return authenticate_with(v, rounds, rng);
}

double acceptance_rate(const Syndrome& v, std::size_t rounds, std::size_t trials,
                       std::uint64_t master_seed) {
  if (trials == 0) return 0.0;
  std::vector<unsigned char> accepted(trials, 0);
  const auto n = static_cast<long long>(trials);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    Rng rng = stream(master_seed, static_cast<std::uint64_t>(i));
    accepted[static_cast<std::size_t>(i)] = authenticate_with(v, rounds, rng).accept ? 1 : 0;
  }
  std::size_t count = 0;
  for (auto a : accepted) count += a;
  return static_cast<double>(count) / static_cast<double>(trials);
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("fidelity: dimension mismatch");
  const ComplexMatrix sa = matrix_sqrt_psd(a.matrix());
  const RealVector ev = hermitian_eigenvalues(sa * b.matrix() * sa);
  double root_sum = 0.0;
  for (Index k = 0; k < ev.size(); ++k) root_sum += std::sqrt(std::max(0.0, ev(k)));
  return root_sum * root_sum;
}

Transcript pqc_transmit(const DensityMatrix& rho, const PauliError& err, std::size_t rounds,
                        std::uint64_t seed) {
  const PqcKey key = PqcKey::standard();
  const DensityMatrix encoded = pqc_encode(rho, key);
  Transcript t{rho, 0.0, {}, true, 0, 0.0};
  t.ciphertext_marginal_distance =
      trace_norm(ciphertext_marginal(encoded).matrix() - DensityMatrix::maximally_mixed(4).matrix());
  const Decoded dec = pqc_decode(apply_pauli_error(encoded, err), key);
  t.syndrome = extract_syndrome(dec.key);
  const AuthResult auth = parity_authenticate(t.syndrome, rounds, seed);
  t.accepted = auth.accept;
  t.ebits_consumed = auth.ebits_consumed;
  const DensityMatrix corrected =
      correct_message(dec.message, correction_from_syndrome(t.syndrome, key));
  t.recovered_fidelity = fidelity(corrected, rho);
  return t;
}

std::vector<Transcript> pqc_transmit_chunks(const std::vector<DensityMatrix>& chunks,
                                            const std::vector<PauliError>& errors,
                                            std::size_t rounds, std::uint64_t seed) {
  if (chunks.size() != errors.size()) {
    throw DimensionError("pqc_transmit_chunks: one error per chunk");
  }
  std::vector<Transcript> out;
  out.reserve(chunks.size());
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    out.push_back(pqc_transmit(chunks[c], errors[c], rounds, chunk_seed(seed, c)));
  }
  return out;
}

}  // namespace catq
