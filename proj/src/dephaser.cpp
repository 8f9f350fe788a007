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

#include "catq/dephaser.hpp"

#include <cmath>
#include <sstream>

#include "catq/config.hpp"
#include "catq/error.hpp"
#include "catq/kernels.hpp"
#include "catq/weyl.hpp"

namespace catq {

namespace {

using Index = Eigen::Index;

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

ComplexMatrix matrix_power(const ComplexMatrix& u, long long k) {
  ComplexMatrix base = k < 0 ? ComplexMatrix(u.adjoint()) : u;
  unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k);
  ComplexMatrix result = ComplexMatrix::Identity(u.rows(), u.cols());
  while (e > 0) {
    if (e & 1ULL) result = result * base;
    e >>= 1ULL;
    if (e > 0) base = base * base;
  }
  return result;
}

bool is_identity_basis(const OrthonormalBasis& b) {
  const auto n = static_cast<Index>(b.dim());
  return (b.vectors() - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0;
}

ComplexMatrix to_control_basis(const OrthonormalBasis& b, const ComplexMatrix& rho) {
  if (is_identity_basis(b)) return rho;
  return b.vectors().adjoint() * rho * b.vectors();
}

ComplexMatrix from_control_basis(const OrthonormalBasis& b, const ComplexMatrix& a) {
  if (is_identity_basis(b)) return a;
  return b.vectors() * a * b.vectors().adjoint();
}

void check_system(const ControlledUnitary& u, const DensityMatrix& rho,
                  const DensityMatrix& sigma) {
  if (rho.dim() != u.system_dim()) throw DimensionError("system dimension mismatch");
  if (sigma.dim() != u.ancilla_dim()) throw DimensionError("ancilla dimension mismatch");
}

}  // namespace

std::size_t ceil_sqrt(std::size_t d) {
  std::size_t m = static_cast<std::size_t>(std::sqrt(static_cast<double>(d)));
  while (m * m < d) ++m;
  while (m > 0 && (m - 1) * (m - 1) >= d) --m;
  return m;
}

UnitaryOperator ControlledUnitary::dense() const {
  const std::size_t d = system_dim();
  const std::size_t m = ancilla_dim();
  check_dimension_cap(d * m, "ControlledUnitary::dense");
  const auto n = static_cast<Index>(d * m);
  const auto mm = static_cast<Index>(m);
  ComplexMatrix block_diag = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i) {
    const auto k = static_cast<Index>(i);
    block_diag.block(k * mm, k * mm, mm, mm) = blocks[i];
  }
  if (is_identity_basis(control)) return UnitaryOperator::trusted(std::move(block_diag));
  const ComplexMatrix b = tensor(control.vectors(), ComplexMatrix::Identity(mm, mm));
  return UnitaryOperator::trusted(b * block_diag * b.adjoint());
}

ControlledUnitary ControlledUnitary::power(long long k) const {
  ControlledUnitary out{control, {}};
  out.blocks.reserve(blocks.size());
  for (const auto& b : blocks) out.blocks.push_back(matrix_power(b, k));
  return out;
}

NoisyChannel NoisyChannel::dilation(UnitaryOperator u, std::size_t ancilla_dim) {
  if (ancilla_dim == 0 || u.dim() % ancilla_dim != 0) {
    throw DimensionError("dilation: ancilla dimension does not divide the unitary size");
  }
  NoisyChannel c;
  c.kind_ = Kind::QuantumDilation;
  c.system_dim_ = u.dim() / ancilla_dim;
  c.ancilla_dim_ = ancilla_dim;
  c.unitary_ = std::move(u);
  return c;
}

NoisyChannel NoisyChannel::dilation(ControlledUnitary cu) {
  if (cu.blocks.size() != cu.system_dim() || cu.blocks.empty()) {
    throw DimensionError("dilation: need one block per control basis vector");
  }
  for (const auto& b : cu.blocks) {
    if (static_cast<std::size_t>(b.rows()) != cu.ancilla_dim() || b.rows() != b.cols()) {
      throw DimensionError("dilation: blocks must share one square size");
    }
    if (unitarity_defect(b) > tolerances().unitary) {
      throw PreconditionError("dilation: block is not unitary");
    }
  }
  NoisyChannel c;
  c.kind_ = Kind::QuantumDilation;
  c.system_dim_ = cu.system_dim();
  c.ancilla_dim_ = cu.ancilla_dim();
  if (c.system_dim_ * c.ancilla_dim_ <= tolerances().dimension_cap) c.unitary_ = cu.dense();
  c.controlled_ = std::move(cu);
  return c;
}

NoisyChannel NoisyChannel::mixture(std::vector<UnitaryOperator> unitaries) {
  if (unitaries.empty()) throw PreconditionError("mixture: no unitaries");
  for (const auto& u : unitaries) {
    if (u.dim() != unitaries.front().dim()) {
      throw DimensionError("mixture: unitaries differ in dimension");
    }
  }
  NoisyChannel c;
  c.kind_ = Kind::ClassicalMixture;
  c.system_dim_ = unitaries.front().dim();
  c.ancilla_dim_ = unitaries.size();
  c.mixture_ = std::move(unitaries);
  return c;
}

std::size_t NoisyChannel::randomness_dim() const { return ancilla_dim_; }

const UnitaryOperator& NoisyChannel::dilation_unitary() const {
  if (kind_ != Kind::QuantumDilation) throw PreconditionError("channel has no dilation");
  if (!unitary_) {
    throw ResourceError("dilation unitary exceeds the dimension cap; use the structured form");
  }
  return *unitary_;
}

std::string to_string(NoisyChannel::Kind kind) {
  return kind == NoisyChannel::Kind::QuantumDilation ? "quantum" : "classical";
}

std::string to_string(TransitionMode mode) {
  return mode == TransitionMode::Quantum ? "quantum" : "classical";
}

DensityMatrix pinch(const DensityMatrix& rho, const OrthonormalBasis& basis) {
  if (rho.dim() != basis.dim()) throw DimensionError("pinch: dimension mismatch");
  ComplexMatrix a = to_control_basis(basis, rho.matrix());
  ComplexMatrix diag = a.diagonal().real().cast<cplx>().asDiagonal();
  return DensityMatrix::trusted(from_control_basis(basis, diag));
}

ControlledUnitary dephasing_controlled_unitary(std::size_t d, const OrthonormalBasis& basis) {
  if (d < 2) throw PreconditionError("dephasing unitary: d must be at least 2");
  if (basis.dim() != d) throw DimensionError("dephasing unitary: basis dimension mismatch");
  const std::size_t m = ceil_sqrt(d);
  const UnitaryOperatorBasis ops = weyl_basis(m);
  ControlledUnitary cu{basis, {}};
  cu.blocks.assign(ops.ops().begin(), ops.ops().begin() + static_cast<long>(d));
  return cu;
}

NoisyChannel build_dephasing_unitary(std::size_t d, const OrthonormalBasis& basis) {
  return NoisyChannel::dilation(dephasing_controlled_unitary(d, basis));
}

NoisyChannel classical_dephasing_channel(std::size_t d) {
  if (d < 2) throw PreconditionError("classical dephasing: d must be at least 2");
  const ComplexMatrix z = clock_z(d).matrix();
  std::vector<UnitaryOperator> us;
  ComplexMatrix power = z;
  for (std::size_t j = 1; j <= d; ++j) {
    us.push_back(UnitaryOperator::trusted(power));
    power = power * z;
  }
  return NoisyChannel::mixture(std::move(us));
}

DensityMatrix machine_system_map(const ControlledUnitary& u, const DensityMatrix& rho,
                                 const DensityMatrix& sigma) {
  check_system(u, rho, sigma);
  std::vector<ComplexMatrix> left;
  left.reserve(u.blocks.size());
  for (const auto& b : u.blocks) left.push_back(b * sigma.matrix());
  ComplexMatrix gram;
  kernels::block_gram(left, u.blocks, gram);
  ComplexMatrix a = to_control_basis(u.control, rho.matrix());
  a = a.cwiseProduct(gram);
  return DensityMatrix::trusted(hermitize(from_control_basis(u.control, a)));
}

DensityMatrix machine_ancilla_map(const ControlledUnitary& u, const DensityMatrix& rho,
                                  const DensityMatrix& sigma) {
  check_system(u, rho, sigma);
  const ComplexMatrix a = to_control_basis(u.control, rho.matrix());
  std::vector<double> weights(u.blocks.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = a(static_cast<Index>(i), static_cast<Index>(i)).real();
  }
  ComplexMatrix out;
  kernels::weighted_conjugation(u.blocks, weights, sigma.matrix(), out);
  return DensityMatrix::trusted(hermitize(out));
}

DensityMatrix apply_dense(const NoisyChannel& channel, const DensityMatrix& rho) {
  if (rho.dim() != channel.system_dim()) throw DimensionError("apply: dimension mismatch");
  if (channel.kind() == NoisyChannel::Kind::ClassicalMixture) {
    ComplexMatrix out = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const auto& u : channel.mixture_unitaries()) {
      out += u.matrix() * rho.matrix() * u.matrix().adjoint();
    }
    out /= static_cast<double>(channel.mixture_unitaries().size());
    return DensityMatrix::trusted(hermitize(out));
  }
  const std::size_t m = channel.randomness_dim();
  const ComplexMatrix& u = channel.dilation_unitary().matrix();
  const ComplexMatrix joint =
      u * tensor(rho.matrix(), DensityMatrix::maximally_mixed(m).matrix()) * u.adjoint();
  const SubsystemLayout layout{channel.system_dim(), m};
  return DensityMatrix::trusted(hermitize(partial_trace(joint, layout, {0})));
}

DensityMatrix apply(const NoisyChannel& channel, const DensityMatrix& rho) {
  if (rho.dim() != channel.system_dim()) throw DimensionError("apply: dimension mismatch");
  if (channel.kind() == NoisyChannel::Kind::ClassicalMixture) {
    std::vector<ComplexMatrix> ops;
    ops.reserve(channel.mixture_unitaries().size());
    for (const auto& u : channel.mixture_unitaries()) ops.push_back(u.matrix());
    const std::vector<double> weights(ops.size(), 1.0 / static_cast<double>(ops.size()));
    ComplexMatrix out;
    kernels::weighted_conjugation(ops, weights, rho.matrix(), out);
    return DensityMatrix::trusted(hermitize(out));
  }
  if (const ControlledUnitary* cu = channel.controlled()) {
    return machine_system_map(*cu, rho, DensityMatrix::maximally_mixed(cu->ancilla_dim()));
  }
  return apply_dense(channel, rho);
}

DensityMatrix ancilla_marginal(const NoisyChannel& channel, const DensityMatrix& rho) {
  if (channel.kind() != NoisyChannel::Kind::QuantumDilation) {
    throw PreconditionError("ancilla_marginal: channel has no ancilla");
  }
  if (rho.dim() != channel.system_dim()) throw DimensionError("ancilla_marginal: dimension");
  const std::size_t m = channel.randomness_dim();
  if (const ControlledUnitary* cu = channel.controlled()) {
    return machine_ancilla_map(*cu, rho, DensityMatrix::maximally_mixed(m));
  }
  const ComplexMatrix& u = channel.dilation_unitary().matrix();
  const ComplexMatrix joint =
      u * tensor(rho.matrix(), DensityMatrix::maximally_mixed(m).matrix()) * u.adjoint();
  const SubsystemLayout layout{channel.system_dim(), m};
  return DensityMatrix::trusted(hermitize(partial_trace(joint, layout, {1})));
}

Transition transition_channel(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                              TransitionMode mode) {
  if (rho.dim() != rho_prime.dim()) throw DimensionError("transition: dimension mismatch");
  if (!majorizes(rho, rho_prime)) {
    throw PreconditionError("transition: rho does not majorize rho'");
  }
  const std::size_t d = rho.dim();
  const HermitianEigen from = hermitian_eigen(rho.matrix());
  const HermitianEigen to = hermitian_eigen(rho_prime.matrix());
  const UnitaryOperator v = schur_horn_unitary(
      std::span<const double>(from.values.data(), d),
      std::span<const double>(to.values.data(), d));
  UnitaryOperator pre = UnitaryOperator::trusted(v.matrix() * from.vectors.adjoint());
  NoisyChannel dephase = mode == TransitionMode::Quantum
                             ? build_dephasing_unitary(d, OrthonormalBasis::computational(d))
                             : classical_dephasing_channel(d);
  return Transition{std::move(pre), std::move(dephase), UnitaryOperator::trusted(to.vectors)};
}

DensityMatrix apply(const Transition& t, const DensityMatrix& rho) {
  const ComplexMatrix rotated = t.pre.matrix() * rho.matrix() * t.pre.matrix().adjoint();
  const DensityMatrix mid = apply(t.dephase, DensityMatrix::trusted(hermitize(rotated)));
  const ComplexMatrix out = t.post.matrix() * mid.matrix() * t.post.matrix().adjoint();
  return DensityMatrix::trusted(hermitize(out));
}

ChainResult catalytic_chain(const std::vector<DensityMatrix>& states,
                            const std::vector<OrthonormalBasis>& bases) {
  if (states.empty() || states.size() != bases.size()) {
    throw DimensionError("catalytic_chain: need one basis per state");
  }
  const std::size_t d = states.front().dim();
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].dim() != d || bases[k].dim() != d) {
      throw DimensionError("catalytic_chain: all systems must share one dimension");
    }
  }
  const std::size_t n = states.size();
  const std::size_t m = ceil_sqrt(d);
  std::vector<std::size_t> dims(n, d);
  dims.push_back(m);
  const SubsystemLayout layout(dims);
  check_dimension_cap(layout.total(), "catalytic_chain");

  ComplexMatrix joint = DensityMatrix::maximally_mixed(m).matrix();
  for (std::size_t k = n; k-- > 0;) joint = tensor(states[k].matrix(), joint);

  for (std::size_t k = 0; k < n; ++k) {
    const ControlledUnitary cu = dephasing_controlled_unitary(d, bases[k]);
    // sum_i 1 (x) |a_i><a_i| (x) 1 (x) U_i with the projector on factor k.
    const std::size_t before = static_cast<std::size_t>(std::pow(d, k));
    const std::size_t after = static_cast<std::size_t>(std::pow(d, n - k - 1));
    ComplexMatrix w = ComplexMatrix::Zero(joint.rows(), joint.cols());
    for (std::size_t i = 0; i < d; ++i) {
      const ComplexVector a = bases[k].vector(i);
      const std::array<ComplexMatrix, 4> factors{
          ComplexMatrix::Identity(static_cast<Index>(before), static_cast<Index>(before)),
          a * a.adjoint(),
          ComplexMatrix::Identity(static_cast<Index>(after), static_cast<Index>(after)),
          cu.blocks[i]};
      w += tensor(std::span<const ComplexMatrix>(factors));
    }
    joint = w * joint * w.adjoint();
  }
  joint = hermitize(joint);

  ChainReport report;
  for (std::size_t k = 0; k < n; ++k) {
    const std::array<std::size_t, 1> keep{k};
    const ComplexMatrix marginal = partial_trace(joint, layout, keep);
    report.marginal_residuals.push_back(
        trace_norm(marginal - pinch(states[k], bases[k]).matrix()));
  }
  {
    const std::array<std::size_t, 1> keep{n};
    report.catalyst_residual = trace_norm(partial_trace(joint, layout, keep) -
                                          DensityMatrix::maximally_mixed(m).matrix());
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::array<std::size_t, 2> keep{i, j};
      const DensityMatrix pair = DensityMatrix::trusted(partial_trace(joint, layout, keep));
      report.mutual_information.push_back({i, j, mutual_information(pair, d, d)});
    }
  return ChainResult{DensityMatrix::trusted(std::move(joint)), layout, std::move(report)};
}

MachineStep machine_step(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const std::size_t d = rho.dim();
  const std::size_t m = ceil_sqrt(d);
  if (sigma.dim() != m) throw DimensionError("machine_step: sigma must have dimension ceil(sqrt(d))");
  const ControlledUnitary cu = dephasing_controlled_unitary(d, OrthonormalBasis::computational(d));
  return MachineStep{machine_system_map(cu, rho, sigma), machine_ancilla_map(cu, rho, sigma)};
}

MachineReport machine_iterate(const DensityMatrix& rho,
                              const std::vector<DensityMatrix>& sigma_stream) {
  const std::size_t d = rho.dim();
  const std::size_t m = ceil_sqrt(d);
  const OrthonormalBasis basis = OrthonormalBasis::computational(d);
  const ControlledUnitary cu = dephasing_controlled_unitary(d, basis);
  const DensityMatrix pinched = pinch(rho, basis);
  const ComplexMatrix uniform_m = DensityMatrix::maximally_mixed(m).matrix();
  const double rho_gap = trace_norm(rho.matrix() - DensityMatrix::maximally_mixed(d).matrix());

  MachineReport report;
  report.initial_distance = trace_distance(rho, pinched);
  report.initial_entropy = von_neumann_entropy(rho);
  if (sigma_stream.empty()) return report;

  DensityMatrix system = rho;
  DensityMatrix ancilla = sigma_stream.front();
  double bound = 1.0;
  double ancilla_bound = 1.0;
  for (std::size_t n = 1; n <= sigma_stream.size(); ++n) {
    const DensityMatrix& sigma = sigma_stream[n - 1];
    if (sigma.dim() != m) throw DimensionError("machine_iterate: sigma has the wrong dimension");
    system = machine_system_map(cu, system, sigma);
    ancilla = machine_ancilla_map(cu, rho, ancilla);
    bound *= trace_norm(sigma.matrix() - uniform_m);
    ancilla_bound *= rho_gap;
    MachineRow row;
    row.n = n;
    row.dist_system = trace_distance(system, pinched);
    row.dist_ancilla = trace_norm(ancilla.matrix() - uniform_m);
    row.entropy = von_neumann_entropy(system);
    row.bound = bound;
    row.ancilla_bound = ancilla_bound;
    report.rows.push_back(row);
  }
  return report;
}

std::string MachineReport::csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "n,dist_system,dist_ancilla,entropy,bound\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.dist_system << ',' << r.dist_ancilla << ',' << r.entropy << ','
        << r.bound << '\n';
  }
  return out.str();
}

DistillationResult noise_distillation(const DensityMatrix& rho, double target,
                                      std::size_t fresh_copies, std::size_t max_steps) {
  const std::size_t d = rho.dim();
  const std::size_t m = ceil_sqrt(d);
  if (m * m != d) throw PreconditionError("noise_distillation: d must be a perfect square");
  const OrthonormalBasis basis = OrthonormalBasis::computational(d);
  const ControlledUnitary cu = dephasing_controlled_unitary(d, basis);
  const ComplexMatrix uniform_m = DensityMatrix::maximally_mixed(m).matrix();

  DensityMatrix sigma = partial_trace(rho, SubsystemLayout{m, m}, {0});
  DistillationResult out;
  const double gap = trace_norm(rho.matrix() - DensityMatrix::maximally_mixed(d).matrix());
  const double start = trace_norm(sigma.matrix() - uniform_m);
  out.predicted_steps_bound =
      gap < 1.0 && gap > 0.0 ? std::ceil(std::log(target) / std::log(gap)) : INFINITY;
  out.ancilla_distance = start;
  while (out.ancilla_distance >= target) {
    if (out.mixing_steps >= max_steps) {
      throw PreconditionError("noise_distillation: catalyst did not reach the target");
    }
    sigma = machine_ancilla_map(cu, rho, sigma);
    out.ancilla_distance = trace_norm(sigma.matrix() - uniform_m);
    ++out.mixing_steps;
  }
  const DensityMatrix pinched = pinch(rho, basis);
  for (std::size_t c = 0; c < fresh_copies; ++c) {
    const DensityMatrix out_state = machine_system_map(cu, rho, sigma);
    out.fresh_copy_residuals.push_back(trace_distance(out_state, pinched));
    sigma = machine_ancilla_map(cu, rho, sigma);
  }
  return out;
}

Decoherence decoherence_unitary(std::size_t d, const OrthonormalBasis& basis) {
  const std::size_t m = ceil_sqrt(d);
  const SubsystemLayout layout{d, m, m};
  check_dimension_cap(layout.total(), "decoherence_unitary");
  const UnitaryOperator u_se1 = dephasing_controlled_unitary(d, basis).dense();
  const auto mm = static_cast<Index>(m);
  UnitaryOperator u = UnitaryOperator::trusted(
      tensor(u_se1.matrix(), ComplexMatrix::Identity(mm, mm)));
  ComplexVector phi = ComplexVector::Zero(mm * mm);
  for (Index k = 0; k < mm; ++k) phi(k * mm + k) = 1.0 / std::sqrt(static_cast<double>(m));
  return Decoherence{std::move(u), layout, std::move(phi)};
}

namespace {

ComplexMatrix decoherence_joint(const Decoherence& dec, const ComplexVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != dec.layout.dim(0)) {
    throw DimensionError("decohere: state dimension mismatch");
  }
  const ComplexVector out = dec.unitary.matrix() * tensor(ComplexVector(psi / psi.norm()),
                                                          dec.environment);
  return out * out.adjoint();
}

}  // namespace

DensityMatrix decohere(const Decoherence& dec, const ComplexVector& psi) {
  return DensityMatrix::trusted(hermitize(partial_trace(decoherence_joint(dec, psi), dec.layout, {0})));
}

DensityMatrix decoherence_environment(const Decoherence& dec, const ComplexVector& psi) {
  return DensityMatrix::trusted(
      hermitize(partial_trace(decoherence_joint(dec, psi), dec.layout, {1, 2})));
}

DensityMatrix measurement_process(const ComplexVector& psi_in) {
  const std::size_t d = static_cast<std::size_t>(psi_in.size());
  if (d < 2) throw PreconditionError("measurement_process: d must be at least 2");
  const std::size_t m = ceil_sqrt(d);
  const SubsystemLayout layout{d, d, m, m};
  check_dimension_cap(layout.total(), "measurement_process");
  const ComplexVector psi = psi_in / psi_in.norm();
  const ControlledUnitary cu = dephasing_controlled_unitary(d, OrthonormalBasis::computational(d));
  const auto mm = static_cast<Index>(m);
  ComplexVector phi = ComplexVector::Zero(mm * mm);
  for (Index k = 0; k < mm; ++k) phi(k * mm + k) = 1.0 / std::sqrt(static_cast<double>(m));

  // W (psi (x) |0>_P (x) phi) = sum_i psi_i |i> (x) X^i|0> (x) (U_i (x) 1) phi
  const UnitaryOperator x = shift_x(d);
  ComplexVector pointer = ComplexVector::Zero(static_cast<Index>(d));
  pointer(0) = 1.0;
  ComplexVector joint = ComplexVector::Zero(static_cast<Index>(layout.total()));
  const ComplexMatrix ident_m = ComplexMatrix::Identity(mm, mm);
  for (std::size_t i = 0; i < d; ++i) {
    ComplexVector s = ComplexVector::Zero(static_cast<Index>(d));
    s(static_cast<Index>(i)) = 1.0;
    const ComplexVector r = tensor(cu.blocks[i], ident_m) * phi;
    joint += psi(static_cast<Index>(i)) * tensor(tensor(s, pointer), r);
    pointer = x.matrix() * pointer;
  }
  const ComplexMatrix full = joint * joint.adjoint();
  return DensityMatrix::trusted(hermitize(partial_trace(full, layout, {0, 1})));
}

}  // namespace catq
