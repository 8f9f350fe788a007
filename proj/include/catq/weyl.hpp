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
#include <utility>
#include <vector>

#include "catq/qcore.hpp"

namespace catq {

struct WeylIndex {
  std::size_t r = 0;
  std::size_t s = 0;
};

// m^2 unitaries with (1/m) tr(U_i U_j^dagger) = delta_ij.
class UnitaryOperatorBasis {
 public:
  UnitaryOperatorBasis(std::size_t m, std::vector<ComplexMatrix> ops);

  std::size_t dim() const { return m_; }
  std::size_t size() const { return ops_.size(); }
  const ComplexMatrix& op(std::size_t i) const { return ops_.at(i); }
  const std::vector<ComplexMatrix>& ops() const { return ops_; }

 private:
  std::size_t m_;
  std::vector<ComplexMatrix> ops_;
};

UnitaryOperator shift_x(std::size_t d);
UnitaryOperator clock_z(std::size_t d);

// tau = -exp(i pi / m); omega = tau^2.
cplx weyl_tau(std::size_t m);
cplx root_of_unity(std::size_t m, long long k);
// tau^e, reduced exactly modulo 2m.
cplx weyl_tau_power(std::size_t m, long long e);

// tau^(r s) X^r Z^s for arbitrary integers r, s. The phase uses the
// unreduced product r s, so U_{r,s} U_{u,v} = tau^(us - vr) U_{r+u,s+v}
// holds for all integers.
ComplexMatrix weyl_op(std::size_t m, long long r, long long s);
// X^r Z^s without the tau phase.
ComplexMatrix pauli_op(std::size_t m, long long r, long long s);

// Row-major (r, s) order: index r * m + s.
UnitaryOperatorBasis weyl_basis(std::size_t m);
UnitaryOperatorBasis pauli_basis(std::size_t m);

// Computational basis and its discrete Fourier conjugate
// F_{jk} = omega^(jk) / sqrt(d).
std::pair<OrthonormalBasis, OrthonormalBasis> mub_pair(std::size_t d);

// Odd d only. w(p, q) = tau^(pq) X^q Z^p: q displaces position, p momentum.
UnitaryOperator weyl_displacement(std::size_t d, long long p, long long q);
// |j> -> |-j mod d>.
UnitaryOperator parity_operator(std::size_t d);

}  // namespace catq
