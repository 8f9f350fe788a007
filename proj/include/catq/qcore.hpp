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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

namespace catq {

using cplx = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

// Dimensions of the tensor factors of a joint space, outermost first.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<std::size_t> dims);
  SubsystemLayout(std::initializer_list<std::size_t> dims);

  std::size_t size() const { return dims_.size(); }
  std::size_t dim(std::size_t factor) const { return dims_.at(factor); }
  std::size_t total() const;
  const std::vector<std::size_t>& dims() const { return dims_; }

 private:
  std::vector<std::size_t> dims_;
};

// Hermitian, unit trace, positive semidefinite within the configured
// tolerances. Construction validates; trusted() skips the eigenvalue check
// for outputs of maps that preserve positivity by construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);
  static DensityMatrix trusted(ComplexMatrix m);
  static DensityMatrix maximally_mixed(std::size_t d);
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix diagonal(std::span<const double> probs);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  struct Trusted {};
  DensityMatrix(ComplexMatrix m, Trusted);
  ComplexMatrix m_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix m);
  static UnitaryOperator trusted(ComplexMatrix m);
  static UnitaryOperator identity(std::size_t d);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  UnitaryOperator adjoint() const;
  UnitaryOperator operator*(const UnitaryOperator& rhs) const;

 private:
  struct Trusted {};
  UnitaryOperator(ComplexMatrix m, Trusted);
  ComplexMatrix m_;
};

// Columns of a unitary matrix.
class OrthonormalBasis {
 public:
  explicit OrthonormalBasis(ComplexMatrix vectors);
  static OrthonormalBasis computational(std::size_t d);

  std::size_t dim() const { return static_cast<std::size_t>(v_.rows()); }
  const ComplexMatrix& vectors() const { return v_; }
  ComplexVector vector(std::size_t i) const { return v_.col(i); }

 private:
  ComplexMatrix v_;
};

bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_valid_density(const ComplexMatrix& a);
// max row sum of |U U^dagger - 1|
double unitarity_defect(const ComplexMatrix& u);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

ComplexMatrix partial_trace(const ComplexMatrix& op, const SubsystemLayout& layout,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix& op, const SubsystemLayout& layout,
                            std::initializer_list<std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemLayout& layout,
                            std::initializer_list<std::size_t> keep);

// Eigenvalues of a Hermitian matrix, descending.
RealVector hermitian_eigenvalues(const ComplexMatrix& a);
// Eigen-decomposition with eigenvalues descending; ties keep the solver's
// ascending index order reversed stably.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;
};
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

double trace_norm(const ComplexMatrix& a);
double two_norm(const ComplexMatrix& a);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double von_neumann_entropy(const DensityMatrix& rho);
double mutual_information(const DensityMatrix& rho_ab, std::size_t dim_a,
                          std::size_t dim_b);
double fidelity_with_pure(const DensityMatrix& rho, const ComplexVector& psi);

// Spectral data of a unitary U = Q diag(exp(-i theta)) Q^dagger with each
// theta in (-pi, pi].
struct UnitarySpectrum {
  ComplexMatrix vectors;
  std::vector<double> phases;
  // Q diag(exp(-i theta t)) Q^dagger
  ComplexMatrix evolve(double t) const;
  ComplexMatrix hamiltonian() const;
};
UnitarySpectrum unitary_spectrum(const UnitaryOperator& u);
ComplexMatrix hamiltonian_from_unitary(const UnitaryOperator& u);
ComplexMatrix expm_hermitian(const ComplexMatrix& h, cplx factor);

bool majorizes(const DensityMatrix& rho, const DensityMatrix& rho_prime);
bool majorizes(std::span<const double> x, std::span<const double> y, double tol);

// V with diag(V diag(spectrum) V^dagger) = target, from n-1 two-level
// rotations.
UnitaryOperator schur_horn_unitary(std::span<const double> spectrum,
                                   std::span<const double> target_diagonal);

std::size_t numerical_rank(const ComplexMatrix& a);

// {rows, cols, re, im} with row-major entries.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace catq
