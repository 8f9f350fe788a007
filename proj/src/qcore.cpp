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

#include "catq/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "catq/config.hpp"
#include "catq/error.hpp"
#include "catq/kernels.hpp"

namespace catq {

namespace {

using DenseColMajor = Eigen::MatrixXcd;

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (std::size_t d : dims_) {
    if (d == 0) throw DimensionError("subsystem dimension must be at least 1");
  }
}

SubsystemLayout::SubsystemLayout(std::initializer_list<std::size_t> dims)
    : SubsystemLayout(std::vector<std::size_t>(dims)) {}

std::size_t SubsystemLayout::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                         std::multiplies<>());
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

bool is_valid_density(const ComplexMatrix& a) {
  const Tolerances& tol = tolerances();
  if (a.rows() != a.cols() || a.rows() == 0) return false;
  if (!a.allFinite()) return false;
  if (!is_hermitian(a, tol.hermitian)) return false;
  if (std::abs(a.trace() - cplx(1.0, 0.0)) > tol.trace) return false;
  return hermitian_eigenvalues(a).minCoeff() >= tol.min_eigenvalue;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
  const Tolerances& tol = tolerances();
  if (!m_.allFinite()) throw PreconditionError("DensityMatrix: non-finite entry");
  if (!is_hermitian(m_, tol.hermitian)) {
    throw PreconditionError("DensityMatrix: not Hermitian");
  }
  if (std::abs(m_.trace() - cplx(1.0, 0.0)) > tol.trace) {
    throw PreconditionError("DensityMatrix: trace differs from 1");
  }
  if (hermitian_eigenvalues(m_).minCoeff() < tol.min_eigenvalue) {
    throw PreconditionError("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) {
  return DensityMatrix(std::move(m), Trusted{});
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  if (d == 0) throw DimensionError("maximally_mixed: d must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix m = ComplexMatrix::Identity(n, n) / static_cast<double>(d);
  return trusted(std::move(m));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (psi.size() == 0 || norm == 0.0) throw PreconditionError("pure: zero vector");
  ComplexVector v = psi / norm;
  return trusted(v * v.adjoint());
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(probs.size()),
                                        static_cast<Eigen::Index>(probs.size()));
  for (std::size_t i = 0; i < probs.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probs[i];
  }
  return DensityMatrix(std::move(m));
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  ComplexMatrix e = u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols());
  return e.cwiseAbs().rowwise().sum().maxCoeff();
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "UnitaryOperator");
  if (!(unitarity_defect(m_) <= tolerances().unitary)) {
    throw PreconditionError("UnitaryOperator: U U^dagger differs from identity");
  }
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m, Trusted) : m_(std::move(m)) {
  require_square(m_, "UnitaryOperator");
}

UnitaryOperator UnitaryOperator::trusted(ComplexMatrix m) {
  return UnitaryOperator(std::move(m), Trusted{});
}

UnitaryOperator UnitaryOperator::identity(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return trusted(ComplexMatrix::Identity(n, n));
}

UnitaryOperator UnitaryOperator::adjoint() const { return trusted(m_.adjoint()); }

UnitaryOperator UnitaryOperator::operator*(const UnitaryOperator& rhs) const {
  if (dim() != rhs.dim()) throw DimensionError("UnitaryOperator product: size mismatch");
  return trusted(m_ * rhs.m_);
}

OrthonormalBasis::OrthonormalBasis(ComplexMatrix vectors) : v_(std::move(vectors)) {
  require_square(v_, "OrthonormalBasis");
  ComplexMatrix gram = v_.adjoint() * v_;
  const auto n = v_.rows();
  if (max_abs(gram - ComplexMatrix::Identity(n, n)) > 1e-10) {
    throw PreconditionError("OrthonormalBasis: Gram matrix is not the identity");
  }
}

OrthonormalBasis OrthonormalBasis::computational(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return OrthonormalBasis(ComplexMatrix::Identity(n, n));
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_dimension_cap(static_cast<std::size_t>(a.rows() * b.rows()), "tensor");
  check_dimension_cap(static_cast<std::size_t>(a.cols() * b.cols()), "tensor");
  ComplexMatrix out;
  kernels::kron(a, b, out);
  return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::Identity(1, 1);
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(tensor(a.matrix(), b.matrix()));
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  check_dimension_cap(static_cast<std::size_t>(a.size() * b.size()), "tensor");
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& op, const SubsystemLayout& layout,
                            std::span<const std::size_t> keep) {
  if (op.rows() != op.cols() ||
      static_cast<std::size_t>(op.rows()) != layout.total()) {
    throw DimensionError("partial_trace: layout does not match operator dimension");
  }
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");
  for (std::size_t k : keep) {
    if (k >= layout.size()) throw DimensionError("partial_trace: factor index out of range");
  }
  const kernels::TraceIndex index = kernels::make_trace_index(layout.dims(), keep);
  ComplexMatrix out;
  kernels::partial_trace(op, index, out);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& op, const SubsystemLayout& layout,
                            std::initializer_list<std::size_t> keep) {
  return partial_trace(op, layout, std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemLayout& layout,
                            std::initializer_list<std::size_t> keep) {
  return DensityMatrix::trusted(partial_trace(rho.matrix(), layout, keep));
}

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
  require_square(a, "hermitian_eigen");
  DenseColMajor h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseColMajor> solver(h);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eigen: solver failed");
  const auto n = a.rows();
  HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  require_square(a, "hermitian_eigenvalues");
  DenseColMajor h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseColMajor> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eigenvalues: solver failed");
  return solver.eigenvalues().reverse();
}

double trace_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = std::max(1.0, max_abs(a));
  if (a.rows() == a.cols() && is_hermitian(a, 1e-13 * scale)) {
    return hermitian_eigenvalues(a).cwiseAbs().sum();
  }
  Eigen::BDCSVD<DenseColMajor> svd{DenseColMajor(a)};
  return svd.singularValues().sum();
}

double two_norm(const ComplexMatrix& a) { return a.norm(); }

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace_distance: dimension mismatch");
  return trace_norm(a.matrix() - b.matrix());
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Tolerances& tol = tolerances();
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(rho.matrix())) {
    if (lambda < 0.0 && lambda >= -tol.eigen_clamp) lambda = 0.0;
    if (lambda <= tol.entropy_floor) continue;
    s -= lambda * std::log2(lambda);
  }
  return s;
}

double mutual_information(const DensityMatrix& rho_ab, std::size_t dim_a,
                          std::size_t dim_b) {
  const SubsystemLayout layout{dim_a, dim_b};
  return von_neumann_entropy(partial_trace(rho_ab, layout, {0})) +
         von_neumann_entropy(partial_trace(rho_ab, layout, {1})) -
         von_neumann_entropy(rho_ab);
}

double fidelity_with_pure(const DensityMatrix& rho, const ComplexVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != rho.dim()) {
    throw DimensionError("fidelity_with_pure: dimension mismatch");
  }
  return std::real(psi.dot(rho.matrix() * psi)) / psi.squaredNorm();
}

ComplexMatrix UnitarySpectrum::evolve(double t) const {
  ComplexMatrix scaled = vectors;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    scaled.col(static_cast<Eigen::Index>(k)) *= std::polar(1.0, -phases[k] * t);
  }
  return scaled * vectors.adjoint();
}

ComplexMatrix UnitarySpectrum::hamiltonian() const {
  ComplexMatrix scaled = vectors;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    scaled.col(static_cast<Eigen::Index>(k)) *= phases[k];
  }
  ComplexMatrix h = scaled * vectors.adjoint();
  return 0.5 * (h + h.adjoint());
}

UnitarySpectrum unitary_spectrum(const UnitaryOperator& u) {
  // U is normal, so its Schur form is diagonal and the Schur vectors are
  // eigenvectors.
  Eigen::ComplexSchur<DenseColMajor> schur{DenseColMajor(u.matrix())};
  if (schur.info() != Eigen::Success) throw Error("unitary_spectrum: Schur failed");
  UnitarySpectrum out;
  out.vectors = schur.matrixU();
  const auto& t = schur.matrixT();
  out.phases.resize(u.dim());
  for (std::size_t k = 0; k < u.dim(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    double theta = -std::arg(t(i, i));
    if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
    out.phases[k] = theta;
  }
  return out;
}

ComplexMatrix hamiltonian_from_unitary(const UnitaryOperator& u) {
  return unitary_spectrum(u).hamiltonian();
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, cplx factor) {
  HermitianEigen eig = hermitian_eigen(h);
  ComplexMatrix scaled = eig.vectors;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    scaled.col(k) *= std::exp(factor * eig.values(k));
  }
  return scaled * eig.vectors.adjoint();
}

bool majorizes(std::span<const double> x, std::span<const double> y, double tol) {
  if (x.size() != y.size()) throw DimensionError("majorizes: length mismatch");
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> b(y.begin(), y.end());
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    if (sa < sb - tol) return false;
  }
  return std::abs(sa - sb) <= tol;
}

bool majorizes(const DensityMatrix& rho, const DensityMatrix& rho_prime) {
  if (rho.dim() != rho_prime.dim()) throw DimensionError("majorizes: dimension mismatch");
  const RealVector a = hermitian_eigenvalues(rho.matrix());
  const RealVector b = hermitian_eigenvalues(rho_prime.matrix());
  return majorizes(std::span<const double>(a.data(), a.size()),
                   std::span<const double>(b.data(), b.size()),
                   tolerances().majorization);
}

UnitaryOperator schur_horn_unitary(std::span<const double> spectrum,
                                   std::span<const double> target_diagonal) {
  const std::size_t n = spectrum.size();
  if (n == 0 || target_diagonal.size() != n) {
    throw DimensionError("schur_horn_unitary: length mismatch");
  }
  if (!majorizes(spectrum, target_diagonal, tolerances().majorization)) {
    throw PreconditionError("schur_horn_unitary: target is not majorized by the spectrum");
  }
  const auto N = static_cast<Eigen::Index>(n);
  ComplexMatrix v = ComplexMatrix::Identity(N, N);
  std::vector<double> diag(spectrum.begin(), spectrum.end());
  std::vector<bool> active(n, true);

  // Targets in descending order; each step fixes one position.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return target_diagonal[a] > target_diagonal[b];
  });
  std::vector<std::size_t> position_of_target(n, n);

  for (std::size_t step = 0; step < n; ++step) {
    const double t = target_diagonal[order[step]];
    // p: active with the smallest value >= t; q: active with the largest
    // value <= t, q != p.
    std::size_t p = n;
    std::size_t q = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (diag[i] >= t && (p == n || diag[i] < diag[p])) p = i;
    }
    if (p == n) {
      // Rounding put t just above every active value.
      for (std::size_t i = 0; i < n; ++i) {
        if (active[i] && (p == n || diag[i] > diag[p])) p = i;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || i == p) continue;
      if (diag[i] <= t && (q == n || diag[i] > diag[q])) q = i;
    }
    const double gap = q == n ? 0.0 : diag[p] - diag[q];
    if (q != n && gap > 0.0 && diag[p] - t > 0.0) {
      const double c2 = std::clamp((t - diag[q]) / gap, 0.0, 1.0);
      const double c = std::sqrt(c2);
      const double s = std::sqrt(1.0 - c2);
      const auto P = static_cast<Eigen::Index>(p);
      const auto Q = static_cast<Eigen::Index>(q);
      const Eigen::Matrix<cplx, 1, Eigen::Dynamic> row_p = v.row(P);
      const Eigen::Matrix<cplx, 1, Eigen::Dynamic> row_q = v.row(Q);
      v.row(P) = c * row_p + s * row_q;
      v.row(Q) = -s * row_p + c * row_q;
      diag[q] = diag[p] + diag[q] - t;
    }
    diag[p] = t;
    active[p] = false;
    position_of_target[order[step]] = p;
  }

  // Row i of the result is the row that carries target i.
  ComplexMatrix permuted(N, N);
  for (std::size_t i = 0; i < n; ++i) {
    permuted.row(static_cast<Eigen::Index>(i)) =
        v.row(static_cast<Eigen::Index>(position_of_target[i]));
  }
  return UnitaryOperator(std::move(permuted));
}

std::size_t numerical_rank(const ComplexMatrix& a) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<DenseColMajor> svd{DenseColMajor(a)};
  const RealVector& sv = svd.singularValues();
  const double largest = sv.size() ? sv.maxCoeff() : 0.0;
  if (largest == 0.0) return 0;
  const double cut = tolerances().rank_relative * largest;
  return static_cast<std::size_t>((sv.array() > cut).count());
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (rows < 0 || cols < 0 || re.size() != static_cast<std::size_t>(rows * cols) ||
      im.size() != re.size()) {
    throw DimensionError("matrix_from_json: entry count does not match rows * cols");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows * cols; ++i) {
    const auto k = static_cast<std::size_t>(i);
    m(i / cols, i % cols) = cplx(re[k], im[k]);
  }
  if (!m.allFinite()) throw PreconditionError("matrix_from_json: non-finite entry");
  return m;
}

}  // namespace catq
