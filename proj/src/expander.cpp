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

#include "catq/expander.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "catq/dephaser.hpp"
#include "catq/error.hpp"

namespace catq {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t e) { return ((x % e) + e) % e; }

std::size_t odd_root(std::size_t d) {
  const std::size_t e = ceil_sqrt(d);
  if (e * e != d || e % 2 == 0 || e < 3) {
    throw PreconditionError("expander: d must be the square of an odd e >= 3");
  }
  return e;
}

void require_odd(std::size_t d) {
  if (d % 2 == 0 || d < 3) throw PreconditionError("Wigner function: d must be odd and >= 3");
}

}  // namespace

LatticePoint AffineMap::operator()(const LatticePoint& v) const {
  return {mod(linear[0][0] * v[0] + linear[0][1] * v[1] + offset[0], modulus),
          mod(linear[1][0] * v[0] + linear[1][1] * v[1] + offset[1], modulus)};
}

AffineMap AffineMap::inverse() const {
  // det = 1, so the inverse is the adjugate.
  AffineMap inv;
  inv.modulus = modulus;
  inv.linear = {{{mod(linear[1][1], modulus), mod(-linear[0][1], modulus)},
                 {mod(-linear[1][0], modulus), mod(linear[0][0], modulus)}}};
  const LatticePoint tb = AffineMap{inv.linear, {0, 0}, modulus}(offset);
  inv.offset = {mod(-tb[0], modulus), mod(-tb[1], modulus)};
  return inv;
}

std::vector<AffineMap> margulis_maps(std::size_t e) {
  if (e < 2) throw PreconditionError("margulis_maps: e must be at least 2");
  const auto n = static_cast<std::int64_t>(e);
  const std::array<std::array<std::int64_t, 2>, 2> t1{{{1, 2}, {0, 1}}};
  const std::array<std::array<std::int64_t, 2>, 2> t2{{{1, 0}, {2, 1}}};
  std::vector<AffineMap> maps{
      AffineMap{t1, {0, 0}, n},
      AffineMap{t2, {0, 0}, n},
      AffineMap{t1, {1 % n, 0}, n},
      AffineMap{t2, {0, 1 % n}, n},
  };
  for (std::size_t j = 0; j < 4; ++j) maps.push_back(maps[j].inverse());
  return maps;
}

kernels::PermutationTable lattice_permutations(std::size_t e) {
  const auto maps = margulis_maps(e);
  const auto n = static_cast<std::int64_t>(e);
  kernels::PermutationTable perms(maps.size(), std::vector<std::size_t>(e * e));
  for (std::size_t j = 0; j < maps.size(); ++j) {
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b) {
        const LatticePoint image = maps[j]({a, b});
        perms[j][static_cast<std::size_t>(a * n + b)] =
            static_cast<std::size_t>(image[0] * n + image[1]);
      }
  }
  return perms;
}

std::vector<double> classical_step(std::span<const double> p, std::size_t e) {
  if (p.size() != e * e) throw DimensionError("classical_step: distribution must have e^2 entries");
  std::vector<double> out(p.size());
  kernels::pullback_average(p, p.size(), lattice_permutations(e), out);
  return out;
}

double walk_second_eigenvalue(std::size_t e) {
  const auto perms = lattice_permutations(e);
  const auto n = static_cast<Eigen::Index>(e * e);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (const auto& perm : perms) {
    for (Eigen::Index x = 0; x < n; ++x) {
      s(x, static_cast<Eigen::Index>(perm[static_cast<std::size_t>(x)])) += 1.0 / 8.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (s + s.transpose()),
                                                        Eigen::EigenvaluesOnly);
  std::vector<double> mags(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) mags[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  return mags.size() > 1 ? mags[1] : 0.0;
}

WignerFunction::WignerFunction(std::size_t d, std::vector<double> values)
    : d_(d), values_(std::move(values)) {
  if (values_.size() != d * d) throw DimensionError("WignerFunction: need d^2 values");
}

double WignerFunction::sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double WignerFunction::two_norm() const {
  double acc = 0.0;
  for (double v : values_) acc += v * v;
  return std::sqrt(acc);
}

WignerFunction wigner_of(const ComplexMatrix& hermitian) {
  const auto d = static_cast<std::size_t>(hermitian.rows());
  require_odd(d);
  if (!is_hermitian(hermitian, 1e-10)) throw PreconditionError("wigner_of: operator is not Hermitian");
  std::vector<double> values(d * d);
  kernels::wigner_forward(hermitian, values);
  return WignerFunction(d, std::move(values));
}

WignerFunction wigner_from_state(const DensityMatrix& rho) { return wigner_of(rho.matrix()); }

ComplexMatrix state_from_wigner(const WignerFunction& w) {
  require_odd(w.dim());
  ComplexMatrix rho;
  kernels::wigner_inverse(w.values(), w.dim(), rho);
  return rho;
}

WignerFunction expander_channel_step(const WignerFunction& w) {
  const std::size_t e = odd_root(w.dim());
  std::vector<double> out(w.values().size());
  kernels::pullback_average(w.values(), w.dim(), lattice_permutations(e), out);
  return WignerFunction(w.dim(), std::move(out));
}

ComplexMatrix expander_channel_step(const ComplexMatrix& rho) {
  return state_from_wigner(expander_channel_step(wigner_of(rho)));
}

ExpanderSpec ExpanderSpec::make(std::size_t e, std::size_t k) {
  if (e < 3 || e % 2 == 0) throw PreconditionError("ExpanderSpec: e must be odd and >= 3");
  return ExpanderSpec{e, e * e, k};
}

ConvergenceReport expander_convergence(const ExpanderSpec& spec, const DensityMatrix& rho) {
  if (rho.dim() != spec.d) throw DimensionError("expander_convergence: state dimension must be e^2");
  const ExpanderSpec checked = ExpanderSpec::make(spec.e, spec.k);
  const ComplexMatrix pinched =
      pinch(rho, OrthonormalBasis::computational(checked.d)).matrix();
  const double scale = std::sqrt(2.0 * std::pow(static_cast<double>(checked.d), 3));

  ConvergenceReport report;
  report.e = checked.e;
  report.bound_satisfied = true;
  WignerFunction w = wigner_from_state(rho);
  std::vector<double> measured;
  for (std::size_t k = 0; k <= checked.k; ++k) {
    if (k > 0) w = expander_channel_step(w);
    const ComplexMatrix state = state_from_wigner(w);
    ConvergenceRow row;
    row.k = k;
    row.measured = two_norm(state - pinched);
    row.bound = scale * std::pow(kMargulisRate, static_cast<double>(k));
    row.min_eigenvalue = hermitian_eigenvalues(state).minCoeff();
    report.bound_satisfied = report.bound_satisfied && row.measured <= row.bound;
    measured.push_back(row.measured);
    report.rows.push_back(row);
  }
  report.fitted_rate = fitted_decay_rate(measured, kDecayFitFloor);
  return report;
}

std::string ConvergenceReport::csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "k,measured_2norm,bound\n";
  for (const auto& r : rows) out << r.k << ',' << r.measured << ',' << r.bound << '\n';
  return out.str();
}

double fitted_decay_rate(std::span<const double> values, double relative_floor) {
  if (values.empty() || !(values[0] > 0.0)) return 0.0;
  const double floor = relative_floor * values[0];
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(values[k] > floor)) continue;
    const double x = static_cast<double>(k);
    const double y = std::log(values[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  const double slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
  return std::exp(slope);
}

}  // namespace catq
