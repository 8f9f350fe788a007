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

#include <nlohmann/json_fwd.hpp>

namespace catq {

struct Tolerances {
  double hermitian = 1e-12;
  double trace = 1e-12;
  double min_eigenvalue = -1e-10;
  double unitary = 1e-10;
  // Eigenvalues in [-eigen_clamp, 0) are treated as zero.
  double eigen_clamp = 1e-10;
  // Eigenvalues below this contribute nothing to an entropy.
  double entropy_floor = 1e-14;
  double majorization = 1e-10;
  double schur_horn = 1e-9;
  // Singular values at or below rank_relative * largest do not count.
  double rank_relative = 1e-9;
  // Largest allowed infidelity when reading a Bell label off a key register.
  double bell_fidelity = 1e-8;
  std::size_t dimension_cap = 4096;
};

void to_json(nlohmann::json& j, const Tolerances& t);
// Unknown keys throw PreconditionError.
void from_json(const nlohmann::json& j, Tolerances& t);

// Process-wide tolerances. Set once before any parallel work starts.
const Tolerances& tolerances();
void set_tolerances(const Tolerances& t);

// Throws ResourceError when dim exceeds the configured cap.
void check_dimension_cap(std::size_t dim, const char* what);

}  // namespace catq
