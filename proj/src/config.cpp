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

#include "catq/config.hpp"

#include <string>

#include <nlohmann/json.hpp>

#include "catq/error.hpp"

namespace catq {

namespace {
Tolerances g_tolerances;
}

void to_json(nlohmann::json& j, const Tolerances& t) {
  j = nlohmann::json{{"hermitian", t.hermitian},
                     {"trace", t.trace},
                     {"min_eigenvalue", t.min_eigenvalue},
                     {"unitary", t.unitary},
                     {"eigen_clamp", t.eigen_clamp},
                     {"entropy_floor", t.entropy_floor},
                     {"majorization", t.majorization},
                     {"schur_horn", t.schur_horn},
                     {"rank_relative", t.rank_relative},
                     {"bell_fidelity", t.bell_fidelity},
                     {"dimension_cap", t.dimension_cap}};
}

void from_json(const nlohmann::json& j, Tolerances& t) {
  if (!j.is_object()) throw PreconditionError("tolerances must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "hermitian") t.hermitian = value.get<double>();
    else if (key == "trace") t.trace = value.get<double>();
    else if (key == "min_eigenvalue") t.min_eigenvalue = value.get<double>();
    else if (key == "unitary") t.unitary = value.get<double>();
    else if (key == "eigen_clamp") t.eigen_clamp = value.get<double>();
    else if (key == "entropy_floor") t.entropy_floor = value.get<double>();
    else if (key == "majorization") t.majorization = value.get<double>();
    else if (key == "schur_horn") t.schur_horn = value.get<double>();
    else if (key == "rank_relative") t.rank_relative = value.get<double>();
    else if (key == "bell_fidelity") t.bell_fidelity = value.get<double>();
    else if (key == "dimension_cap") t.dimension_cap = value.get<std::size_t>();
    else throw PreconditionError("unknown tolerance key: " + key);
  }
}

const Tolerances& tolerances() { return g_tolerances; }

void set_tolerances(const Tolerances& t) { g_tolerances = t; }

void check_dimension_cap(std::size_t dim, const char* what) {
  if (dim > g_tolerances.dimension_cap) {
    throw ResourceError(std::string(what) + ": dimension " + std::to_string(dim) +
                        " exceeds cap " + std::to_string(g_tolerances.dimension_cap));
  }
}

}  // namespace catq
