// Copyright 2026 The otcsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OTCSIM_SERIALIZATION_HPP
#define OTCSIM_SERIALIZATION_HPP

#include <string>

#include <json.hpp>

#include "otcsim/qmath.hpp"
#include "otcsim/qstate.hpp"

namespace otcsim {

/// Matrix fixture schema: {"dims": [...], "re": [...], "im": [...]} with
/// row-major flattening over a square matrix of side prod(dims).
nlohmann::json matrix_to_json(const ComplexMatrix& m,
                              const SubsystemLayout& layout);
ComplexMatrix matrix_from_json(const nlohmann::json& j,
                               SubsystemLayout* layout_out = nullptr);

nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j);

DensityMatrix load_state_file(const std::string& path);
void save_state_file(const DensityMatrix& rho, const std::string& path);

}  // namespace otcsim

#endif  // OTCSIM_SERIALIZATION_HPP
