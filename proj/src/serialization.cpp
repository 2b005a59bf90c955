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

#include "otcsim/serialization.hpp"

#include <fstream>

#include "otcsim/errors.hpp"

namespace otcsim {

nlohmann::json matrix_to_json(const ComplexMatrix& m,
                              const SubsystemLayout& layout) {
  nlohmann::json j;
  j["dims"] = layout.dims();
  std::vector<double> re, im;
  re.reserve(m.entries().size());
  im.reserve(m.entries().size());
  for (const Complex& e : m.entries()) {
    re.push_back(e.real());
    im.push_back(e.imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j,
                               SubsystemLayout* layout_out) {
  if (!j.contains("dims") || !j.contains("re") || !j.contains("im")) {
    throw ValidationError(
        "matrix fixture must contain 'dims', 're', and 'im'");
  }
  std::vector<std::size_t> dims = j.at("dims").get<std::vector<std::size_t>>();
  SubsystemLayout layout(dims);
  const std::size_t side = layout.total_dim();
  std::vector<double> re = j.at("re").get<std::vector<double>>();
  std::vector<double> im = j.at("im").get<std::vector<double>>();
  if (re.size() != side * side || im.size() != side * side) {
    throw ValidationError("matrix fixture: expected " +
                          std::to_string(side * side) +
                          " entries, found re=" + std::to_string(re.size()) +
                          " im=" + std::to_string(im.size()));
  }
  ComplexMatrix m(side, side);
  for (std::size_t i = 0; i < side * side; ++i) {
    m.entries()[i] = Complex(re[i], im[i]);
  }
  if (layout_out != nullptr) *layout_out = layout;
  return m;
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
  return matrix_to_json(rho.matrix(), rho.layout());
}

DensityMatrix state_from_json(const nlohmann::json& j) {
  SubsystemLayout layout({2});
  ComplexMatrix m = matrix_from_json(j, &layout);
  return DensityMatrix(std::move(m), std::move(layout));
}

DensityMatrix load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open state file '" + path + "'");
  }
  nlohmann::json j;
  in >> j;
  return state_from_json(j);
}

void save_state_file(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot write state file '" + path + "'");
  }
  out << state_to_json(rho).dump(2) << '\n';
}

}  // namespace otcsim
