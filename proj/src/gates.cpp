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

#include "otcsim/gates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otcsim/errors.hpp"

namespace otcsim {

ComplexMatrix c_plus(std::size_t d) {
  if (d < 2) {
    throw DimensionError("c_plus: local dimension must be >= 2");
  }
  ComplexMatrix m(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t target = (i + j) % d;
      m(i * d + target, i * d + j) = Complex(1.0, 0.0);
    }
  }
  return m;
}

ComplexMatrix swap_gate(std::size_t d) {
  if (d < 2) {
    throw DimensionError("swap_gate: local dimension must be >= 2");
  }
  ComplexMatrix m(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m(j * d + i, i * d + j) = Complex(1.0, 0.0);
    }
  }
  return m;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m(0, 1) = Complex(1.0, 0.0);
  m(1, 0) = Complex(1.0, 0.0);
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex(1.0, 0.0);
  m(1, 1) = Complex(-1.0, 0.0);
  return m;
}

ComplexMatrix embed(const ComplexMatrix& gate, const SubsystemLayout& layout,
                    const std::vector<std::size_t>& factors) {
  if (factors.empty()) {
    throw DimensionError("embed: no factors selected");
  }
  const std::size_t n = layout.factor_count();
  std::vector<bool> used(n, false);
  std::size_t sub_dim = 1;
  for (std::size_t f : factors) {
    if (f >= n) {
      throw DimensionError("embed: factor index " + std::to_string(f) +
                           " out of range");
    }
    if (used[f]) {
      throw DimensionError("embed: repeated factor index " +
                           std::to_string(f));
    }
    used[f] = true;
    sub_dim *= layout.dim(f);
  }
  if (!gate.is_square() || gate.rows() != sub_dim) {
    throw DimensionError("embed: gate side " + std::to_string(gate.rows()) +
                         " does not match selected factor dimension " +
                         std::to_string(sub_dim));
  }

  const auto& dims = layout.dims();
  const std::size_t total = layout.total_dim();
  std::vector<std::size_t> sub_dims;
  for (std::size_t f : factors) sub_dims.push_back(layout.dim(f));

  ComplexMatrix out(total, total);
  std::vector<std::size_t> digits(n);
  for (std::size_t col = 0; col < total; ++col) {
    // Digits of the column index, factor 0 most significant.
    std::size_t rem = col;
    for (std::size_t k = n; k-- > 0;) {
      digits[k] = rem % dims[k];
      rem /= dims[k];
    }
    std::size_t sub_col = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      sub_col = sub_col * sub_dims[k] + digits[factors[k]];
    }
    for (std::size_t sub_row = 0; sub_row < sub_dim; ++sub_row) {
      Complex amp = gate(sub_row, sub_col);
      if (amp == Complex(0.0, 0.0)) continue;
      std::size_t rem_row = sub_row;
      std::vector<std::size_t> row_digits = digits;
      for (std::size_t k = factors.size(); k-- > 0;) {
        row_digits[factors[k]] = rem_row % sub_dims[k];
        rem_row /= sub_dims[k];
      }
      std::size_t row = 0;
      for (std::size_t k = 0; k < n; ++k) row = row * dims[k] + row_digits[k];
      out(row, col) = amp;
    }
  }
  return out;
}

PureState uniform_prep(std::size_t n, std::size_t max_dim) {
  if (n < 1) {
    throw DimensionError("uniform_prep: need at least one qubit");
  }
  if (n >= 63 || (std::size_t(1) << n) > max_dim) {
    throw DimensionError("uniform_prep: 2^" + std::to_string(n) +
                         " exceeds memory bound " + std::to_string(max_dim));
  }
  const std::size_t dim = std::size_t(1) << n;
  double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<Complex> amps(dim, Complex(amp, 0.0));
  return PureState(std::move(amps), SubsystemLayout::qubits(n));
}

ComplexMatrix oracle_uf(const CnfFormula& f, std::size_t n,
                        std::size_t max_dim) {
  if (f.num_vars != n) {
    throw DimensionError("oracle_uf: formula has " +
                         std::to_string(f.num_vars) +
                         " variables, expected " + std::to_string(n));
  }
  if (n > 12) {
    throw DimensionError("oracle_uf: dense oracle capped at 12 variables");
  }
  const std::size_t dim = std::size_t(1) << (n + 1);
  if (dim > max_dim) {
    throw DimensionError("oracle_uf: 2^" + std::to_string(n + 1) +
                         " exceeds memory bound " + std::to_string(max_dim));
  }
  ComplexMatrix m(dim, dim);
  std::vector<bool> assignment(n);
  for (std::size_t i = 0; i < (std::size_t(1) << n); ++i) {
    // Ancilla factor k (most significant first) carries variable k+1.
    for (std::size_t k = 0; k < n; ++k) {
      assignment[k] = ((i >> (n - 1 - k)) & 1u) != 0;
    }
    bool flip = eval_assignment(f, assignment);
    if (flip) {
      m(2 * i, 2 * i + 1) = Complex(1.0, 0.0);
      m(2 * i + 1, 2 * i) = Complex(1.0, 0.0);
    } else {
      m(2 * i, 2 * i) = Complex(1.0, 0.0);
      m(2 * i + 1, 2 * i + 1) = Complex(1.0, 0.0);
    }
  }
  return m;
}

ComplexMatrix build_gate(const GateSpec& spec, const SubsystemLayout& layout) {
  switch (spec.kind) {
    case GateKind::c_plus:
      return embed(c_plus(spec.dimension), layout, spec.factors);
    case GateKind::pauli_x:
      return embed(pauli_x(), layout, spec.factors);
    case GateKind::pauli_y:
      return embed(pauli_y(), layout, spec.factors);
    case GateKind::pauli_z:
      return embed(pauli_z(), layout, spec.factors);
    case GateKind::oracle_uf: {
      if (!spec.formula) {
        throw ValidationError("build_gate: oracle_uf requires a formula");
      }
      ComplexMatrix u =
          oracle_uf(*spec.formula, spec.formula->num_vars, layout.total_dim());
      return embed(u, layout, spec.factors);
    }
    case GateKind::embed: {
      if (!spec.raw) {
        throw ValidationError("build_gate: embed requires a raw matrix");
      }
      return embed(*spec.raw, layout, spec.factors);
    }
  }
  throw ValidationError("build_gate: unknown gate kind");
}

}  // namespace otcsim
