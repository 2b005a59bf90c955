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

#ifndef OTCSIM_GATES_HPP
#define OTCSIM_GATES_HPP

#include <optional>
#include <vector>

#include "otcsim/cnf.hpp"
#include "otcsim/qmath.hpp"
#include "otcsim/qstate.hpp"

namespace otcsim {

/// Two-qudit controlled addition C+|i>|j> = |i>|j+i mod d> with the control
/// as the first (most significant) factor. CNOT when d = 2.
ComplexMatrix c_plus(std::size_t d);

/// Two-qudit SWAP on equal local dimensions d.
ComplexMatrix swap_gate(std::size_t d);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Lift `gate` onto the full layout, acting on the listed factors (their
/// order fixes control/target roles) and as identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& gate, const SubsystemLayout& layout,
                    const std::vector<std::size_t>& factors);

/// n qubits in the uniform superposition 2^{-n/2} sum_i |i>.
PureState uniform_prep(std::size_t n, std::size_t max_dim = kDefaultMaxDim);

/// SAT oracle sum_i |i><i| (x) sigma_x^{f(i)} on n ancilla qubits plus one
/// target qubit (target is the last, least significant factor). Dense
/// construction is capped at n <= 12 and by max_dim.
ComplexMatrix oracle_uf(const CnfFormula& f, std::size_t n,
                        std::size_t max_dim = kDefaultMaxDim);

enum class GateKind { c_plus, pauli_x, pauli_y, pauli_z, oracle_uf, embed };

/// Declarative gate description; build_gate materializes it on a layout.
struct GateSpec {
  GateKind kind;
  std::size_t dimension = 2;
  std::vector<std::size_t> factors;
  std::optional<CnfFormula> formula;  // oracle_uf only
  std::optional<ComplexMatrix> raw;   // embed only
};

ComplexMatrix build_gate(const GateSpec& spec, const SubsystemLayout& layout);

}  // namespace otcsim

#endif  // OTCSIM_GATES_HPP
