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

#ifndef OTCSIM_CNF_HPP
#define OTCSIM_CNF_HPP

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace otcsim {

/// CNF formula over num_vars Boolean variables. Literals are nonzero signed
/// integers with |literal| <= num_vars; an empty clause list means the
/// formula is identically true, an empty clause makes it unsatisfiable.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

/// Largest variable count count_satisfying will enumerate.
inline constexpr std::size_t kMaxExhaustiveVars = 24;

/// Lenient DIMACS reader: comment lines, one problem line, zero-terminated
/// clauses that may span lines. Throws ParseError with a 1-based line number
/// on malformed input.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(const std::string& text);

/// Canonical DIMACS text; parse(serialize(f)) reproduces the structure.
std::string serialize_dimacs(const CnfFormula& f);

/// True iff every clause contains a satisfied literal. assignment[k] is the
/// value of variable k+1.
bool eval_assignment(const CnfFormula& f, const std::vector<bool>& assignment);

/// Exact satisfying-assignment count by exhaustive enumeration
/// (num_vars <= 24).
std::uint64_t count_satisfying(const CnfFormula& f);

}  // namespace otcsim

#endif  // OTCSIM_CNF_HPP
