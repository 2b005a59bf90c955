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

#include "otcsim/cnf.hpp"

#include <cctype>
#include <sstream>

#include "otcsim/errors.hpp"

namespace otcsim {

namespace {

bool parse_int(const std::string& token, long long& value) {
  if (token.empty()) return false;
  std::size_t pos = 0;
  try {
    value = std::stoll(token, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == token.size();
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  bool have_problem_line = false;
  std::size_t declared_clauses = 0;
  std::vector<int> current_clause;
  bool in_clause = false;
  int line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line
    if (first == "c" || first[0] == 'c') continue;

    if (first == "p") {
      if (have_problem_line) {
        throw ParseError("duplicate problem line", line_no);
      }
      std::string format;
      long long vars = -1, clauses = -1;
      if (!(ls >> format) || format != "cnf") {
        throw ParseError("problem line is not 'p cnf <vars> <clauses>'",
                         line_no);
      }
      std::string vt, ct;
      if (!(ls >> vt) || !parse_int(vt, vars) || vars < 0) {
        throw ParseError("invalid variable count in problem line", line_no);
      }
      if (!(ls >> ct) || !parse_int(ct, clauses) || clauses < 0) {
        throw ParseError("invalid clause count in problem line", line_no);
      }
      std::string extra;
      if (ls >> extra) {
        throw ParseError("trailing tokens after problem line", line_no);
      }
      f.num_vars = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      have_problem_line = true;
      continue;
    }

    if (!have_problem_line) {
      throw ParseError("clause data before problem line", line_no);
    }

    // Clause tokens; clauses may span lines and end at 0.
    std::string token = first;
    do {
      long long lit;
      if (!parse_int(token, lit)) {
        throw ParseError("non-integer token '" + token + "'", line_no);
      }
      if (lit == 0) {
        f.clauses.push_back(current_clause);
        current_clause.clear();
        in_clause = false;
      } else {
        if (lit > static_cast<long long>(f.num_vars) ||
            -lit > static_cast<long long>(f.num_vars)) {
          throw ParseError("literal " + std::to_string(lit) +
                               " out of range for " +
                               std::to_string(f.num_vars) + " variables",
                           line_no);
        }
        current_clause.push_back(static_cast<int>(lit));
        in_clause = true;
      }
    } while (ls >> token);
  }

  if (!have_problem_line) {
    throw ParseError("missing problem line", line_no == 0 ? 1 : line_no);
  }
  if (in_clause) {
    throw ParseError("unterminated clause at end of input", line_no);
  }
  if (f.clauses.size() != declared_clauses) {
    throw ParseError("clause count mismatch: problem line declares " +
                         std::to_string(declared_clauses) + ", found " +
                         std::to_string(f.clauses.size()),
                     line_no == 0 ? 1 : line_no);
  }
  return f;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string serialize_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

bool eval_assignment(const CnfFormula& f,
                     const std::vector<bool>& assignment) {
  if (assignment.size() != f.num_vars) {
    throw DimensionError("eval_assignment: assignment length " +
                         std::to_string(assignment.size()) + " for " +
                         std::to_string(f.num_vars) + " variables");
  }
  for (const auto& clause : f.clauses) {
    bool satisfied = false;
    for (int lit : clause) {
      std::size_t var = static_cast<std::size_t>(lit > 0 ? lit : -lit) - 1;
      bool value = assignment[var];
      if ((lit > 0 && value) || (lit < 0 && !value)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

std::uint64_t count_satisfying(const CnfFormula& f) {
  if (f.num_vars > kMaxExhaustiveVars) {
    throw DimensionError("count_satisfying: " + std::to_string(f.num_vars) +
                         " variables exceeds the exhaustive bound of " +
                         std::to_string(kMaxExhaustiveVars));
  }
  // Bitmask form: clause satisfied iff (x & pos) != 0 or (~x & neg) != 0.
  std::vector<std::uint32_t> pos(f.clauses.size(), 0);
  std::vector<std::uint32_t> neg(f.clauses.size(), 0);
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    for (int lit : f.clauses[c]) {
      std::size_t var = static_cast<std::size_t>(lit > 0 ? lit : -lit) - 1;
      if (lit > 0) {
        pos[c] |= (1u << var);
      } else {
        neg[c] |= (1u << var);
      }
    }
  }
  const std::uint64_t total = std::uint64_t(1) << f.num_vars;
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < total; ++x) {
    bool ok = true;
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
      std::uint32_t xm = static_cast<std::uint32_t>(x);
      if ((xm & pos[c]) == 0 && ((~xm) & neg[c]) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace otcsim
