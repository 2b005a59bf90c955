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

#include <doctest.h>

#include <string>

#include "otcsim/cnf.hpp"
#include "otcsim/errors.hpp"
#include "otcsim/rng.hpp"

using namespace otcsim;

TEST_CASE("parse minimal valid file") {
  CnfFormula f = parse_dimacs("p cnf 2 1\n1 2 0\n");
  CHECK(f.num_vars == 2);
  REQUIRE(f.clauses.size() == 1);
  CHECK(f.clauses[0] == std::vector<int>{1, 2});
}

TEST_CASE("parse skips comments and accepts negative literals") {
  CnfFormula f = parse_dimacs("c comment\np cnf 1 1\n-1 0\n");
  CHECK(f.num_vars == 1);
  REQUIRE(f.clauses.size() == 1);
  CHECK(f.clauses[0] == std::vector<int>{-1});
}

TEST_CASE("parse accepts clauses spanning lines and extra whitespace") {
  CnfFormula f = parse_dimacs("p cnf 3 2\n  1   -2\n3 0 2\n-3 0\n");
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0] == std::vector<int>{1, -2, 3});
  CHECK(f.clauses[1] == std::vector<int>{2, -3});
}

TEST_CASE("parse accepts the empty clause") {
  CnfFormula f = parse_dimacs("p cnf 2 1\n0\n");
  REQUIRE(f.clauses.size() == 1);
  CHECK(f.clauses[0].empty());
  CHECK(count_satisfying(f) == 0);
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("clause count mismatch") {
    try {
      parse_dimacs("p cnf 2 2\n1 0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("clause count mismatch") !=
            std::string::npos);
    }
  }
  SUBCASE("missing problem line") {
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
  }
  SUBCASE("duplicate problem line") {
    try {
      parse_dimacs("p cnf 1 1\np cnf 1 1\n-1 0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("literal out of range") {
    try {
      parse_dimacs("p cnf 2 1\n1 3 0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("out of range") != std::string::npos);
    }
  }
  SUBCASE("non-integer token") {
    try {
      parse_dimacs("p cnf 2 1\n1 x 0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("non-integer") != std::string::npos);
    }
  }
  SUBCASE("unterminated clause") {
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(parse_dimacs(""), ParseError);
  }
}

TEST_CASE("eval_assignment basic cases") {
  CnfFormula unit{1, {{1}}};
  CHECK(eval_assignment(unit, {true}));
  CHECK_FALSE(eval_assignment(unit, {false}));

  CnfFormula contradiction{1, {{1}, {-1}}};
  CHECK_FALSE(eval_assignment(contradiction, {true}));
  CHECK_FALSE(eval_assignment(contradiction, {false}));

  // (x1 or x2) and (not x1 or x2) at (1, 0).
  CnfFormula f{2, {{1, 2}, {-1, 2}}};
  CHECK_FALSE(eval_assignment(f, {true, false}));
  CHECK(eval_assignment(f, {true, true}));

  CHECK_THROWS_AS(eval_assignment(f, {true}), DimensionError);
}

TEST_CASE("count_satisfying on fixed formulas") {
  CnfFormula tautology{3, {}};
  CHECK(count_satisfying(tautology) == 8);

  CnfFormula contradiction{1, {{1}, {-1}}};
  CHECK(count_satisfying(contradiction) == 0);

  CnfFormula f{2, {{1, 2}}};
  CHECK(count_satisfying(f) == 3);
}

TEST_CASE("count_satisfying equals the sum of eval_assignment") {
  Rng rng(97);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 2 + trial % 11;  // up to 12 variables
    CnfFormula f;
    f.num_vars = n;
    std::size_t clauses = 1 + rng.next_u64() % (2 * n);
    for (std::size_t c = 0; c < clauses; ++c) {
      std::vector<int> clause;
      for (int l = 0; l < 3; ++l) {
        int var = 1 + static_cast<int>(rng.next_u64() % n);
        clause.push_back((rng.next_u64() & 1) ? var : -var);
      }
      f.clauses.push_back(clause);
    }
    std::uint64_t brute = 0;
    std::vector<bool> assignment(n);
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) {
      for (std::size_t k = 0; k < n; ++k) {
        assignment[k] = ((x >> k) & 1u) != 0;
      }
      brute += eval_assignment(f, assignment) ? 1 : 0;
    }
    CHECK(count_satisfying(f) == brute);
  }
}

TEST_CASE("count_satisfying rejects formulas beyond the exhaustive bound") {
  CnfFormula f{25, {}};
  CHECK_THROWS_AS(count_satisfying(f), DimensionError);
}

TEST_CASE("serialize then parse reproduces the structure") {
  CnfFormula f{4, {{1, -3}, {2, 4, -1}, {}}};
  CnfFormula back = parse_dimacs(serialize_dimacs(f));
  CHECK(back.num_vars == f.num_vars);
  CHECK(back.clauses == f.clauses);
}
