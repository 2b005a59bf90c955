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

#ifndef OTCSIM_CLI_HPP
#define OTCSIM_CLI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "otcsim/protocols.hpp"
#include "otcsim/timelike.hpp"

namespace otcsim {

enum class Subcommand { measure, sgate, sat, clone, fixpoint };
enum class ReportFormat { json, csv };

/// Exit codes of cli::run, mirrored by the binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadArguments = 1;
inline constexpr int kExitParseFailure = 2;
inline constexpr int kExitProtocolError = 3;

struct RunConfig {
  Subcommand subcommand = Subcommand::measure;

  std::string state_path;  // measure, sgate, clone, fixpoint
  std::string cnf_path;    // sat
  std::string obs_name = "sigmaz";  // sigmax|sigmay|sigmaz or fixture path
  std::string unitary;     // fixpoint preset or fixture path
  std::vector<std::size_t> ctc_dims;  // fixpoint identity/fixture setups

  double delta = 0.1;
  double eps = 0.05;
  std::size_t ancillas = 0;  // 0 = auto budget from (delta, eps)
  std::size_t p = 0;         // 0 = per-protocol default
  std::size_t q = kSatDefaultRepetitions;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  SatMode mode = SatMode::analytic;

  double tol = kFixedPointTol;
  std::size_t max_iter = kFixedPointMaxIter;
  SolveStrategy strategy = SolveStrategy::automatic;

  ReportFormat format = ReportFormat::json;
  std::string out_path;  // empty = write the report to stdout
};

/// Executes `trials` seeded runs of the configured protocol (trial seeds are
/// seed + trial index), writes the report, and returns an exit code. Error
/// messages name the offending parameter on stderr.
int run(const RunConfig& config);

}  // namespace otcsim

#endif  // OTCSIM_CLI_HPP
