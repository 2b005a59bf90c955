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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "otcsim/cli.hpp"
#include "otcsim/version.hpp"

namespace {

void add_output_flags(CLI::App* cmd, std::string& format,
                      otcsim::RunConfig& config) {
  cmd->add_option("--format", format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", config.out_path,
                  "Report file path (stdout when omitted)");
  cmd->add_option("--seed", config.seed, "Master seed; trial t uses seed+t");
  cmd->add_option("--trials", config.trials, "Number of independent trials");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density-matrix simulator for timelike-curve protocols"};
  app.set_version_flag("--version", otcsim::kVersion);
  app.require_subcommand(1);

  otcsim::RunConfig config;
  std::string format = "json";
  std::string mode = "analytic";
  std::string method = "auto";

  CLI::App* measure = app.add_subcommand(
      "measure", "Decorrelated-ancilla estimation of an observable");
  measure->add_option("--state", config.state_path, "State fixture (JSON)")
      ->required();
  measure->add_option("--obs", config.obs_name,
                      "sigmax|sigmay|sigmaz or an observable fixture path");
  measure->add_option("--delta", config.delta, "Target accuracy");
  measure->add_option("--eps", config.eps, "Failure probability budget");
  measure->add_option("--ancillas", config.ancillas,
                      "Override the ancilla budget (0 = auto)");
  add_output_flags(measure, format, config);

  CLI::App* sgate = app.add_subcommand(
      "sgate", "Iterate the nonlinear squaring gate on a qubit state");
  sgate->add_option("--state", config.state_path, "State fixture (JSON)")
      ->required();
  sgate->add_option("--p", config.p, "Iteration count (default 1)");
  add_output_flags(sgate, format, config);

  CLI::App* sat = app.add_subcommand(
      "sat", "Decide satisfiability of a DIMACS CNF formula");
  sat->add_option("--cnf", config.cnf_path, "DIMACS CNF file")->required();
  sat->add_option("--p", config.p, "Squaring rounds (0 = default)");
  sat->add_option("--q", config.q, "Measurement repetitions");
  sat->add_option("--mode", mode, "circuit or analytic")
      ->check(CLI::IsMember({"circuit", "analytic"}));
  add_output_flags(sat, format, config);

  CLI::App* clone = app.add_subcommand(
      "clone", "Reconstruct a qudit state from decorrelated clones");
  clone->add_option("--state", config.state_path, "State fixture (JSON)")
      ->required();
  clone->add_option("--delta", config.delta, "Per-component accuracy");
  clone->add_option("--eps", config.eps, "Failure probability budget");
  add_output_flags(clone, format, config);

  CLI::App* fixpoint = app.add_subcommand(
      "fixpoint", "Solve the timelike self-consistency condition");
  fixpoint->add_option("--state", config.state_path, "State fixture (JSON)")
      ->required();
  fixpoint
      ->add_option("--unitary", config.unitary,
                   "identity|swap|cnot|grandfather or a matrix fixture path")
      ->required();
  fixpoint->add_option("--ctc-dims", config.ctc_dims,
                       "Dimensions of the timelike slots");
  fixpoint->add_option("--tol", config.tol, "Residual tolerance");
  fixpoint->add_option("--max-iter", config.max_iter, "Iteration budget");
  fixpoint->add_option("--method", method, "auto, iterative, or spectral")
      ->check(CLI::IsMember({"auto", "iterative", "spectral"}));
  add_output_flags(fixpoint, format, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return otcsim::kExitBadArguments;
  }

  if (measure->parsed()) config.subcommand = otcsim::Subcommand::measure;
  if (sgate->parsed()) config.subcommand = otcsim::Subcommand::sgate;
  if (sat->parsed()) config.subcommand = otcsim::Subcommand::sat;
  if (clone->parsed()) config.subcommand = otcsim::Subcommand::clone;
  if (fixpoint->parsed()) config.subcommand = otcsim::Subcommand::fixpoint;

  config.format = format == "csv" ? otcsim::ReportFormat::csv
                                  : otcsim::ReportFormat::json;
  config.mode = mode == "circuit" ? otcsim::SatMode::circuit
                                  : otcsim::SatMode::analytic;
  config.strategy = method == "iterative"
                        ? otcsim::SolveStrategy::iterative
                        : method == "spectral"
                              ? otcsim::SolveStrategy::spectral
                              : otcsim::SolveStrategy::automatic;

  return otcsim::run(config);
}
