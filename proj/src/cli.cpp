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

#include "otcsim/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "otcsim/cloner.hpp"
#include "otcsim/cnf.hpp"
#include "otcsim/errors.hpp"
#include "otcsim/gates.hpp"
#include "otcsim/serialization.hpp"
#include "otcsim/version.hpp"

namespace otcsim {

namespace {

using nlohmann::json;

std::string now_iso8601() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const char* subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::measure: return "measure";
    case Subcommand::sgate: return "sgate";
    case Subcommand::sat: return "sat";
    case Subcommand::clone: return "clone";
    case Subcommand::fixpoint: return "fixpoint";
  }
  return "unknown";
}

void flatten_into(const json& node, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      flatten_into(it.value(),
                   prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (node.is_primitive() && !node.is_null()) {
    out.emplace_back(prefix, node.is_string()
                                 ? node.get<std::string>()
                                 : node.dump());
  }
}

std::string to_csv(const json& config, const json& aggregate,
                   const json& theory) {
  std::vector<std::pair<std::string, std::string>> cells;
  flatten_into(config, "config", cells);
  flatten_into(aggregate, "aggregate", cells);
  flatten_into(theory, "theory", cells);
  std::ostringstream out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out << cells[i].first << (i + 1 < cells.size() ? "," : "\n");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out << cells[i].second << (i + 1 < cells.size() ? "," : "\n");
  }
  return out.str();
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats summarize(const std::vector<double>& values) {
  Stats s;
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(values.size()));
  return s;
}

/// Raised while reading or validating input files; maps to exit code 2.
/// Deliberately not derived from Error so protocol-stage handlers skip it.
struct InputFailure {
  std::string message;
};

template <typename F>
auto load_phase(const char* flag, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InputFailure{std::string(flag) + ": " + e.what()};
  } catch (const Error& e) {
    throw InputFailure{std::string(flag) + ": " + e.what()};
  }
}

Observable load_observable(const std::string& name) {
  if (name == "sigmax") return Observable::sigma_x();
  if (name == "sigmay") return Observable::sigma_y();
  if (name == "sigmaz") return Observable::sigma_z();
  return load_phase("--obs", [&] {
    std::ifstream in(name);
    if (!in) {
      throw ValidationError("cannot open observable fixture '" + name + "'");
    }
    json j;
    in >> j;
    return Observable(matrix_from_json(j));
  });
}

DensityMatrix load_state(const std::string& path) {
  return load_phase("--state", [&] { return load_state_file(path); });
}

struct ReportSections {
  json config;
  json trials = json::array();
  json aggregate;
  json theory;
};

json run_measure_trials(const RunConfig& config, ReportSections& report) {
  DensityMatrix rho = load_state(config.state_path);
  Observable obs = load_observable(config.obs_name);
  std::size_t ancillas = config.ancillas > 0
                             ? config.ancillas
                             : required_ancillas(obs, config.delta,
                                                 config.eps);
  double truth = expectation(rho, obs);

  std::vector<double> estimates;
  std::size_t failures = 0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    MeasurementPlan plan{obs, config.delta, config.eps, ancillas,
                         config.seed + t};
    MeasurementResult mr = otc_measure(rho, plan);
    bool failed = std::abs(mr.estimate - truth) >= config.delta;
    failures += failed ? 1 : 0;
    estimates.push_back(mr.estimate);
    report.trials.push_back(json{{"seed", plan.seed},
                                 {"estimate", mr.estimate},
                                 {"samples", mr.samples},
                                 {"otc_uses", mr.otc_uses},
                                 {"failed", failed}});
  }
  Stats stats = summarize(estimates);
  double range = obs.eigen_range();
  double hoeffding = 2.0 * std::exp(-2.0 *
                                    static_cast<double>(ancillas + 1) *
                                    config.delta * config.delta /
                                    (range * range));
  report.aggregate = json{
      {"trials", config.trials},
      {"mean_estimate", stats.mean},
      {"stddev_estimate", stats.stddev},
      {"empirical_failure_rate",
       static_cast<double>(failures) /
           static_cast<double>(std::max<std::size_t>(config.trials, 1))}};
  report.theory = json{{"expectation", truth},
                       {"ancillas", ancillas},
                       {"otc_uses_per_trial", ancillas},
                       {"hoeffding_failure_bound", std::min(hoeffding, 1.0)},
                       {"epsilon", config.eps},
                       {"delta", config.delta}};
  return report.aggregate;
}

json run_sgate_trials(const RunConfig& config, ReportSections& report) {
  DensityMatrix rho = load_state(config.state_path);
  std::size_t iterations = config.p > 0 ? config.p : 1;
  double n_z0 = bloch_of(rho).z;

  DensityMatrix current = rho;
  double worst = 0.0;
  json steps = json::array();
  for (std::size_t k = 1; k <= iterations; ++k) {
    current = s_gate(current);
    double expected = std::pow(n_z0, std::pow(2.0, static_cast<double>(k)));
    double actual = bloch_of(current).z;
    worst = std::max(worst, std::abs(actual - expected));
    steps.push_back(json{{"iteration", k},
                         {"n_z_circuit", actual},
                         {"n_z_closed_form", expected}});
  }
  report.trials.push_back(json{{"seed", config.seed}, {"steps", steps}});
  report.aggregate = json{{"iterations", iterations},
                          {"initial_n_z", n_z0},
                          {"final_n_z", bloch_of(current).z},
                          {"max_abs_deviation", worst}};
  report.theory = json{
      {"final_n_z_closed_form",
       std::pow(n_z0, std::pow(2.0, static_cast<double>(iterations)))}};
  return report.aggregate;
}

CnfFormula load_cnf(const std::string& path) {
  return load_phase("--cnf", [&] {
    std::ifstream in(path);
    if (!in) {
      throw ValidationError("cannot open '" + path + "'");
    }
    return parse_dimacs(in);
  });
}

json run_sat_trials(const RunConfig& config, ReportSections& report) {
  CnfFormula f = load_cnf(config.cnf_path);
  std::size_t p = config.p > 0 ? config.p : sat_default_rounds(f.num_vars);
  std::size_t q = config.q;

  std::size_t satisfiable_answers = 0;
  double predicted_p_fail = 0.0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    SatDecision d = sat_decide(f, p, q, config.mode, config.seed + t);
    predicted_p_fail = d.predicted_p_fail;
    bool sat_answer = d.answer == SatAnswer::satisfiable;
    satisfiable_answers += sat_answer ? 1 : 0;
    report.trials.push_back(json{
        {"seed", config.seed + t},
        {"answer", sat_answer ? "satisfiable" : "unsatisfiable"}});
  }

  report.aggregate = json{
      {"trials", config.trials},
      {"satisfiable_answers", satisfiable_answers},
      {"satisfiable_fraction",
       static_cast<double>(satisfiable_answers) /
           static_cast<double>(std::max<std::size_t>(config.trials, 1))}};
  report.theory = json{{"p", p},
                       {"q", q},
                       {"mode", config.mode == SatMode::circuit
                                    ? "circuit"
                                    : "analytic"},
                       {"predicted_p_fail", predicted_p_fail}};
  if (f.num_vars <= kMaxExhaustiveVars) {
    std::uint64_t s = count_satisfying(f);
    report.theory["satisfying_count"] = s;
    bool truth = s > 0;
    std::size_t wrong = truth ? config.trials - satisfiable_answers
                              : satisfiable_answers;
    report.aggregate["empirical_failure_rate"] =
        static_cast<double>(wrong) /
        static_cast<double>(std::max<std::size_t>(config.trials, 1));
  }
  return report.aggregate;
}

json run_clone_trials(const RunConfig& config, ReportSections& report) {
  DensityMatrix rho = load_state(config.state_path);
  if (rho.layout().factor_count() != 1) {
    throw ValidationError(
        "--state: clone expects a single-qudit fixture (one entry in dims)");
  }
  const std::size_t d = rho.dim();
  std::vector<Observable> observables = informationally_complete_set(d);
  std::vector<std::string> labels = informationally_complete_labels(d);
  std::vector<double> truths;
  for (const Observable& obs : observables) {
    truths.push_back(expectation(rho, obs));
  }

  std::vector<double> fidelities;
  std::vector<std::size_t> per_obs_within(observables.size(), 0);
  std::size_t all_within = 0;
  std::size_t total_otc = 0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    CloneReport cr = otc_clone(rho, config.delta, config.eps,
                               config.seed + t);
    fidelities.push_back(cr.fidelity_to_input);
    total_otc = cr.total_otc_uses;
    bool all_ok = true;
    json per_obs = json::array();
    for (std::size_t i = 0; i < cr.per_observable.size(); ++i) {
      double err = std::abs(cr.per_observable[i].unbiased - truths[i]);
      bool ok = err < config.delta;
      per_obs_within[i] += ok ? 1 : 0;
      all_ok = all_ok && ok;
      per_obs.push_back(json{{"id", cr.per_observable[i].id},
                             {"raw", cr.per_observable[i].raw},
                             {"unbiased", cr.per_observable[i].unbiased},
                             {"abs_error", err}});
    }
    all_within += all_ok ? 1 : 0;
    report.trials.push_back(json{{"seed", config.seed + t},
                                 {"fidelity", cr.fidelity_to_input},
                                 {"total_otc_uses", cr.total_otc_uses},
                                 {"observables", per_obs}});
  }

  Stats fid = summarize(fidelities);
  json rates = json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    rates[labels[i]] =
        static_cast<double>(per_obs_within[i]) /
        static_cast<double>(std::max<std::size_t>(config.trials, 1));
  }
  report.aggregate = json{
      {"trials", config.trials},
      {"mean_fidelity", fid.mean},
      {"stddev_fidelity", fid.stddev},
      {"all_within_delta_rate",
       static_cast<double>(all_within) /
           static_cast<double>(std::max<std::size_t>(config.trials, 1))},
      {"within_delta_rates", rates}};

  double s = shrinking_factor(d, observables.size());
  json budgets = json::object();
  std::size_t planned_total = observables.size();
  for (std::size_t i = 0; i < observables.size(); ++i) {
    std::size_t n = required_ancillas(
        observables[i], s * config.delta,
        config.eps / static_cast<double>(observables.size()));
    budgets[labels[i]] = n;
    planned_total += n;
  }
  report.theory = json{{"dimension", d},
                       {"clones", observables.size()},
                       {"shrinking_factor", s},
                       {"ancilla_budgets", budgets},
                       {"total_otc_uses", planned_total},
                       {"measured_total_otc_uses", total_otc}};
  return report.aggregate;
}

CtcSpec build_fixpoint_spec(const RunConfig& config,
                            const DensityMatrix& input) {
  const std::string& u = config.unitary;
  if (u.empty()) {
    throw ValidationError("--unitary is required for fixpoint "
                          "(identity|swap|cnot|grandfather or a fixture)");
  }
  if (u == "identity") {
    std::vector<std::size_t> dims = input.layout().dims();
    std::vector<std::size_t> ctc = config.ctc_dims.empty()
                                       ? std::vector<std::size_t>{2}
                                       : config.ctc_dims;
    std::vector<std::size_t> ctc_idx;
    for (std::size_t k = 0; k < ctc.size(); ++k) {
      ctc_idx.push_back(dims.size() + k);
    }
    dims.insert(dims.end(), ctc.begin(), ctc.end());
    SubsystemLayout joint(dims);
    return CtcSpec(ComplexMatrix::identity(joint.total_dim()), joint,
                   ctc_idx);
  }
  if (u == "swap" || u == "cnot" || u == "grandfather") {
    if (input.layout().factor_count() != 1) {
      throw ValidationError("--unitary " + u +
                            " expects a single-factor input state");
    }
    std::size_t d = input.dim();
    SubsystemLayout joint({d, d});
    if (u == "swap") {
      return CtcSpec(swap_gate(d), joint, {1});
    }
    if (d != 2) {
      throw ValidationError("--unitary " + u + " expects a qubit input");
    }
    if (u == "cnot") {
      return CtcSpec(c_plus(2), joint, {1});
    }
    // Wormhole traversal then a flip of the CTC side controlled on the
    // chronology side: the grandfather circuit.
    return CtcSpec(c_plus(2) * swap_gate(2), joint, {1});
  }
  SubsystemLayout joint({2});
  ComplexMatrix matrix = load_phase("--unitary", [&] {
    std::ifstream in(u);
    if (!in) {
      throw ValidationError("cannot open fixture '" + u + "'");
    }
    json j;
    in >> j;
    return matrix_from_json(j, &joint);
  });
  std::size_t ctc_count = config.ctc_dims.empty() ? 1 : config.ctc_dims.size();
  if (ctc_count >= joint.factor_count()) {
    throw ValidationError("--ctc-dims: no chronology factors would remain");
  }
  std::vector<std::size_t> ctc_idx;
  for (std::size_t k = joint.factor_count() - ctc_count;
       k < joint.factor_count(); ++k) {
    if (!config.ctc_dims.empty() &&
        joint.dim(k) !=
            config.ctc_dims[k - (joint.factor_count() - ctc_count)]) {
      throw ValidationError("--ctc-dims does not match the fixture layout");
    }
    ctc_idx.push_back(k);
  }
  return CtcSpec(std::move(matrix), std::move(joint), std::move(ctc_idx));
}

json run_fixpoint(const RunConfig& config, ReportSections& report) {
  DensityMatrix input = load_state(config.state_path);
  CtcSpec spec = build_fixpoint_spec(config, input);
  FixedPointReport fp = deutsch_fixed_point(input, spec, config.tol,
                                            config.max_iter, config.strategy);
  DensityMatrix output = ctc_evolve(input, spec, fp);

  const char* method = fp.method == FixedPointMethod::power_iteration
                           ? "power_iteration"
                           : fp.method == FixedPointMethod::cesaro_average
                                 ? "cesaro_average"
                                 : "spectral_exact";
  report.trials.push_back(json{{"seed", config.seed},
                               {"method", method},
                               {"iterations", fp.iterations},
                               {"residual", fp.residual},
                               {"fixed_point", state_to_json(fp.solution)},
                               {"output", state_to_json(output)}});
  report.aggregate = json{{"method", method},
                          {"iterations", fp.iterations},
                          {"residual", fp.residual}};
  report.theory = json{{"tol", config.tol}, {"max_iter", config.max_iter}};
  return report.aggregate;
}

json config_to_json(const RunConfig& config) {
  json j{{"subcommand", subcommand_name(config.subcommand)},
         {"trials", config.trials},
         {"seed", config.seed},
         {"format", config.format == ReportFormat::json ? "json" : "csv"}};
  switch (config.subcommand) {
    case Subcommand::measure:
      j["state"] = config.state_path;
      j["obs"] = config.obs_name;
      j["delta"] = config.delta;
      j["eps"] = config.eps;
      if (config.ancillas > 0) j["ancillas"] = config.ancillas;
      break;
    case Subcommand::sgate:
      j["state"] = config.state_path;
      j["p"] = config.p > 0 ? config.p : 1;
      break;
    case Subcommand::sat:
      j["cnf"] = config.cnf_path;
      j["p"] = config.p;
      j["q"] = config.q;
      j["mode"] = config.mode == SatMode::circuit ? "circuit" : "analytic";
      break;
    case Subcommand::clone:
      j["state"] = config.state_path;
      j["delta"] = config.delta;
      j["eps"] = config.eps;
      break;
    case Subcommand::fixpoint:
      j["state"] = config.state_path;
      j["unitary"] = config.unitary;
      j["tol"] = config.tol;
      j["max_iter"] = config.max_iter;
      break;
  }
  return j;
}

void validate_common(const RunConfig& config) {
  if (config.trials < 1) {
    throw ValidationError("--trials must be at least 1");
  }
  bool needs_state = config.subcommand != Subcommand::sat;
  if (needs_state && config.state_path.empty()) {
    throw ValidationError("--state is required for this subcommand");
  }
  if (config.subcommand == Subcommand::sat && config.cnf_path.empty()) {
    throw ValidationError("--cnf is required for the sat subcommand");
  }
  if (config.subcommand == Subcommand::fixpoint && config.unitary.empty()) {
    throw ValidationError(
        "--unitary is required (identity|swap|cnot|grandfather or a "
        "fixture path)");
  }
  bool needs_accuracy = config.subcommand == Subcommand::measure ||
                        config.subcommand == Subcommand::clone;
  if (needs_accuracy) {
    if (config.delta <= 0.0) {
      throw ValidationError("--delta must be positive");
    }
    if (config.eps <= 0.0 || config.eps >= 1.0) {
      throw ValidationError("--eps must lie in (0, 1)");
    }
  }
  if (config.subcommand == Subcommand::sat && config.q < 1) {
    throw ValidationError("--q must be at least 1");
  }
  if (config.subcommand == Subcommand::fixpoint && config.tol <= 0.0) {
    throw ValidationError("--tol must be positive");
  }
}

}  // namespace

int run(const RunConfig& config) {
  try {
    validate_common(config);
  } catch (const Error& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return kExitBadArguments;
  }

  ReportSections report;
  report.config = config_to_json(config);
  try {
    switch (config.subcommand) {
      case Subcommand::measure:
        run_measure_trials(config, report);
        break;
      case Subcommand::sgate:
        run_sgate_trials(config, report);
        break;
      case Subcommand::sat:
        run_sat_trials(config, report);
        break;
      case Subcommand::clone:
        run_clone_trials(config, report);
        break;
      case Subcommand::fixpoint:
        run_fixpoint(config, report);
        break;
    }
  } catch (const InputFailure& e) {
    std::cerr << "input parse error: " << e.message << '\n';
    return kExitParseFailure;
  } catch (const Error& e) {
    std::cerr << "protocol error: " << e.what() << '\n';
    return kExitProtocolError;
  }

  json full{{"config", report.config},
            {"trials", report.trials},
            {"aggregate", report.aggregate},
            {"theory", report.theory},
            {"version", kVersion},
            {"generated_at", now_iso8601()}};

  std::string payload = config.format == ReportFormat::json
                            ? full.dump(2) + "\n"
                            : to_csv(report.config, report.aggregate,
                                     report.theory);
  if (config.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(config.out_path);
    if (!out) {
      std::cerr << "argument error: --out: cannot write '" << config.out_path
                << "'\n";
      return kExitBadArguments;
    }
    out << payload;
    std::cout << subcommand_name(config.subcommand) << ": wrote "
              << config.out_path << '\n';
  }
  return kExitOk;
}

}  // namespace otcsim
