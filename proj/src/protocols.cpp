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

#include "otcsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otcsim/cloner.hpp"
#include "otcsim/errors.hpp"
#include "otcsim/gates.hpp"
#include "otcsim/rng.hpp"
#include "otcsim/timelike.hpp"

namespace otcsim {

namespace {

// Diagonal of rho in the observable eigenbasis: the Born weights that
// survive decorrelation.
std::vector<double> diagonal_in_eigenbasis(const DensityMatrix& rho,
                                           const Observable& obs) {
  const std::size_t d = rho.dim();
  std::vector<double> diag(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        acc += std::conj(obs.eigenvectors()(i, k)) * rho.matrix()(i, j) *
               obs.eigenvectors()(j, k);
      }
    }
    double p = acc.real();
    if (p < -kPsdTol) {
      throw ValidationError("otc_measure: Born probability " +
                            std::to_string(p) + " below tolerance");
    }
    diag[k] = std::max(p, 0.0);
  }
  double total = 0.0;
  for (double p : diag) total += p;
  for (double& p : diag) p /= total;
  return diag;
}

DensityMatrix qubit_state(double p0, Complex off) {
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex(p0, 0.0);
  m(1, 1) = Complex(1.0 - p0, 0.0);
  m(0, 1) = off;
  m(1, 0) = std::conj(off);
  return DensityMatrix(std::move(m), SubsystemLayout::qubits(1));
}

}  // namespace

std::size_t required_ancillas(const Observable& obs, double delta,
                              double epsilon) {
  if (delta <= 0.0) {
    throw ValidationError("required_ancillas: delta must be positive");
  }
  if (epsilon <= 0.0 || epsilon >= 1.0) {
    throw ValidationError("required_ancillas: epsilon must lie in (0, 1)");
  }
  double range = obs.eigen_range();
  double bound =
      range * range / (2.0 * delta * delta) * std::log(2.0 / epsilon);
  // Smallest integer strictly above the bound.
  double floor_bound = std::floor(bound);
  std::size_t n = static_cast<std::size_t>(std::max(floor_bound, 0.0)) + 1;
  return n;
}

MeasurementPlan MeasurementPlan::budgeted(Observable observable, double delta,
                                          double epsilon,
                                          std::uint64_t seed) {
  std::size_t n = required_ancillas(observable, delta, epsilon);
  return MeasurementPlan{std::move(observable), delta, epsilon, n, seed};
}

MeasurementResult otc_measure(const DensityMatrix& rho,
                              const MeasurementPlan& plan,
                              bool keep_outcomes) {
  if (rho.dim() != plan.observable.dim()) {
    throw DimensionError("otc_measure: state dimension " +
                         std::to_string(rho.dim()) +
                         " vs observable dimension " +
                         std::to_string(plan.observable.dim()));
  }
  if (plan.ancillas < 1) {
    throw ValidationError("otc_measure: plan needs at least one ancilla");
  }
  // After the controlled additions and per-ancilla OTCs the N+1 qudits are
  // uncorrelated and identically diagonal, so measurement outcomes are
  // i.i.d. draws from the eigenbasis diagonal of rho.
  std::vector<double> diag = diagonal_in_eigenbasis(rho, plan.observable);
  const std::size_t d = rho.dim();
  std::vector<double> cumulative(d);
  double running = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    running += diag[k];
    cumulative[k] = running;
  }
  cumulative.back() = 1.0;

  const std::size_t samples = plan.ancillas + 1;
  Rng rng(plan.seed);
  double sum = 0.0;
  MeasurementResult result;
  if (keep_outcomes) result.outcomes.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    double u = rng.uniform01();
    std::size_t k =
        std::upper_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin();
    if (k >= d) k = d - 1;
    double outcome = plan.observable.eigenvalues()[k];
    sum += outcome;
    if (keep_outcomes) result.outcomes.push_back(outcome);
  }
  result.estimate = sum / static_cast<double>(samples);
  result.samples = samples;
  result.otc_uses = plan.ancillas;
  return result;
}

DensityMatrix otc_measure_joint(const DensityMatrix& rho,
                                const Observable& obs, std::size_t ancillas,
                                std::size_t max_dim) {
  if (rho.layout().factor_count() != 1) {
    throw DimensionError("otc_measure_joint: input must be a single qudit");
  }
  if (rho.dim() != obs.dim()) {
    throw DimensionError("otc_measure_joint: dimension mismatch");
  }
  if (ancillas < 1 || ancillas > 6) {
    throw DimensionError(
        "otc_measure_joint: explicit joint path supports 1..6 ancillas");
  }
  const std::size_t d = rho.dim();

  // Work in the observable eigenbasis; |0> there is an eigenstate of obs.
  ComplexMatrix v = obs.eigenvectors();
  ComplexMatrix rho_eig = v.adjoint() * rho.matrix() * v;

  ComplexMatrix joint = rho_eig;
  for (std::size_t k = 0; k < ancillas; ++k) {
    ComplexMatrix ancilla(d, d);
    ancilla(0, 0) = Complex(1.0, 0.0);
    joint = tensor_product(joint, ancilla, max_dim);
  }
  SubsystemLayout layout(std::vector<std::size_t>(ancillas + 1, d));

  ComplexMatrix addition = c_plus(d);
  for (std::size_t k = 1; k <= ancillas; ++k) {
    ComplexMatrix gate = embed(addition, layout, {0, k});
    joint = conjugate_by(gate, joint);
  }

  DensityMatrix state(std::move(joint), layout);
  for (std::size_t k = 1; k <= ancillas; ++k) {
    state = otc_apply(state, {k});
  }
  return state;
}

DensityMatrix s_gate(const DensityMatrix& rho) {
  if (rho.dim() != 2 || rho.layout().factor_count() != 1) {
    throw DimensionError("s_gate: input must be a single qubit");
  }
  SubsystemLayout layout = SubsystemLayout::qubits(2);
  ComplexMatrix ancilla(2, 2);
  ancilla(0, 0) = Complex(1.0, 0.0);
  ComplexMatrix joint = tensor_product(rho.matrix(), ancilla);

  ComplexMatrix forward = embed(c_plus(2), layout, {0, 1});
  joint = conjugate_by(forward, joint);

  DensityMatrix decorrelated =
      otc_apply(DensityMatrix(std::move(joint), layout), {1});

  ComplexMatrix backward = embed(c_plus(2), layout, {1, 0});
  ComplexMatrix evolved = conjugate_by(backward, decorrelated.matrix());

  ComplexMatrix reduced = partial_trace(evolved, layout, {0});
  return DensityMatrix(std::move(reduced), SubsystemLayout::qubits(1));
}

std::size_t sat_default_rounds(std::size_t num_vars) {
  std::size_t p = 2;
  std::size_t capacity = 1;
  while (capacity < num_vars + 1) {
    capacity *= 2;
    ++p;
  }
  return p;
}

DensityMatrix sat_target_state(const CnfFormula& f, SatMode mode) {
  const std::size_t n = f.num_vars;
  if (n < 1) {
    throw DimensionError("sat_target_state: formula has no variables");
  }
  if (mode == SatMode::analytic) {
    if (n > kMaxExhaustiveVars) {
      throw DimensionError("sat_target_state: analytic mode capped at " +
                           std::to_string(kMaxExhaustiveVars) +
                           " variables");
    }
    double s = static_cast<double>(count_satisfying(f));
    double n_z = 1.0 - s / std::pow(2.0, static_cast<double>(n) - 1.0);
    return qubit_state((1.0 + n_z) / 2.0, Complex(0.0, 0.0));
  }

  if (n > 12) {
    throw DimensionError("sat_target_state: circuit mode capped at 12 "
                         "variables");
  }
  // Uniform superposition on the ancillas, |0> on the target.
  PureState ancillas = uniform_prep(n, std::size_t(1) << 13);
  const std::size_t anc_dim = std::size_t(1) << n;
  std::vector<Complex> amps(anc_dim * 2, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < anc_dim; ++i) {
    amps[2 * i] = ancillas.amplitudes()[i];
  }
  // The oracle permutes basis states: block i applies sigma_x^{f(i)} to the
  // target, i.e. swaps the two target amplitudes of every satisfied block.
  std::vector<bool> assignment(n);
  for (std::size_t i = 0; i < anc_dim; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      assignment[k] = ((i >> (n - 1 - k)) & 1u) != 0;
    }
    if (eval_assignment(f, assignment)) {
      std::swap(amps[2 * i], amps[2 * i + 1]);
    }
  }
  // Target marginal straight from the amplitudes.
  Complex p0(0.0, 0.0), p1(0.0, 0.0), off(0.0, 0.0);
  for (std::size_t i = 0; i < anc_dim; ++i) {
    p0 += amps[2 * i] * std::conj(amps[2 * i]);
    p1 += amps[2 * i + 1] * std::conj(amps[2 * i + 1]);
    off += amps[2 * i] * std::conj(amps[2 * i + 1]);
  }
  ComplexMatrix target(2, 2);
  target(0, 0) = p0;
  target(1, 1) = p1;
  target(0, 1) = off;
  target(1, 0) = std::conj(off);
  return DensityMatrix(std::move(target), SubsystemLayout::qubits(1));
}

SatDecision sat_decide(const CnfFormula& f, std::size_t p, std::size_t q,
                       SatMode mode, std::uint64_t seed) {
  if (q < 1) {
    throw ValidationError("sat_decide: need at least one repetition");
  }
  SatDecision decision;
  decision.p = p;
  decision.q = q;
  decision.mode = mode;

  // Cheap probe: if the all-zeros assignment satisfies f we are done. This
  // also covers s = 2^n, which the squaring map cannot tell from s = 0.
  std::vector<bool> zeros(f.num_vars, false);
  if (eval_assignment(f, zeros)) {
    decision.answer = SatAnswer::satisfiable;
    decision.predicted_p_fail = 0.0;
    return decision;
  }

  DensityMatrix target = sat_target_state(f, mode);
  double n_z_initial = bloch_of(target).z;
  for (std::size_t round = 0; round < p; ++round) {
    target = s_gate(target);
  }

  if (n_z_initial >= 1.0 - 1e-12) {
    // s = 0: the target never leaves |0><0|, so a wrong answer is
    // impossible.
    decision.predicted_p_fail = 0.0;
  } else {
    double biased = std::pow(n_z_initial, std::pow(2.0, static_cast<double>(p)));
    decision.predicted_p_fail =
        std::pow((1.0 + biased) / 2.0, static_cast<double>(q));
  }

  std::vector<double> outcomes =
      measure_sample(target, Observable::sigma_z(), q, seed);
  bool saw_minus = std::any_of(outcomes.begin(), outcomes.end(),
                               [](double v) { return v < 0.0; });
  decision.answer =
      saw_minus ? SatAnswer::satisfiable : SatAnswer::unsatisfiable;
  return decision;
}

double unbias_estimate(double raw, const Observable& obs, double s,
                       std::size_t d) {
  if (s <= 0.0 || s > 1.0) {
    throw ValidationError("unbias_estimate: shrinking factor must lie in "
                          "(0, 1]");
  }
  double trace = obs.matrix().trace().real();
  return (raw - (1.0 - s) * trace / static_cast<double>(d)) / s;
}

std::vector<Observable> informationally_complete_set(std::size_t d) {
  if (d < 2) {
    throw DimensionError("informationally_complete_set: dimension >= 2");
  }
  if (d == 2) {
    return {Observable::sigma_x(), Observable::sigma_y(),
            Observable::sigma_z()};
  }
  std::vector<Observable> set;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix sym(d, d);
      sym(j, k) = Complex(1.0, 0.0);
      sym(k, j) = Complex(1.0, 0.0);
      set.emplace_back(std::move(sym));
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix asym(d, d);
      asym(j, k) = Complex(0.0, -1.0);
      asym(k, j) = Complex(0.0, 1.0);
      set.emplace_back(std::move(asym));
    }
  }
  for (std::size_t l = 1; l < d; ++l) {
    double scale = std::sqrt(2.0 / (static_cast<double>(l) *
                                    static_cast<double>(l + 1)));
    ComplexMatrix diag(d, d);
    for (std::size_t m = 0; m < l; ++m) diag(m, m) = Complex(scale, 0.0);
    diag(l, l) = Complex(-scale * static_cast<double>(l), 0.0);
    set.emplace_back(std::move(diag));
  }
  return set;
}

std::vector<std::string> informationally_complete_labels(std::size_t d) {
  if (d == 2) {
    return {"sigma_x", "sigma_y", "sigma_z"};
  }
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      labels.push_back("gm_sym_" + std::to_string(j) + std::to_string(k));
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      labels.push_back("gm_asym_" + std::to_string(j) + std::to_string(k));
    }
  }
  for (std::size_t l = 1; l < d; ++l) {
    labels.push_back("gm_diag_" + std::to_string(l));
  }
  return labels;
}

CloneReport otc_clone(const DensityMatrix& rho, double delta, double epsilon,
                      std::uint64_t seed) {
  if (rho.layout().factor_count() != 1) {
    throw DimensionError("otc_clone: input must be a single qudit");
  }
  if (delta <= 0.0) {
    throw ValidationError("otc_clone: delta must be positive");
  }
  if (epsilon <= 0.0 || epsilon >= 1.0) {
    throw ValidationError("otc_clone: epsilon must lie in (0, 1)");
  }
  const std::size_t d = rho.dim();
  std::vector<Observable> observables = informationally_complete_set(d);
  std::vector<std::string> labels = informationally_complete_labels(d);
  const std::size_t copies = observables.size();  // one clone per observable

  CloneJob job{rho, copies, CloneBackend::marginal_model};
  std::vector<DensityMatrix> clones = clone_marginals(job);
  double s = shrinking_factor(d, copies);

  // Each observable gets an equal share of the failure budget, and its
  // accuracy target shrinks by s so the unbiased estimate lands within
  // delta.
  double per_obs_epsilon = epsilon / static_cast<double>(copies);

  CloneReport report{rho, 0.0, {}, 0};
  report.total_otc_uses = copies;  // one decorrelating OTC per clone
  std::vector<double> unbiased(copies, 0.0);
  for (std::size_t i = 0; i < copies; ++i) {
    MeasurementPlan plan = MeasurementPlan::budgeted(
        observables[i], s * delta, per_obs_epsilon, derive_seed(seed, i));
    MeasurementResult mr = otc_measure(clones[i], plan);
    report.total_otc_uses += mr.otc_uses;
    unbiased[i] = unbias_estimate(mr.estimate, observables[i], s, d);
    report.per_observable.push_back(
        ObservableEstimate{labels[i], mr.estimate, unbiased[i]});
  }

  // Linear inversion over the orthogonal generator basis (Tr[G^2] = 2).
  // Sampling noise can push the result outside the PSD cone, so clip its
  // spectrum and renormalize before validation.
  ComplexMatrix estimate = ComplexMatrix::identity(d);
  estimate *= Complex(1.0 / static_cast<double>(d), 0.0);
  for (std::size_t i = 0; i < copies; ++i) {
    ComplexMatrix term = observables[i].matrix();
    term *= Complex(unbiased[i] / 2.0, 0.0);
    estimate += term;
  }
  EigResult eig = eig_hermitian(estimate, 1e-8);
  std::vector<double> clipped = eig.values;
  double total = 0.0;
  for (double& v : clipped) {
    v = std::max(v, 0.0);
    total += v;
  }
  ComplexMatrix projected(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < d; ++k) {
        acc += eig.vectors(i, k) * (clipped[k] / total) *
               std::conj(eig.vectors(j, k));
      }
      projected(i, j) = acc;
    }
  }
  report.reconstructed = DensityMatrix(std::move(projected), rho.layout());
  report.fidelity_to_input = fidelity(rho, report.reconstructed);
  return report;
}

}  // namespace otcsim
