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

#ifndef OTCSIM_PROTOCOLS_HPP
#define OTCSIM_PROTOCOLS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "otcsim/cnf.hpp"
#include "otcsim/qmath.hpp"
#include "otcsim/qstate.hpp"

namespace otcsim {

/// Smallest ancilla count N strictly exceeding
/// (O_max - O_min)^2 / (2 delta^2) * ln(2 / epsilon),
/// the Hoeffding budget for accuracy delta at failure probability epsilon.
std::size_t required_ancillas(const Observable& obs, double delta,
                              double epsilon);

/// Parameters of one decorrelated-ancilla measurement run.
struct MeasurementPlan {
  Observable observable;
  double delta = 0.0;
  double epsilon = 0.0;
  std::size_t ancillas = 0;
  std::uint64_t seed = 0;

  /// Plan with ancillas = required_ancillas(observable, delta, epsilon).
  static MeasurementPlan budgeted(Observable observable, double delta,
                                  double epsilon, std::uint64_t seed);
};

struct MeasurementResult {
  double estimate = 0.0;
  std::size_t samples = 0;   // N + 1
  std::size_t otc_uses = 0;  // one per ancilla
  std::vector<double> outcomes;  // retained only on request
};

/// Correlate N ancillas with rho in the observable eigenbasis, decorrelate
/// each through an OTC, measure all N+1 qudits, and return the sample mean.
/// After decorrelation the qudits are i.i.d. in the diagonal state, so the
/// sampler never materializes the joint system.
MeasurementResult otc_measure(const DensityMatrix& rho,
                              const MeasurementPlan& plan,
                              bool keep_outcomes = false);

/// Structural path for small N: explicitly builds the (N+1)-qudit joint
/// state, applies the chained controlled additions and the per-ancilla OTCs,
/// and returns the resulting joint state (which equals rho_diag^{(x)(N+1)}).
DensityMatrix otc_measure_joint(const DensityMatrix& rho,
                                const Observable& obs, std::size_t ancillas,
                                std::size_t max_dim = kDefaultMaxDim);

/// Nonlinear gate rho(n_z) -> rho(n_z^2), realized as controlled addition,
/// OTC decorrelation of the ancilla, controlled addition back, discard.
DensityMatrix s_gate(const DensityMatrix& rho);

enum class SatAnswer { satisfiable, unsatisfiable };
enum class SatMode { circuit, analytic };

struct SatDecision {
  SatAnswer answer = SatAnswer::unsatisfiable;
  std::size_t p = 0;  // squaring rounds
  std::size_t q = 0;  // measurement repetitions
  double predicted_p_fail = 0.0;
  SatMode mode = SatMode::analytic;
};

/// Default squaring-round count ceil(log2(n+1)) + 2.
std::size_t sat_default_rounds(std::size_t num_vars);
inline constexpr std::size_t kSatDefaultRepetitions = 20;

/// Target qubit state (1/2)[1 + (1 - s/2^{n-1}) sigma_z] produced by the
/// oracle stage: simulated from the uniform-superposition circuit in
/// `circuit` mode (n <= 12), or assembled from the exhaustive satisfying
/// count in `analytic` mode (n <= 24).
DensityMatrix sat_target_state(const CnfFormula& f, SatMode mode);

/// Full decision protocol: oracle stage, p nonlinear squaring rounds, q
/// seeded sigma_z measurements; answers satisfiable iff any outcome is -1.
/// A formula whose all-zeros assignment already satisfies it is answered
/// immediately, which covers the s = 2^n corner the squaring map cannot
/// distinguish from s = 0.
SatDecision sat_decide(const CnfFormula& f, std::size_t p, std::size_t q,
                       SatMode mode, std::uint64_t seed);

/// Inverts Eq.-style depolarization: recovers Tr[obs rho] from a raw
/// expectation estimate taken on s rho + (1-s) I/d.
double unbias_estimate(double raw, const Observable& obs, double s,
                       std::size_t d);

/// Traceless Hermitian generator basis normalized to Tr[G^2] = 2: the Pauli
/// matrices for d = 2, generalized Gell-Mann matrices above. Ordered
/// symmetric, antisymmetric, then diagonal.
std::vector<Observable> informationally_complete_set(std::size_t d);
std::vector<std::string> informationally_complete_labels(std::size_t d);

struct ObservableEstimate {
  std::string id;
  double raw = 0.0;       // sample mean on the noisy clone
  double unbiased = 0.0;  // after shrinking-factor inversion
};

struct CloneReport {
  DensityMatrix reconstructed;
  double fidelity_to_input = 0.0;
  std::vector<ObservableEstimate> per_observable;
  std::size_t total_otc_uses = 0;
};

/// Full cloning pipeline: universal cloner marginals, one decorrelated
/// measurement per informationally complete observable (budgeted on the
/// shrunken accuracy s*delta with epsilon split across observables),
/// unbiasing, linear inversion, and PSD projection.
CloneReport otc_clone(const DensityMatrix& rho, double delta, double epsilon,
                      std::uint64_t seed);

}  // namespace otcsim

#endif  // OTCSIM_PROTOCOLS_HPP
