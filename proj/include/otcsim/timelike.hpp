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

#ifndef OTCSIM_TIMELIKE_HPP
#define OTCSIM_TIMELIKE_HPP

#include <cstddef>
#include <vector>

#include "otcsim/qmath.hpp"
#include "otcsim/qstate.hpp"

namespace otcsim {

/// Interaction region of a closed timelike curve: a unitary on the joint
/// layout [chronology-respecting factors + CTC slots], with ctc_indices
/// marking which joint factors hold the time-traveling system.
class CtcSpec {
 public:
  CtcSpec(ComplexMatrix interaction, SubsystemLayout joint_layout,
          std::vector<std::size_t> ctc_indices);

  const ComplexMatrix& interaction() const { return interaction_; }
  const SubsystemLayout& joint_layout() const { return joint_layout_; }
  const std::vector<std::size_t>& ctc_indices() const { return ctc_indices_; }
  const std::vector<std::size_t>& chronology_indices() const {
    return chronology_indices_;
  }

  SubsystemLayout ctc_layout() const;
  SubsystemLayout chronology_layout() const;

 private:
  ComplexMatrix interaction_;
  SubsystemLayout joint_layout_;
  std::vector<std::size_t> ctc_indices_;
  std::vector<std::size_t> chronology_indices_;
};

enum class FixedPointMethod { power_iteration, cesaro_average, spectral_exact };

/// Which solver to use. `automatic` runs power iteration, switches to Cesaro
/// averaging on oscillation, and falls back to the spectral solve when the
/// CTC side is small enough. `iterative` forbids the spectral fallback.
enum class SolveStrategy { automatic, iterative, spectral };

struct FixedPointReport {
  DensityMatrix solution;
  double residual = 0.0;
  std::size_t iterations = 0;
  FixedPointMethod method = FixedPointMethod::power_iteration;
};

inline constexpr double kFixedPointTol = 1e-10;
inline constexpr std::size_t kFixedPointMaxIter = 100000;
inline constexpr std::size_t kSpectralMaxCtcDim = 32;

/// Solves the self-consistency condition: returns sigma with
/// || Tr_{!=A}[U(input (x) sigma)U^dag] - sigma ||_1 <= tol.
/// `input` is the full chronology-respecting state (a purification when the
/// prepared state is a proper mixture).
FixedPointReport deutsch_fixed_point(
    const DensityMatrix& input, const CtcSpec& spec,
    double tol = kFixedPointTol, std::size_t max_iter = kFixedPointMaxIter,
    SolveStrategy strategy = SolveStrategy::automatic);

/// Output of the full process, Tr_A[U(input (x) sigma)U^dag], on the
/// chronology-respecting factors. Re-validates the fixed point against
/// (input, spec) and throws ConsistencyError when it is stale.
DensityMatrix ctc_evolve(const DensityMatrix& input, const CtcSpec& spec,
                         const FixedPointReport& fp,
                         double recheck_tol = 1e-6);

/// Number of eigenvalue-1 directions of the map sigma -> Tr_{!=A}[...],
/// i.e. the linear dimension of its fixed-point space.
std::size_t fixed_space_dimension(const DensityMatrix& input,
                                  const CtcSpec& spec, double tol = 1e-9);

/// Universal decorrelator: factors in `traveler` lose every correlation with
/// the rest while all local marginals survive. A mixed input is read as
/// entanglement-induced mixedness (purification semantics); send proper
/// mixtures through otc_apply_ensemble instead.
DensityMatrix otc_apply(const DensityMatrix& input,
                        const std::vector<std::size_t>& traveler);

/// Branchwise decorrelation then classical mixing; on a proper mixture of
/// product-form branches the OTC has no effect.
DensityMatrix otc_apply_ensemble(const Ensemble& input,
                                 const std::vector<std::size_t>& traveler);

}  // namespace otcsim

#endif  // OTCSIM_TIMELIKE_HPP
