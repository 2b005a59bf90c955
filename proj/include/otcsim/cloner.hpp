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

#ifndef OTCSIM_CLONER_HPP
#define OTCSIM_CLONER_HPP

#include <vector>

#include "otcsim/qmath.hpp"
#include "otcsim/qstate.hpp"

namespace otcsim {

enum class CloneBackend { exact_symmetric, marginal_model };

/// Request to clone a single qudit M times.
struct CloneJob {
  DensityMatrix input;
  std::size_t copies = 1;
  CloneBackend backend = CloneBackend::marginal_model;
};

/// Shrinking factor of the optimal universal 1 -> M cloner on qudits of
/// dimension d: each clone equals s rho + (1-s) I/d with
/// s = (M + d) / (M (1 + d)). Validated against the exact symmetric-subspace
/// backend wherever that backend is feasible.
double shrinking_factor(std::size_t d, std::size_t copies);

/// Projector onto the symmetric subspace of M d-dimensional factors,
/// averaged over all M! permutation operators. Results are memoized.
ComplexMatrix symmetric_projector(std::size_t d, std::size_t copies,
                                  std::size_t max_dim = kDefaultMaxDim);

/// Exact universal cloner: P_sym (rho (x) I^{(M-1)}) P_sym, normalized.
/// Feasible while d^M stays within the memory bound and M <= 6.
DensityMatrix clone_exact(const CloneJob& job,
                          std::size_t max_dim = kDefaultMaxDim);

/// Post-decorrelation clone marginals: M identical copies of
/// s rho + (1-s) I/d. Models the exact cloner followed by one OTC per clone.
std::vector<DensityMatrix> clone_marginals(const CloneJob& job);

}  // namespace otcsim

#endif  // OTCSIM_CLONER_HPP
