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

#ifndef OTCSIM_RANDOM_STATES_HPP
#define OTCSIM_RANDOM_STATES_HPP

#include "otcsim/qmath.hpp"
#include "otcsim/qstate.hpp"
#include "otcsim/rng.hpp"

namespace otcsim {

/// Full-rank random density matrix G G^dag / Tr[G G^dag] with Ginibre G.
DensityMatrix random_density(SubsystemLayout layout, Rng& rng);

/// Haar-random pure state.
PureState random_pure(SubsystemLayout layout, Rng& rng);

/// Haar-random unitary via QR of a Ginibre matrix with phase correction.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

/// Random Hermitian matrix with Gaussian entries.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);

}  // namespace otcsim

#endif  // OTCSIM_RANDOM_STATES_HPP
