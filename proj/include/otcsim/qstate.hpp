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

#ifndef OTCSIM_QSTATE_HPP
#define OTCSIM_QSTATE_HPP

#include <cstdint>
#include <vector>

#include "otcsim/qmath.hpp"

namespace otcsim {

inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kProbabilitySumTol = 1e-9;

/// Normalized state vector over a subsystem layout.
class PureState {
 public:
  PureState(std::vector<Complex> amplitudes, SubsystemLayout layout);

  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  const SubsystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return amplitudes_.size(); }

  /// Basis vector |index> on the given layout.
  static PureState basis(std::size_t index, SubsystemLayout layout);

 private:
  std::vector<Complex> amplitudes_;
  SubsystemLayout layout_;
};

/// Validated density matrix: unit trace, Hermitian, positive semidefinite.
/// Eigenvalues in [-1e-9, 0) are clipped to zero and the state renormalized;
/// anything below that fails construction.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SubsystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return matrix_.rows(); }

  static DensityMatrix maximally_mixed(SubsystemLayout layout);

  /// Reduced state on the kept factors.
  DensityMatrix reduce(const std::vector<std::size_t>& keep) const;

 private:
  ComplexMatrix matrix_;
  SubsystemLayout layout_;
};

/// Hermitian observable with its eigen-decomposition cached at construction.
class Observable {
 public:
  explicit Observable(ComplexMatrix matrix,
                      double hermitian_tol = kHermitianTol);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
  std::size_t dim() const { return matrix_.rows(); }

  double min_eigenvalue() const { return eigenvalues_.front(); }
  double max_eigenvalue() const { return eigenvalues_.back(); }
  double eigen_range() const {
    return eigenvalues_.back() - eigenvalues_.front();
  }

  static Observable sigma_x();
  static Observable sigma_y();
  static Observable sigma_z();

 private:
  ComplexMatrix matrix_;
  std::vector<double> eigenvalues_;
  ComplexMatrix eigenvectors_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct EnsembleBranch {
  double probability;
  PureState state;
};

/// Probability-weighted list of pure states: the only legal input form for
/// nonlinear channels applied to proper (classically prepared) mixtures.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleBranch> branches);

  const std::vector<EnsembleBranch>& branches() const { return branches_; }

 private:
  std::vector<EnsembleBranch> branches_;
};

/// |psi><psi|.
DensityMatrix density_from_pure(const PureState& psi);

/// Tr[obs * rho].
double expectation(const DensityMatrix& rho, const Observable& obs);

/// Bloch components (Tr[sigma_k rho]) of a single-qubit state.
BlochVector bloch_of(const DensityMatrix& rho);

/// (I + n . sigma) / 2. Requires |n| <= 1 + 1e-9.
DensityMatrix state_of_bloch(const BlochVector& n);

/// Classical mixture sum p_k |phi_k><phi_k|.
DensityMatrix mix(const Ensemble& ensemble);

/// Tr[rho^2].
double purity(const DensityMatrix& rho);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2 in [0, 1].
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// i.i.d. Born samples of `obs` on `rho`: each outcome is the eigenvalue of
/// the eigenvector drawn with probability <v_i|rho|v_i>. Deterministic for a
/// given seed.
std::vector<double> measure_sample(const DensityMatrix& rho,
                                   const Observable& obs, std::size_t shots,
                                   std::uint64_t seed);

}  // namespace otcsim

#endif  // OTCSIM_QSTATE_HPP
