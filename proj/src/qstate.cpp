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

#include "otcsim/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otcsim/errors.hpp"
#include "otcsim/rng.hpp"

namespace otcsim {

namespace {

ComplexMatrix rebuild_from_spectrum(const EigResult& eig,
                                    const std::vector<double>& values) {
  const std::size_t n = values.size();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        acc += eig.vectors(i, k) * values[k] * std::conj(eig.vectors(j, k));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes, SubsystemLayout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
  if (amplitudes_.size() != layout_.total_dim()) {
    throw DimensionError("PureState: " + std::to_string(amplitudes_.size()) +
                         " amplitudes for layout dimension " +
                         std::to_string(layout_.total_dim()));
  }
  double norm2 = 0.0;
  for (const Complex& a : amplitudes_) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw ValidationError("PureState: squared norm " + std::to_string(norm2) +
                          " deviates from 1 beyond tolerance");
  }
}

PureState PureState::basis(std::size_t index, SubsystemLayout layout) {
  std::vector<Complex> amps(layout.total_dim(), Complex(0.0, 0.0));
  amps.at(index) = Complex(1.0, 0.0);
  return PureState(std::move(amps), std::move(layout));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  if (!matrix_.is_square() || matrix_.rows() != layout_.total_dim()) {
    throw DimensionError("DensityMatrix: matrix side " +
                         std::to_string(matrix_.rows()) +
                         " does not match layout dimension " +
                         std::to_string(layout_.total_dim()));
  }
  double tr = matrix_.trace().real();
  if (std::abs(matrix_.trace().imag()) > kTraceTol ||
      std::abs(tr - 1.0) > kTraceTol) {
    throw ValidationError("DensityMatrix: trace deviates from 1 beyond " +
                          std::to_string(kTraceTol));
  }
  if (!matrix_.is_hermitian(kHermitianTol)) {
    throw ValidationError("DensityMatrix: not Hermitian within tolerance");
  }
  EigResult eig = eig_hermitian(matrix_);
  double min_eig = eig.values.front();
  if (min_eig < -kPsdTol) {
    throw ValidationError("DensityMatrix: minimum eigenvalue " +
                          std::to_string(min_eig) + " below -" +
                          std::to_string(kPsdTol));
  }
  if (min_eig < 0.0) {
    // Numerical PSD drift: clip into the cone and renormalize.
    std::vector<double> clipped = eig.values;
    double total = 0.0;
    for (double& v : clipped) {
      v = std::max(v, 0.0);
      total += v;
    }
    for (double& v : clipped) v /= total;
    matrix_ = rebuild_from_spectrum(eig, clipped);
  }
}

DensityMatrix DensityMatrix::maximally_mixed(SubsystemLayout layout) {
  std::size_t d = layout.total_dim();
  ComplexMatrix m = ComplexMatrix::identity(d);
  m *= Complex(1.0 / static_cast<double>(d), 0.0);
  return DensityMatrix(std::move(m), std::move(layout));
}

DensityMatrix DensityMatrix::reduce(
    const std::vector<std::size_t>& keep) const {
  ComplexMatrix reduced = partial_trace(matrix_, layout_, keep);
  std::vector<std::size_t> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  std::vector<std::size_t> dims;
  for (std::size_t f : keep_sorted) dims.push_back(layout_.dim(f));
  return DensityMatrix(std::move(reduced), SubsystemLayout(std::move(dims)));
}

Observable::Observable(ComplexMatrix matrix, double hermitian_tol)
    : matrix_(std::move(matrix)) {
  EigResult eig = eig_hermitian(matrix_, hermitian_tol);
  eigenvalues_ = std::move(eig.values);
  eigenvectors_ = std::move(eig.vectors);
}

Observable Observable::sigma_x() {
  ComplexMatrix m(2, 2);
  m(0, 1) = Complex(1.0, 0.0);
  m(1, 0) = Complex(1.0, 0.0);
  return Observable(std::move(m));
}

Observable Observable::sigma_y() {
  ComplexMatrix m(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return Observable(std::move(m));
}

Observable Observable::sigma_z() {
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex(1.0, 0.0);
  m(1, 1) = Complex(-1.0, 0.0);
  return Observable(std::move(m));
}

Ensemble::Ensemble(std::vector<EnsembleBranch> branches)
    : branches_(std::move(branches)) {
  if (branches_.empty()) {
    throw ValidationError("Ensemble: no branches");
  }
  double total = 0.0;
  for (const EnsembleBranch& b : branches_) {
    if (b.probability < 0.0 || b.probability > 1.0) {
      throw ValidationError("Ensemble: branch probability " +
                            std::to_string(b.probability) + " outside [0, 1]");
    }
    if (!(b.state.layout() == branches_.front().state.layout())) {
      throw DimensionError("Ensemble: branches have differing layouts");
    }
    total += b.probability;
  }
  if (std::abs(total - 1.0) > kProbabilitySumTol) {
    throw ValidationError("Ensemble: probabilities sum to " +
                          std::to_string(total));
  }
}

DensityMatrix density_from_pure(const PureState& psi) {
  const std::size_t d = psi.dim();
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m(i, j) = psi.amplitudes()[i] * std::conj(psi.amplitudes()[j]);
    }
  }
  return DensityMatrix(std::move(m), psi.layout());
}

double expectation(const DensityMatrix& rho, const Observable& obs) {
  if (rho.dim() != obs.dim()) {
    throw DimensionError("expectation: state dimension " +
                         std::to_string(rho.dim()) +
                         " vs observable dimension " +
                         std::to_string(obs.dim()));
  }
  return (obs.matrix() * rho.matrix()).trace().real();
}

BlochVector bloch_of(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw DimensionError("bloch_of: expected a single qubit, got dimension " +
                         std::to_string(rho.dim()));
  }
  const ComplexMatrix& m = rho.matrix();
  BlochVector n;
  n.x = 2.0 * m(0, 1).real();
  n.y = -2.0 * m(0, 1).imag();
  n.z = (m(0, 0) - m(1, 1)).real();
  return n;
}

DensityMatrix state_of_bloch(const BlochVector& n) {
  double len2 = n.x * n.x + n.y * n.y + n.z * n.z;
  if (len2 > 1.0 + kPsdTol) {
    throw ValidationError("state_of_bloch: |n|^2 = " + std::to_string(len2) +
                          " outside the Bloch ball");
  }
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex((1.0 + n.z) / 2.0, 0.0);
  m(1, 1) = Complex((1.0 - n.z) / 2.0, 0.0);
  m(0, 1) = Complex(n.x / 2.0, -n.y / 2.0);
  m(1, 0) = Complex(n.x / 2.0, n.y / 2.0);
  return DensityMatrix(std::move(m), SubsystemLayout::qubits(1));
}

DensityMatrix mix(const Ensemble& ensemble) {
  const std::size_t d = ensemble.branches().front().state.dim();
  ComplexMatrix acc(d, d);
  for (const EnsembleBranch& b : ensemble.branches()) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        acc(i, j) += b.probability * b.state.amplitudes()[i] *
                     std::conj(b.state.amplitudes()[j]);
      }
    }
  }
  return DensityMatrix(std::move(acc),
                       ensemble.branches().front().state.layout());
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("fidelity: dimension mismatch");
  }
  EigResult ea = eig_hermitian(a.matrix());
  std::vector<double> sqrt_vals = ea.values;
  for (double& v : sqrt_vals) v = std::sqrt(std::max(v, 0.0));
  ComplexMatrix sqrt_a = rebuild_from_spectrum(ea, sqrt_vals);
  ComplexMatrix inner = sqrt_a * b.matrix() * sqrt_a;
  EigResult ei = eig_hermitian(inner, 1e-8);
  double sum = 0.0;
  for (double v : ei.values) sum += std::sqrt(std::max(v, 0.0));
  return std::min(sum * sum, 1.0);
}

std::vector<double> measure_sample(const DensityMatrix& rho,
                                   const Observable& obs, std::size_t shots,
                                   std::uint64_t seed) {
  if (rho.dim() != obs.dim()) {
    throw DimensionError("measure_sample: state dimension " +
                         std::to_string(rho.dim()) +
                         " vs observable dimension " +
                         std::to_string(obs.dim()));
  }
  if (shots < 1) {
    throw ValidationError("measure_sample: shots must be >= 1");
  }
  const std::size_t d = rho.dim();
  std::vector<double> probs(d, 0.0);
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
      throw ValidationError("measure_sample: Born probability " +
                            std::to_string(p) + " below tolerance");
    }
    probs[k] = std::max(p, 0.0);
  }
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;

  std::vector<double> cumulative(d);
  double running = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    running += probs[k];
    cumulative[k] = running;
  }
  cumulative.back() = 1.0;

  Rng rng(seed);
  std::vector<double> outcomes(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    double u = rng.uniform01();
    std::size_t k =
        std::upper_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin();
    if (k >= d) k = d - 1;
    outcomes[s] = obs.eigenvalues()[k];
  }
  return outcomes;
}

}  // namespace otcsim
