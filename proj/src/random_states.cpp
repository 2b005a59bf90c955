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

#include "otcsim/random_states.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace otcsim {

namespace {

Eigen::MatrixXcd ginibre(std::size_t dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          Complex(rng.gaussian(), rng.gaussian());
    }
  }
  return g;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()),
                    static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    }
  }
  return out;
}

}  // namespace

DensityMatrix random_density(SubsystemLayout layout, Rng& rng) {
  const std::size_t d = layout.total_dim();
  Eigen::MatrixXcd g = ginibre(d, rng);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace();
  // Exact Hermitization against rounding in the product.
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return DensityMatrix(from_eigen(rho), std::move(layout));
}

PureState random_pure(SubsystemLayout layout, Rng& rng) {
  const std::size_t d = layout.total_dim();
  std::vector<Complex> amps(d);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    amps[i] = Complex(rng.gaussian(), rng.gaussian());
    norm2 += std::norm(amps[i]);
  }
  double inv = 1.0 / std::sqrt(norm2);
  for (Complex& a : amps) a *= inv;
  return PureState(std::move(amps), std::move(layout));
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  Eigen::MatrixXcd g = ginibre(dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix phases so the distribution is Haar.
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dim); ++k) {
    Complex diag = r(k, k);
    double mag = std::abs(diag);
    Complex phase = mag > 0.0 ? diag / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return from_eigen(q);
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  Eigen::MatrixXcd g = ginibre(dim, rng);
  return from_eigen(((g + g.adjoint()) / 2.0).eval());
}

}  // namespace otcsim
