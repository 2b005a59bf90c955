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

#ifndef OTCSIM_QMATH_HPP
#define OTCSIM_QMATH_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace otcsim {

using Complex = std::complex<double>;

/// Largest composite side length a dense matrix may reach. Everything in
/// this project runs at desk scale; the cap turns an accidental exponential
/// blow-up into a clean error instead of an OOM kill.
inline constexpr std::size_t kDefaultMaxDim = 4096;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<Complex>& entries() const { return entries_; }
  std::vector<Complex>& entries() { return entries_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  bool is_hermitian(double tol = kHermitianTol) const;
  bool is_unitary(double tol = kUnitaryTol) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);

/// Largest |a[i][j] - b[i][j]|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Ordered list of subsystem dimensions describing a composite space.
/// Factor 0 is the most significant digit of a composite basis index, so
/// index(i0, i1, ..., ik) = ((i0 * d1 + i1) * d2 + i2) * ... .
class SubsystemLayout {
 public:
  explicit SubsystemLayout(std::vector<std::size_t> dims);

  static SubsystemLayout qubits(std::size_t n);
  static SubsystemLayout single(std::size_t d);

  std::size_t factor_count() const { return dims_.size(); }
  std::size_t dim(std::size_t factor) const { return dims_.at(factor); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const;

  bool operator==(const SubsystemLayout& other) const {
    return dims_ == other.dims_;
  }

 private:
  std::vector<std::size_t> dims_;
};

/// Kronecker product. Throws DimensionError if the result side length would
/// exceed max_dim.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             std::size_t max_dim = kDefaultMaxDim);

/// Trace out every factor not listed in `keep`; kept factors stay in their
/// original relative order. `keep` must be a nonempty set of valid factor
/// indices (duplicates rejected).
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const SubsystemLayout& layout,
                            const std::vector<std::size_t>& keep);

/// Relabel factors: output factor k is input factor perm[k]. Applying a
/// permutation and then its inverse restores the input.
ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 const SubsystemLayout& layout,
                                 const std::vector<std::size_t>& perm);

struct EigResult {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // eigenvectors as columns, matching order
};

/// Eigen-decomposition of a Hermitian matrix. Throws ValidationError when
/// the input fails the Hermiticity tolerance.
EigResult eig_hermitian(const ComplexMatrix& m,
                        double hermitian_tol = kHermitianTol);

/// U rho U^dagger. Throws ValidationError when u fails the unitarity
/// tolerance.
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& rho,
                           double unitary_tol = kUnitaryTol);

/// Sum of |eigenvalues| of a Hermitian matrix (Schatten 1-norm).
double trace_norm(const ComplexMatrix& hermitian);

}  // namespace otcsim

#endif  // OTCSIM_QMATH_HPP
