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

#include "otcsim/qmath.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "otcsim/errors.hpp"

namespace otcsim {

namespace {

using EigenMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMatrix> as_eigen(const ComplexMatrix& m) {
  return Eigen::Map<const EigenMatrix>(
      m.entries().data(), static_cast<Eigen::Index>(m.rows()),
      static_cast<Eigen::Index>(m.cols()));
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw DimensionError(std::string(what) + ": matrix is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

// Splits a composite index into per-factor digits, factor 0 most significant.
void decompose_index(std::size_t index, const std::vector<std::size_t>& dims,
                     std::vector<std::size_t>& digits) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

std::size_t compose_index(const std::vector<std::size_t>& digits,
                          const std::vector<std::size_t>& dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    index = index * dims[k] + digits[k];
  }
  return index;
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(j, i) = std::conj((*this)(i, j));
    }
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] += other.entries_[i];
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] -= other.entries_[i];
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& e : entries_) e *= scale;
  return *this;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
        return false;
      }
    }
  }
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (!is_square()) return false;
  Eigen::MatrixXcd u = as_eigen(*this);
  Eigen::MatrixXcd gram = u * u.adjoint();
  gram -= Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return gram.cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("operator*: inner dimensions " +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  Eigen::Map<EigenMatrix> result(out.entries().data(),
                                 static_cast<Eigen::Index>(out.rows()),
                                 static_cast<Eigen::Index>(out.cols()));
  result = as_eigen(a) * as_eigen(b);
  return out;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
  m *= scale;
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw DimensionError("SubsystemLayout: empty dimension list");
  }
  for (std::size_t d : dims_) {
    if (d < 2) {
      throw DimensionError("SubsystemLayout: factor dimension " +
                           std::to_string(d) + " < 2");
    }
  }
}

SubsystemLayout SubsystemLayout::qubits(std::size_t n) {
  return SubsystemLayout(std::vector<std::size_t>(n, 2));
}

SubsystemLayout SubsystemLayout::single(std::size_t d) {
  return SubsystemLayout(std::vector<std::size_t>{d});
}

std::size_t SubsystemLayout::total_dim() const {
  std::size_t total = 1;
  for (std::size_t d : dims_) total *= d;
  return total;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             std::size_t max_dim) {
  std::size_t rows = a.rows() * b.rows();
  std::size_t cols = a.cols() * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw DimensionError("tensor_product: composite dimension " +
                         std::to_string(std::max(rows, cols)) +
                         " exceeds memory bound " + std::to_string(max_dim));
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      Complex scale = a(ia, ja);
      if (scale == Complex(0.0, 0.0)) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          out(ia * b.rows() + ib, ja * b.cols() + jb) = scale * b(ib, jb);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const SubsystemLayout& layout,
                            const std::vector<std::size_t>& keep) {
  require_square(m, "partial_trace");
  if (layout.total_dim() != m.rows()) {
    throw DimensionError("partial_trace: layout dimension " +
                         std::to_string(layout.total_dim()) +
                         " does not match matrix side " +
                         std::to_string(m.rows()));
  }
  if (keep.empty()) {
    // Tracing over every factor leaves the scalar trace.
    ComplexMatrix scalar(1, 1);
    scalar(0, 0) = m.trace();
    return scalar;
  }
  const std::size_t n = layout.factor_count();
  std::vector<bool> kept(n, false);
  for (std::size_t f : keep) {
    if (f >= n) {
      throw DimensionError("partial_trace: keep index " + std::to_string(f) +
                           " out of range for " + std::to_string(n) +
                           " factors");
    }
    if (kept[f]) {
      throw DimensionError("partial_trace: duplicate keep index " +
                           std::to_string(f));
    }
    kept[f] = true;
  }

  std::vector<std::size_t> keep_sorted;
  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < n; ++f) {
    (kept[f] ? keep_sorted : traced).push_back(f);
  }

  std::vector<std::size_t> keep_dims, traced_dims;
  for (std::size_t f : keep_sorted) keep_dims.push_back(layout.dim(f));
  for (std::size_t f : traced) traced_dims.push_back(layout.dim(f));

  std::size_t out_dim = 1;
  for (std::size_t d : keep_dims) out_dim *= d;
  std::size_t sum_dim = 1;
  for (std::size_t d : traced_dims) sum_dim *= d;

  ComplexMatrix out(out_dim, out_dim);
  std::vector<std::size_t> row_digits(n), col_digits(n);
  std::vector<std::size_t> kr(keep_dims.size()), kc(keep_dims.size()),
      td(traced_dims.size());
  const auto& dims = layout.dims();
  for (std::size_t r = 0; r < out_dim; ++r) {
    decompose_index(r, keep_dims, kr);
    for (std::size_t c = 0; c < out_dim; ++c) {
      decompose_index(c, keep_dims, kc);
      Complex acc(0.0, 0.0);
      for (std::size_t t = 0; t < sum_dim; ++t) {
        decompose_index(t, traced_dims, td);
        for (std::size_t k = 0; k < keep_sorted.size(); ++k) {
          row_digits[keep_sorted[k]] = kr[k];
          col_digits[keep_sorted[k]] = kc[k];
        }
        for (std::size_t k = 0; k < traced.size(); ++k) {
          row_digits[traced[k]] = td[k];
          col_digits[traced[k]] = td[k];
        }
        acc += m(compose_index(row_digits, dims),
                 compose_index(col_digits, dims));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 const SubsystemLayout& layout,
                                 const std::vector<std::size_t>& perm) {
  require_square(m, "permute_subsystems");
  const std::size_t n = layout.factor_count();
  if (layout.total_dim() != m.rows()) {
    throw DimensionError("permute_subsystems: layout dimension " +
                         std::to_string(layout.total_dim()) +
                         " does not match matrix side " +
                         std::to_string(m.rows()));
  }
  if (perm.size() != n) {
    throw DimensionError("permute_subsystems: permutation has " +
                         std::to_string(perm.size()) + " entries, expected " +
                         std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) {
      throw DimensionError("permute_subsystems: not a permutation");
    }
    seen[p] = true;
  }

  const auto& dims = layout.dims();
  std::vector<std::size_t> new_dims(n);
  for (std::size_t k = 0; k < n; ++k) new_dims[k] = dims[perm[k]];

  const std::size_t total = layout.total_dim();
  // Basis-index relabeling: output digit k is input digit perm[k].
  std::vector<std::size_t> index_map(total);
  std::vector<std::size_t> in_digits(n), out_digits(n);
  for (std::size_t i = 0; i < total; ++i) {
    decompose_index(i, dims, in_digits);
    for (std::size_t k = 0; k < n; ++k) out_digits[k] = in_digits[perm[k]];
    index_map[i] = compose_index(out_digits, new_dims);
  }

  ComplexMatrix out(total, total);
  for (std::size_t r = 0; r < total; ++r) {
    for (std::size_t c = 0; c < total; ++c) {
      out(index_map[r], index_map[c]) = m(r, c);
    }
  }
  return out;
}

EigResult eig_hermitian(const ComplexMatrix& m, double hermitian_tol) {
  require_square(m, "eig_hermitian");
  if (!m.is_hermitian(hermitian_tol)) {
    throw ValidationError("eig_hermitian: input is not Hermitian within " +
                          std::to_string(hermitian_tol));
  }
  Eigen::MatrixXcd a = as_eigen(m);
  // Symmetrize to strip the sub-tolerance asymmetry before solving.
  a = (a + a.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("eig_hermitian: eigensolver failed to converge");
  }
  EigResult result;
  const std::size_t n = m.rows();
  result.values.resize(n);
  result.vectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    result.values[j] = solver.eigenvalues()(static_cast<Eigen::Index>(j));
    for (std::size_t i = 0; i < n; ++i) {
      result.vectors(i, j) = solver.eigenvectors()(
          static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return result;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& rho,
                           double unitary_tol) {
  require_square(u, "conjugate_by");
  require_same_shape(u, rho, "conjugate_by");
  if (!u.is_unitary(unitary_tol)) {
    throw ValidationError("conjugate_by: matrix is not unitary within " +
                          std::to_string(unitary_tol));
  }
  ComplexMatrix out(rho.rows(), rho.cols());
  Eigen::Map<EigenMatrix> result(out.entries().data(),
                                 static_cast<Eigen::Index>(out.rows()),
                                 static_cast<Eigen::Index>(out.cols()));
  Eigen::MatrixXcd uu = as_eigen(u);
  result = uu * as_eigen(rho) * uu.adjoint();
  return out;
}

double trace_norm(const ComplexMatrix& hermitian) {
  EigResult eig = eig_hermitian(hermitian, 1e-8);
  double sum = 0.0;
  for (double v : eig.values) sum += std::abs(v);
  return sum;
}

}  // namespace otcsim
