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

#include "otcsim/timelike.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "otcsim/errors.hpp"

namespace otcsim {

namespace {

// The self-consistency map sigma -> Tr_{!=A}[U(input (x) sigma)U^dag],
// evaluated on arbitrary (not necessarily positive) sigma so the same code
// serves iteration and superoperator assembly.
struct CtcMap {
  const ComplexMatrix& input;
  const CtcSpec& spec;
  std::vector<std::size_t> assemble_perm;  // joint factor k <- assembled slot

  CtcMap(const ComplexMatrix& input_matrix, const CtcSpec& s)
      : input(input_matrix), spec(s) {
    const std::size_t n = spec.joint_layout().factor_count();
    const auto& chron = spec.chronology_indices();
    const auto& ctc = spec.ctc_indices();
    assemble_perm.resize(n);
    for (std::size_t m = 0; m < chron.size(); ++m) {
      assemble_perm[chron[m]] = m;
    }
    for (std::size_t m = 0; m < ctc.size(); ++m) {
      assemble_perm[ctc[m]] = chron.size() + m;
    }
  }

  // Joint state U(input (x) sigma)U^dag on the joint layout.
  ComplexMatrix evolve_joint(const ComplexMatrix& sigma) const {
    ComplexMatrix assembled =
        tensor_product(input, sigma, spec.joint_layout().total_dim());
    // The tensor is [chronology..., ctc...]; relabel into joint positions.
    std::vector<std::size_t> assembled_dims;
    for (std::size_t f : spec.chronology_indices()) {
      assembled_dims.push_back(spec.joint_layout().dim(f));
    }
    for (std::size_t f : spec.ctc_indices()) {
      assembled_dims.push_back(spec.joint_layout().dim(f));
    }
    ComplexMatrix joint = permute_subsystems(
        assembled, SubsystemLayout(assembled_dims), assemble_perm);
    return conjugate_by(spec.interaction(), joint);
  }

  ComplexMatrix apply(const ComplexMatrix& sigma) const {
    return partial_trace(evolve_joint(sigma), spec.joint_layout(),
                         spec.ctc_indices());
  }

  ComplexMatrix output(const ComplexMatrix& sigma) const {
    return partial_trace(evolve_joint(sigma), spec.joint_layout(),
                         spec.chronology_indices());
  }
};

ComplexMatrix maximally_mixed_matrix(std::size_t d) {
  ComplexMatrix m = ComplexMatrix::identity(d);
  m *= Complex(1.0 / static_cast<double>(d), 0.0);
  return m;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = (m(i, j) + std::conj(m(j, i))) / 2.0;
    }
  }
  return out;
}

// Clip negative eigenvalues and renormalize to unit trace.
ComplexMatrix project_to_state(const ComplexMatrix& m) {
  EigResult eig = eig_hermitian(hermitize(m), 1e-6);
  const std::size_t d = m.rows();
  std::vector<double> vals = eig.values;
  double total = 0.0;
  for (double& v : vals) {
    v = std::max(v, 0.0);
    total += v;
  }
  ComplexMatrix out(d, d);
  if (total <= 0.0) return maximally_mixed_matrix(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < d; ++k) {
        acc += eig.vectors(i, k) * (vals[k] / total) *
               std::conj(eig.vectors(j, k));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

double self_consistency_residual(const CtcMap& map, const ComplexMatrix& s) {
  return trace_norm(map.apply(s) - s);
}

struct IterationOutcome {
  ComplexMatrix solution;
  double residual;
  std::size_t iterations;
  FixedPointMethod method;
  bool converged;
};

// Power iteration from the maximally mixed state; switches to Cesaro
// averaging of the orbit when the residual stops improving.
IterationOutcome iterate_fixed_point(const CtcMap& map, std::size_t ctc_dim,
                                     double tol, std::size_t max_iter) {
  constexpr std::size_t kStallWindow = 100;
  ComplexMatrix current = maximally_mixed_matrix(ctc_dim);
  ComplexMatrix cesaro_sum(ctc_dim, ctc_dim);
  bool averaging = false;
  std::size_t averaged_terms = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  double window_best = best_residual;
  std::size_t window_start = 0;
  ComplexMatrix best = current;
  FixedPointMethod best_method = FixedPointMethod::power_iteration;

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    ComplexMatrix next = map.apply(current);
    double residual = trace_norm(next - current);

    ComplexMatrix candidate = next;
    FixedPointMethod method = FixedPointMethod::power_iteration;
    if (averaging) {
      cesaro_sum += next;
      ++averaged_terms;
      candidate = Complex(1.0 / static_cast<double>(averaged_terms), 0.0) *
                  cesaro_sum;
      residual = self_consistency_residual(map, candidate);
      method = FixedPointMethod::cesaro_average;
    }

    if (residual < best_residual) {
      best_residual = residual;
      best = candidate;
      best_method = method;
    }
    if (residual <= tol) {
      // Confirm on the candidate itself before reporting success.
      double confirmed = self_consistency_residual(map, candidate);
      if (confirmed <= tol) {
        return {candidate, confirmed, iter, method, true};
      }
    }

    if (!averaging) {
      if (residual < window_best) {
        window_best = residual;
        window_start = iter;
      } else if (iter - window_start >= kStallWindow) {
        averaging = true;
        cesaro_sum = next;
        averaged_terms = 1;
      }
    }
    current = next;
  }
  return {best, best_residual, max_iter, best_method, false};
}

// Column-stacked superoperator of the self-consistency map on the CTC side.
Eigen::MatrixXcd build_superoperator(const CtcMap& map, std::size_t d) {
  const std::size_t dd = d * d;
  Eigen::MatrixXcd t(dd, dd);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      ComplexMatrix basis(d, d);
      basis(k, l) = Complex(1.0, 0.0);
      ComplexMatrix image = map.apply(basis);
      std::size_t col = k * d + l;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          t(static_cast<Eigen::Index>(i * d + j),
            static_cast<Eigen::Index>(col)) = image(i, j);
        }
      }
    }
  }
  return t;
}

ComplexMatrix unvec(const Eigen::VectorXcd& v, std::size_t d) {
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m(i, j) = v(static_cast<Eigen::Index>(i * d + j));
    }
  }
  return m;
}

Eigen::VectorXcd vec(const ComplexMatrix& m) {
  const std::size_t d = m.rows();
  Eigen::VectorXcd v(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      v(static_cast<Eigen::Index>(i * d + j)) = m(i, j);
    }
  }
  return v;
}

double hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    acc += (std::conj(a.entries()[i]) * b.entries()[i]).real();
  }
  return acc;
}

// Hermitian, Hilbert-Schmidt-orthonormal basis of the eigenvalue-1 subspace.
std::vector<ComplexMatrix> hermitian_fixed_basis(
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd>& solver, std::size_t d,
    double eig_tol) {
  std::vector<ComplexMatrix> basis;
  auto try_add = [&](ComplexMatrix candidate) {
    for (const ComplexMatrix& h : basis) {
      double overlap = hs_inner(h, candidate);
      candidate -= Complex(overlap, 0.0) * h;
    }
    double norm = std::sqrt(hs_inner(candidate, candidate));
    if (norm > 1e-8) {
      candidate *= Complex(1.0 / norm, 0.0);
      basis.push_back(std::move(candidate));
    }
  };
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (std::abs(solver.eigenvalues()(k) - Complex(1.0, 0.0)) > eig_tol) {
      continue;
    }
    ComplexMatrix x = unvec(solver.eigenvectors().col(k), d);
    ComplexMatrix xd = x.adjoint();
    ComplexMatrix sym = x;
    sym += xd;
    sym *= Complex(0.5, 0.0);
    ComplexMatrix asym = x;
    asym -= xd;
    asym *= Complex(0.0, -0.5);
    try_add(sym);
    try_add(asym);
  }
  return basis;
}

// Maximizes von Neumann entropy over the states of span{basis} that share
// the support of `start`, which must itself be a maximal-support fixed
// point. Projected gradient ascent on the expansion coefficients.
ComplexMatrix max_entropy_in_span(const std::vector<ComplexMatrix>& basis_in,
                                  const ComplexMatrix& start) {
  const std::size_t d = start.rows();

  // Compress onto the support of `start`; every fixed state lives there.
  EigResult seig = eig_hermitian(hermitize(start), 1e-6);
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < seig.values.size(); ++k) {
    if (seig.values[k] > 1e-10) support.push_back(k);
  }
  const std::size_t r = support.size();
  if (r == 0) return start;

  auto compress = [&](const ComplexMatrix& m) {
    ComplexMatrix out(r, r);
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) {
        Complex acc(0.0, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = 0; j < d; ++j) {
            acc += std::conj(seig.vectors(i, support[a])) * m(i, j) *
                   seig.vectors(j, support[b]);
          }
        }
        out(a, b) = acc;
      }
    }
    return out;
  };

  std::vector<ComplexMatrix> basis;
  for (const ComplexMatrix& h : basis_in) {
    ComplexMatrix c = compress(h);
    for (const ComplexMatrix& prev : basis) {
      double overlap = hs_inner(prev, c);
      c -= Complex(overlap, 0.0) * prev;
    }
    double norm = std::sqrt(hs_inner(c, c));
    if (norm > 1e-8) {
      c *= Complex(1.0 / norm, 0.0);
      basis.push_back(std::move(c));
    }
  }
  if (basis.empty()) return start;

  ComplexMatrix sigma = compress(start);
  auto entropy = [&](const EigResult& eig) {
    double s = 0.0;
    for (double v : eig.values) {
      if (v > 1e-300) s -= v * std::log(v);
    }
    return s;
  };

  const std::size_t m = basis.size();
  std::vector<double> trace_dir(m);
  for (std::size_t k = 0; k < m; ++k) {
    trace_dir[k] = basis[k].trace().real();
  }
  double trace_dir_norm2 = 0.0;
  for (double t : trace_dir) trace_dir_norm2 += t * t;

  for (std::size_t iter = 0; iter < 2000; ++iter) {
    EigResult eig = eig_hermitian(hermitize(sigma), 1e-6);
    if (eig.values.front() <= 0.0) {
      // Walked onto the boundary; nudge back inside.
      std::vector<double> vals = eig.values;
      double total = 0.0;
      for (double& v : vals) {
        v = std::max(v, 1e-14);
        total += v;
      }
      ComplexMatrix fixed(r, r);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
          Complex acc(0.0, 0.0);
          for (std::size_t k = 0; k < r; ++k) {
            acc += eig.vectors(i, k) * (vals[k] / total) *
                   std::conj(eig.vectors(j, k));
          }
          fixed(i, j) = acc;
        }
      }
      sigma = fixed;
      eig = eig_hermitian(sigma, 1e-6);
    }
    double current_entropy = entropy(eig);

    // log(sigma) in the same eigenbasis.
    ComplexMatrix log_sigma(r, r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < r; ++k) {
          acc += eig.vectors(i, k) * std::log(std::max(eig.values[k], 1e-300)) *
                 std::conj(eig.vectors(j, k));
        }
        log_sigma(i, j) = acc;
      }
    }

    std::vector<double> grad(m);
    for (std::size_t k = 0; k < m; ++k) {
      grad[k] = -hs_inner(basis[k], log_sigma) - trace_dir[k];
    }
    // Project out the trace-changing direction.
    if (trace_dir_norm2 > 0.0) {
      double along = 0.0;
      for (std::size_t k = 0; k < m; ++k) along += grad[k] * trace_dir[k];
      along /= trace_dir_norm2;
      for (std::size_t k = 0; k < m; ++k) grad[k] -= along * trace_dir[k];
    }
    double grad_norm = 0.0;
    for (double g : grad) grad_norm += g * g;
    grad_norm = std::sqrt(grad_norm);
    if (grad_norm <= 1e-11) break;

    double step = 0.5;
    bool moved = false;
    while (step > 1e-14) {
      ComplexMatrix candidate = sigma;
      for (std::size_t k = 0; k < m; ++k) {
        candidate += Complex(step * grad[k], 0.0) * basis[k];
      }
      EigResult ceig = eig_hermitian(hermitize(candidate), 1e-6);
      if (ceig.values.front() > 0.0 && entropy(ceig) > current_entropy) {
        sigma = candidate;
        moved = true;
        break;
      }
      step /= 2.0;
    }
    if (!moved) break;
  }

  // Decompress back to the full space.
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = 0; b < r; ++b) {
          acc += seig.vectors(i, support[a]) * sigma(a, b) *
                 std::conj(seig.vectors(j, support[b]));
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

struct SpectralOutcome {
  ComplexMatrix solution;
  double residual;
  std::size_t fixed_dimension;
};

SpectralOutcome spectral_fixed_point(const CtcMap& map, std::size_t d) {
  Eigen::MatrixXcd t = build_superoperator(map, d);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(t);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("spectral fixed-point solve failed", 1.0);
  }
  constexpr double kEigTol = 1e-9;
  std::size_t fixed_dim = 0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (std::abs(solver.eigenvalues()(k) - Complex(1.0, 0.0)) <= kEigTol) {
      ++fixed_dim;
    }
  }
  if (fixed_dim == 0) {
    throw ConvergenceError(
        "spectral solve found no eigenvalue-1 direction; the map has no "
        "fixed point within tolerance",
        1.0);
  }

  // Spectral projection of the maximally mixed state onto the fixed space:
  // a maximal-support fixed point (the Cesaro limit of the orbit of I/d).
  ComplexMatrix start(0, 0);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(solver.eigenvectors());
  Eigen::VectorXcd coords = lu.solve(vec(maximally_mixed_matrix(d)));
  double solve_error =
      (solver.eigenvectors() * coords - vec(maximally_mixed_matrix(d)))
          .norm();
  if (solve_error < 1e-8) {
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
      if (std::abs(solver.eigenvalues()(k) - Complex(1.0, 0.0)) > kEigTol) {
        coords(k) = Complex(0.0, 0.0);
      }
    }
    start = unvec(solver.eigenvectors() * coords, d);
    start = project_to_state(start);
  } else {
    // Defective eigenvector matrix away from the peripheral spectrum; fall
    // back to a long Cesaro average, which converges to the same projection.
    IterationOutcome fallback = iterate_fixed_point(map, d, 1e-12, 20000);
    start = fallback.solution;
  }

  ComplexMatrix solution = start;
  if (fixed_dim > 1) {
    std::vector<ComplexMatrix> basis =
        hermitian_fixed_basis(solver, d, kEigTol);
    solution = project_to_state(max_entropy_in_span(basis, start));
  }
  double residual = self_consistency_residual(map, solution);
  return {solution, residual, fixed_dim};
}

void check_input_compatible(const DensityMatrix& input, const CtcSpec& spec) {
  const auto& chron = spec.chronology_indices();
  if (input.layout().factor_count() != chron.size()) {
    throw DimensionError(
        "deutsch_fixed_point: input has " +
        std::to_string(input.layout().factor_count()) +
        " factors but the spec leaves " + std::to_string(chron.size()) +
        " chronology-respecting slots");
  }
  for (std::size_t m = 0; m < chron.size(); ++m) {
    if (input.layout().dim(m) != spec.joint_layout().dim(chron[m])) {
      throw DimensionError(
          "deutsch_fixed_point: input factor " + std::to_string(m) +
          " has dimension " + std::to_string(input.layout().dim(m)) +
          ", spec expects " +
          std::to_string(spec.joint_layout().dim(chron[m])));
    }
  }
}

}  // namespace

CtcSpec::CtcSpec(ComplexMatrix interaction, SubsystemLayout joint_layout,
                 std::vector<std::size_t> ctc_indices)
    : interaction_(std::move(interaction)),
      joint_layout_(std::move(joint_layout)),
      ctc_indices_(std::move(ctc_indices)) {
  if (!interaction_.is_square() ||
      interaction_.rows() != joint_layout_.total_dim()) {
    throw DimensionError("CtcSpec: interaction side " +
                         std::to_string(interaction_.rows()) +
                         " does not match joint layout dimension " +
                         std::to_string(joint_layout_.total_dim()));
  }
  if (!interaction_.is_unitary(kUnitaryTol)) {
    throw ValidationError("CtcSpec: interaction is not unitary within " +
                          std::to_string(kUnitaryTol));
  }
  if (ctc_indices_.empty()) {
    throw DimensionError("CtcSpec: ctc_indices is empty");
  }
  std::sort(ctc_indices_.begin(), ctc_indices_.end());
  std::vector<bool> is_ctc(joint_layout_.factor_count(), false);
  for (std::size_t f : ctc_indices_) {
    if (f >= joint_layout_.factor_count()) {
      throw DimensionError("CtcSpec: ctc index " + std::to_string(f) +
                           " out of range");
    }
    if (is_ctc[f]) {
      throw DimensionError("CtcSpec: duplicate ctc index " +
                           std::to_string(f));
    }
    is_ctc[f] = true;
  }
  if (ctc_indices_.size() == joint_layout_.factor_count()) {
    throw DimensionError("CtcSpec: no chronology-respecting factors remain");
  }
  for (std::size_t f = 0; f < joint_layout_.factor_count(); ++f) {
    if (!is_ctc[f]) chronology_indices_.push_back(f);
  }
}

SubsystemLayout CtcSpec::ctc_layout() const {
  std::vector<std::size_t> dims;
  for (std::size_t f : ctc_indices_) dims.push_back(joint_layout_.dim(f));
  return SubsystemLayout(dims);
}

SubsystemLayout CtcSpec::chronology_layout() const {
  std::vector<std::size_t> dims;
  for (std::size_t f : chronology_indices_) {
    dims.push_back(joint_layout_.dim(f));
  }
  return SubsystemLayout(dims);
}

FixedPointReport deutsch_fixed_point(const DensityMatrix& input,
                                     const CtcSpec& spec, double tol,
                                     std::size_t max_iter,
                                     SolveStrategy strategy) {
  check_input_compatible(input, spec);
  CtcMap map(input.matrix(), spec);
  const std::size_t ctc_dim = spec.ctc_layout().total_dim();

  if (strategy == SolveStrategy::spectral) {
    if (ctc_dim > kSpectralMaxCtcDim) {
      throw DimensionError("deutsch_fixed_point: spectral solve capped at "
                           "CTC dimension " +
                           std::to_string(kSpectralMaxCtcDim));
    }
    SpectralOutcome outcome = spectral_fixed_point(map, ctc_dim);
    return {DensityMatrix(outcome.solution, spec.ctc_layout()),
            outcome.residual, 0, FixedPointMethod::spectral_exact};
  }

  IterationOutcome outcome = iterate_fixed_point(map, ctc_dim, tol, max_iter);
  if (outcome.converged) {
    return {DensityMatrix(hermitize(outcome.solution), spec.ctc_layout()),
            outcome.residual, outcome.iterations, outcome.method};
  }
  if (strategy == SolveStrategy::automatic && ctc_dim <= kSpectralMaxCtcDim) {
    SpectralOutcome spectral = spectral_fixed_point(map, ctc_dim);
    if (spectral.residual <= tol) {
      return {DensityMatrix(spectral.solution, spec.ctc_layout()),
              spectral.residual, outcome.iterations,
              FixedPointMethod::spectral_exact};
    }
  }
  throw ConvergenceError(
      "deutsch_fixed_point: no fixed point within tolerance " +
          std::to_string(tol) + " after " + std::to_string(max_iter) +
          " iterations (best residual " + std::to_string(outcome.residual) +
          ")",
      outcome.residual);
}

DensityMatrix ctc_evolve(const DensityMatrix& input, const CtcSpec& spec,
                         const FixedPointReport& fp, double recheck_tol) {
  check_input_compatible(input, spec);
  if (fp.solution.dim() != spec.ctc_layout().total_dim()) {
    throw DimensionError("ctc_evolve: fixed point dimension " +
                         std::to_string(fp.solution.dim()) +
                         " does not match the CTC side");
  }
  CtcMap map(input.matrix(), spec);
  double residual = self_consistency_residual(map, fp.solution.matrix());
  if (residual > recheck_tol) {
    throw ConsistencyError(
        "ctc_evolve: fixed point fails re-validation for this input "
        "(residual " +
        std::to_string(residual) + ")");
  }
  return DensityMatrix(map.output(fp.solution.matrix()),
                       spec.chronology_layout());
}

std::size_t fixed_space_dimension(const DensityMatrix& input,
                                  const CtcSpec& spec, double tol) {
  check_input_compatible(input, spec);
  const std::size_t ctc_dim = spec.ctc_layout().total_dim();
  if (ctc_dim > kSpectralMaxCtcDim) {
    throw DimensionError("fixed_space_dimension: capped at CTC dimension " +
                         std::to_string(kSpectralMaxCtcDim));
  }
  CtcMap map(input.matrix(), spec);
  Eigen::MatrixXcd t = build_superoperator(map, ctc_dim);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(t, false);
  std::size_t count = 0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (std::abs(solver.eigenvalues()(k) - Complex(1.0, 0.0)) <= tol) {
      ++count;
    }
  }
  return count;
}

DensityMatrix otc_apply(const DensityMatrix& input,
                        const std::vector<std::size_t>& traveler) {
  const std::size_t n = input.layout().factor_count();
  if (traveler.empty()) {
    throw DimensionError("otc_apply: traveler set is empty");
  }
  std::vector<bool> travels(n, false);
  for (std::size_t f : traveler) {
    if (f >= n) {
      throw DimensionError("otc_apply: traveler index " + std::to_string(f) +
                           " out of range");
    }
    if (travels[f]) {
      throw DimensionError("otc_apply: duplicate traveler index " +
                           std::to_string(f));
    }
    travels[f] = true;
  }

  std::vector<std::size_t> traveler_sorted, rest;
  for (std::size_t f = 0; f < n; ++f) {
    (travels[f] ? traveler_sorted : rest).push_back(f);
  }
  if (rest.empty()) {
    return input;  // the whole state went through; nothing left to decouple
  }

  ComplexMatrix marg_traveler =
      partial_trace(input.matrix(), input.layout(), traveler_sorted);
  ComplexMatrix marg_rest =
      partial_trace(input.matrix(), input.layout(), rest);
  ComplexMatrix assembled =
      tensor_product(marg_traveler, marg_rest, input.dim());

  std::vector<std::size_t> assembled_dims;
  for (std::size_t f : traveler_sorted) {
    assembled_dims.push_back(input.layout().dim(f));
  }
  for (std::size_t f : rest) assembled_dims.push_back(input.layout().dim(f));

  // Restore original factor order: original factor p sits at its position
  // within [traveler..., rest...].
  std::vector<std::size_t> perm(n);
  for (std::size_t m = 0; m < traveler_sorted.size(); ++m) {
    perm[traveler_sorted[m]] = m;
  }
  for (std::size_t m = 0; m < rest.size(); ++m) {
    perm[rest[m]] = traveler_sorted.size() + m;
  }
  ComplexMatrix restored = permute_subsystems(
      assembled, SubsystemLayout(assembled_dims), perm);
  return DensityMatrix(std::move(restored), input.layout());
}

DensityMatrix otc_apply_ensemble(const Ensemble& input,
                                 const std::vector<std::size_t>& traveler) {
  const std::size_t d = input.branches().front().state.dim();
  ComplexMatrix acc(d, d);
  for (const EnsembleBranch& branch : input.branches()) {
    DensityMatrix branch_out =
        otc_apply(density_from_pure(branch.state), traveler);
    ComplexMatrix weighted = branch_out.matrix();
    weighted *= Complex(branch.probability, 0.0);
    acc += weighted;
  }
  return DensityMatrix(std::move(acc),
                       input.branches().front().state.layout());
}

}  // namespace otcsim
