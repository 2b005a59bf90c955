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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "otcsim/errors.hpp"
#include "otcsim/gates.hpp"
#include "otcsim/qmath.hpp"
#include "otcsim/random_states.hpp"

using namespace otcsim;

namespace {

ComplexMatrix basis_projector(std::size_t dim, std::size_t index) {
  ComplexMatrix m(dim, dim);
  m(index, index) = Complex(1.0, 0.0);
  return m;
}

// Independent partial-trace oracle: plain summation over basis digits,
// written without any of the production index machinery.
ComplexMatrix slow_trace_out_last(const ComplexMatrix& m, std::size_t d_keep,
                                  std::size_t d_out) {
  ComplexMatrix out(d_keep, d_keep);
  for (std::size_t i = 0; i < d_keep; ++i) {
    for (std::size_t j = 0; j < d_keep; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t t = 0; t < d_out; ++t) {
        acc += m(i * d_out + t, j * d_out + t);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("tensor product identity and basis bookkeeping") {
  ComplexMatrix i2 = ComplexMatrix::identity(2);
  ComplexMatrix i4 = tensor_product(i2, i2);
  CHECK(max_abs_diff(i4, ComplexMatrix::identity(4)) == 0.0);

  // |0><0| (x) |1><1| occupies the second diagonal slot.
  ComplexMatrix p01 = tensor_product(basis_projector(2, 0),
                                     basis_projector(2, 1));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      double expected = (i == 1 && j == 1) ? 1.0 : 0.0;
      CHECK(std::abs(p01(i, j) - Complex(expected, 0.0)) == 0.0);
    }
  }
}

TEST_CASE("tensor product of sigma_z with itself, expanded by hand") {
  ComplexMatrix zz = tensor_product(pauli_z(), pauli_z());
  std::vector<double> diag = {1.0, -1.0, -1.0, 1.0};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      double expected = i == j ? diag[i] : 0.0;
      CHECK(std::abs(zz(i, j) - Complex(expected, 0.0)) <= 1e-15);
    }
  }
}

TEST_CASE("tensor product associativity") {
  Rng rng(11);
  ComplexMatrix a = random_hermitian(2, rng);
  ComplexMatrix b = random_hermitian(3, rng);
  ComplexMatrix c = random_hermitian(2, rng);
  ComplexMatrix left = tensor_product(tensor_product(a, b), c);
  ComplexMatrix right = tensor_product(a, tensor_product(b, c));
  CHECK(max_abs_diff(left, right) <= 1e-14);
}

TEST_CASE("tensor product respects the memory bound") {
  ComplexMatrix big = ComplexMatrix::identity(128);
  CHECK_THROWS_AS(tensor_product(big, big, 4096), DimensionError);
}

TEST_CASE("partial trace of a product state recovers the factors") {
  Rng rng(17);
  DensityMatrix a = random_density(SubsystemLayout::single(2), rng);
  DensityMatrix b = random_density(SubsystemLayout::single(3), rng);
  ComplexMatrix joint = tensor_product(a.matrix(), b.matrix());
  SubsystemLayout layout({2, 3});

  ComplexMatrix back_a = partial_trace(joint, layout, {0});
  ComplexMatrix back_b = partial_trace(joint, layout, {1});
  CHECK(max_abs_diff(back_a, a.matrix()) <= 1e-14);
  CHECK(max_abs_diff(back_b, b.matrix()) <= 1e-14);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  ComplexMatrix bell(4, 4);
  for (std::size_t i : {0, 3}) {
    for (std::size_t j : {0, 3}) {
      bell(i, j) = Complex(0.5, 0.0);
    }
  }
  ComplexMatrix reduced = partial_trace(bell, SubsystemLayout::qubits(2), {0});
  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= Complex(0.5, 0.0);
  CHECK(max_abs_diff(reduced, half) <= 1e-15);
}

TEST_CASE("partial trace preserves trace and matches the slow oracle") {
  Rng rng(23);
  SubsystemLayout layout({3, 3, 3});
  DensityMatrix rho = random_density(layout, rng);

  ComplexMatrix reduced = partial_trace(rho.matrix(), layout, {0});
  CHECK(std::abs(reduced.trace() - rho.matrix().trace()) <= 1e-12);

  // Keep the first two factors: comparable to tracing the last factor of a
  // [9, 3] split.
  ComplexMatrix kept01 = partial_trace(rho.matrix(), layout, {0, 1});
  ComplexMatrix oracle = slow_trace_out_last(rho.matrix(), 9, 3);
  CHECK(max_abs_diff(kept01, oracle) <= 1e-13);

  // Tracing everything but one factor agrees with composing single steps.
  ComplexMatrix direct = partial_trace(rho.matrix(), layout, {1});
  ComplexMatrix staged = partial_trace(kept01, SubsystemLayout({3, 3}), {1});
  CHECK(max_abs_diff(direct, staged) <= 1e-13);
}

TEST_CASE("partial trace keeping everything is the identity operation") {
  Rng rng(29);
  SubsystemLayout layout({2, 2});
  DensityMatrix rho = random_density(layout, rng);
  ComplexMatrix kept = partial_trace(rho.matrix(), layout, {0, 1});
  CHECK(max_abs_diff(kept, rho.matrix()) == 0.0);
}

TEST_CASE("partial trace over all factors yields the scalar trace") {
  Rng rng(53);
  SubsystemLayout layout({2, 3});
  DensityMatrix rho = random_density(layout, rng);
  ComplexMatrix scalar = partial_trace(rho.matrix(), layout, {});
  CHECK(scalar.rows() == 1);
  CHECK(std::abs(scalar(0, 0) - rho.matrix().trace()) <= 1e-15);
}

TEST_CASE("partial trace rejects bad keep sets") {
  SubsystemLayout layout({2, 2});
  ComplexMatrix m = ComplexMatrix::identity(4);
  CHECK_THROWS_AS(partial_trace(m, layout, {2}), DimensionError);
  CHECK_THROWS_AS(partial_trace(m, layout, {0, 0}), DimensionError);
  CHECK_THROWS_AS(partial_trace(m, SubsystemLayout({2, 4}), {0}),
                  DimensionError);
}

TEST_CASE("permute_subsystems identity and swap") {
  Rng rng(31);
  DensityMatrix a = random_density(SubsystemLayout::single(2), rng);
  DensityMatrix b = random_density(SubsystemLayout::single(3), rng);
  ComplexMatrix ab = tensor_product(a.matrix(), b.matrix());
  SubsystemLayout layout({2, 3});

  ComplexMatrix same = permute_subsystems(ab, layout, {0, 1});
  CHECK(max_abs_diff(same, ab) == 0.0);

  ComplexMatrix swapped = permute_subsystems(ab, layout, {1, 0});
  ComplexMatrix ba = tensor_product(b.matrix(), a.matrix());
  CHECK(max_abs_diff(swapped, ba) <= 1e-15);
}

TEST_CASE("permute then inverse-permute is the identity map") {
  Rng rng(37);
  SubsystemLayout layout({2, 3, 2});
  DensityMatrix rho = random_density(layout, rng);
  std::vector<std::size_t> perm = {2, 0, 1};
  std::vector<std::size_t> inverse(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inverse[perm[k]] = k;

  ComplexMatrix forward = permute_subsystems(rho.matrix(), layout, perm);
  SubsystemLayout permuted({layout.dim(perm[0]), layout.dim(perm[1]),
                            layout.dim(perm[2])});
  ComplexMatrix back = permute_subsystems(forward, permuted, inverse);
  CHECK(max_abs_diff(back, rho.matrix()) <= 1e-14);
}

TEST_CASE("permute_subsystems rejects non-permutations") {
  ComplexMatrix m = ComplexMatrix::identity(4);
  SubsystemLayout layout({2, 2});
  CHECK_THROWS_AS(permute_subsystems(m, layout, {0, 0}), DimensionError);
  CHECK_THROWS_AS(permute_subsystems(m, layout, {0, 2}), DimensionError);
  CHECK_THROWS_AS(permute_subsystems(m, layout, {0}), DimensionError);
}

TEST_CASE("eig_hermitian on the Pauli matrices") {
  EigResult z = eig_hermitian(pauli_z());
  CHECK(z.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(z.values[1] == doctest::Approx(1.0).epsilon(1e-12));

  EigResult x = eig_hermitian(pauli_x());
  CHECK(x.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(x.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  // Eigenvectors are (|0> -+ |1>)/sqrt(2) up to phase.
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(std::abs(std::abs(x.vectors(0, k)) - 1.0 / std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(std::abs(x.vectors(1, k)) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  }
}

TEST_CASE("eig_hermitian reconstructs a random 6x6 Hermitian matrix") {
  Rng rng(41);
  ComplexMatrix h = random_hermitian(6, rng);
  EigResult eig = eig_hermitian(h);

  ComplexMatrix rebuilt(6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < 6; ++k) {
        acc += eig.vectors(i, k) * eig.values[k] *
               std::conj(eig.vectors(j, k));
      }
      rebuilt(i, j) = acc;
    }
  }
  CHECK(max_abs_diff(rebuilt, h) <= 1e-10);
  for (std::size_t k = 1; k < eig.values.size(); ++k) {
    CHECK(eig.values[k - 1] <= eig.values[k]);
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m(0, 1) = Complex(1.0, 0.0);
  CHECK_THROWS_AS(eig_hermitian(m), ValidationError);
}

TEST_CASE("conjugate_by identity and bit flip") {
  Rng rng(43);
  DensityMatrix rho = random_density(SubsystemLayout::single(2), rng);
  ComplexMatrix same = conjugate_by(ComplexMatrix::identity(2), rho.matrix());
  CHECK(max_abs_diff(same, rho.matrix()) <= 1e-15);

  ComplexMatrix flipped = conjugate_by(pauli_x(), basis_projector(2, 0));
  CHECK(max_abs_diff(flipped, basis_projector(2, 1)) <= 1e-15);
}

TEST_CASE("conjugate_by preserves trace, Hermiticity, and spectrum") {
  Rng rng(47);
  ComplexMatrix u = random_unitary(4, rng);
  DensityMatrix rho = random_density(SubsystemLayout::qubits(2), rng);
  ComplexMatrix out = conjugate_by(u, rho.matrix());

  CHECK(std::abs(out.trace() - rho.matrix().trace()) <= 1e-12);
  CHECK(out.is_hermitian(1e-12));
  EigResult before = eig_hermitian(rho.matrix());
  EigResult after = eig_hermitian(out);
  for (std::size_t k = 0; k < before.values.size(); ++k) {
    CHECK(after.values[k] == doctest::Approx(before.values[k]).epsilon(1e-9));
    CHECK(after.values[k] >= -1e-10);
  }
}

TEST_CASE("conjugate_by rejects non-unitary matrices") {
  ComplexMatrix not_unitary(2, 2);
  not_unitary(0, 0) = Complex(2.0, 0.0);
  not_unitary(1, 1) = Complex(1.0, 0.0);
  CHECK_THROWS_AS(conjugate_by(not_unitary, ComplexMatrix::identity(2)),
                  ValidationError);
}

TEST_CASE("trace_norm sums absolute eigenvalues") {
  CHECK(trace_norm(pauli_z()) == doctest::Approx(2.0).epsilon(1e-12));
  ComplexMatrix zero(3, 3);
  CHECK(trace_norm(zero) == doctest::Approx(0.0));
}
