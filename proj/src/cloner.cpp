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

#include "otcsim/cloner.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

#include "otcsim/errors.hpp"

namespace otcsim {

namespace {

constexpr std::size_t kMaxExactCopies = 6;

std::size_t checked_power(std::size_t d, std::size_t m, std::size_t max_dim) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < m; ++k) {
    total *= d;
    if (total > max_dim) {
      throw DimensionError("cloner: d^M = " + std::to_string(d) + "^" +
                           std::to_string(m) + " exceeds memory bound " +
                           std::to_string(max_dim));
    }
  }
  return total;
}

}  // namespace

double shrinking_factor(std::size_t d, std::size_t copies) {
  if (d < 2) {
    throw DimensionError("shrinking_factor: dimension must be >= 2");
  }
  if (copies < 1) {
    throw DimensionError("shrinking_factor: need at least one copy");
  }
  return static_cast<double>(copies + d) /
         (static_cast<double>(copies) * static_cast<double>(1 + d));
}

ComplexMatrix symmetric_projector(std::size_t d, std::size_t copies,
                                  std::size_t max_dim) {
  if (copies > kMaxExactCopies) {
    throw DimensionError("symmetric_projector: capped at " +
                         std::to_string(kMaxExactCopies) + " copies");
  }
  static std::mutex cache_mutex;
  static std::map<std::pair<std::size_t, std::size_t>, ComplexMatrix> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({d, copies});
    if (it != cache.end()) return it->second;
  }

  const std::size_t total = checked_power(d, copies, max_dim);
  ComplexMatrix projector(total, total);
  std::vector<std::size_t> perm(copies);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t permutation_count = 0;
  std::vector<std::size_t> digits(copies), permuted(copies);
  do {
    ++permutation_count;
    for (std::size_t col = 0; col < total; ++col) {
      std::size_t rem = col;
      for (std::size_t k = copies; k-- > 0;) {
        digits[k] = rem % d;
        rem /= d;
      }
      for (std::size_t k = 0; k < copies; ++k) permuted[k] = digits[perm[k]];
      std::size_t row = 0;
      for (std::size_t k = 0; k < copies; ++k) row = row * d + permuted[k];
      projector(row, col) += Complex(1.0, 0.0);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  projector *= Complex(1.0 / static_cast<double>(permutation_count), 0.0);

  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(std::make_pair(d, copies), std::move(projector))
      .first->second;
}

DensityMatrix clone_exact(const CloneJob& job, std::size_t max_dim) {
  if (job.input.layout().factor_count() != 1) {
    throw DimensionError("clone_exact: input must be a single qudit");
  }
  if (job.copies < 1) {
    throw DimensionError("clone_exact: need at least one copy");
  }
  const std::size_t d = job.input.dim();
  if (job.copies == 1) {
    return job.input;
  }
  if (job.copies > kMaxExactCopies) {
    throw DimensionError("clone_exact: exact backend capped at " +
                         std::to_string(kMaxExactCopies) + " copies");
  }
  checked_power(d, job.copies, max_dim);

  ComplexMatrix extended = job.input.matrix();
  for (std::size_t k = 1; k < job.copies; ++k) {
    ComplexMatrix blank = ComplexMatrix::identity(d);
    blank *= Complex(1.0 / static_cast<double>(d), 0.0);
    extended = tensor_product(extended, blank, max_dim);
  }
  const ComplexMatrix& p_sym = symmetric_projector(d, job.copies, max_dim);
  ComplexMatrix projected = p_sym * extended * p_sym;
  Complex tr = projected.trace();
  projected *= Complex(1.0, 0.0) / tr;

  return DensityMatrix(
      std::move(projected),
      SubsystemLayout(std::vector<std::size_t>(job.copies, d)));
}

std::vector<DensityMatrix> clone_marginals(const CloneJob& job) {
  if (job.input.layout().factor_count() != 1) {
    throw DimensionError("clone_marginals: input must be a single qudit");
  }
  if (job.copies < 1) {
    throw DimensionError("clone_marginals: need at least one copy");
  }
  const std::size_t d = job.input.dim();
  double s = shrinking_factor(d, job.copies);
  ComplexMatrix shrunk = job.input.matrix();
  shrunk *= Complex(s, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    shrunk(i, i) += Complex((1.0 - s) / static_cast<double>(d), 0.0);
  }
  DensityMatrix clone(std::move(shrunk), job.input.layout());
  return std::vector<DensityMatrix>(job.copies, clone);
}

}  // namespace otcsim
