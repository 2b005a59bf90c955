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

#ifndef OTCSIM_RNG_HPP
#define OTCSIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace otcsim {

/// Seeded generator with a bit-reproducible output sequence. mt19937_64 has
/// a standard-pinned stream, and the uniform/gaussian transformations below
/// avoid std::*_distribution, whose sequences vary across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    // Guard log(0).
    while (u1 <= 0.0) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Deterministic per-stream seed derivation from a master seed. Streams for
/// distinct indices are decorrelated by a large odd multiplier.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return master + (index + 1) * 0x9E3779B97F4A7C15ull;
}

}  // namespace otcsim

#endif  // OTCSIM_RNG_HPP
