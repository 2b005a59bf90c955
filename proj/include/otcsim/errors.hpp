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

#ifndef OTCSIM_ERRORS_HPP
#define OTCSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace otcsim {

/// Base class for all otcsim errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shape mismatch, index out of range, or composite dimension beyond the
/// configured memory bound.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// A numerical contract was violated: non-Hermitian input, non-unitary
/// interaction, trace or positivity outside tolerance, bad probabilities.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Iterative solve exhausted its budget. Carries the best residual seen.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, double best_residual)
      : Error(msg), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// A cached result no longer matches the inputs it is presented with
/// (e.g. a fixed point handed to ctc_evolve for a different state).
class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

/// Malformed input text. `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace otcsim

#endif  // OTCSIM_ERRORS_HPP
