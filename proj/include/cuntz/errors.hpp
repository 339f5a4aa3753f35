// Copyright 2026 The Cuntz Extension Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace cuntz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (non-unitary matrix, bad permutation,
/// schema violation). Maps to CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Query past the supported depth of a sampled sequence.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Operation applied outside its domain, e.g. the trace of an unbalanced word.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation called on a verdict that does not admit it.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Input unitary is not of the expected telescoped form at some level.
class StructuralError : public Error {
 public:
  StructuralError(const std::string& what, int level)
      : Error(what), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

/// Two independent evaluation routes disagreed. Maps to CLI exit code 2.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace cuntz
