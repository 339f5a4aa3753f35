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

#include <compare>
#include <optional>
#include <vector>

#include "cuntz/matrix_core.hpp"

namespace cuntz {

/// Bijection of {0, …, m−1}. Serialized in one-line notation with 1-based
/// images [σ(1), …, σ(m)].
class Permutation {
 public:
  Permutation() = default;

  /// Throws ValidationError unless `images` is a bijection of {0..m-1}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int m);
  static Permutation from_one_line(const std::vector<int>& images_one_based);

  /// Recovers σ from a 0/1 matrix with entries (σ(j), j); empty if the
  /// matrix is not a permutation matrix within `tol`.
  static std::optional<Permutation> from_matrix(const ComplexMatrix& p,
                                                double tol = 1e-12);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }
  std::vector<int> one_line() const;

  bool is_identity() const;
  Permutation inverse() const;
  std::vector<int> cycle_lengths() const;

  /// (a * b)(i) = a(b(i)), matching P(a)P(b) = P(a * b).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// 0/1 unitary with entry (σ(j), j) = 1.
UnitaryMatrix permutation_matrix(const Permutation& sigma);

}  // namespace cuntz
