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

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cuntz/permutation.hpp"
#include "cuntz/sequence.hpp"
#include "cuntz/words.hpp"

namespace cuntz {

/// Finite word over {0..n-1}; addresses the projection S_x S_x* and the
/// cylinder set of infinite words starting with x.
class CylinderWord {
 public:
  CylinderWord(int n, Multiindex letters);

  int n() const { return n_; }
  int length() const { return static_cast<int>(letters_.size()); }
  const Multiindex& letters() const { return letters_; }
  WordPoly projection() const { return WordPoly::monomial(n_, letters_, letters_); }

  friend bool operator==(const CylinderWord&, const CylinderWord&) = default;

 private:
  int n_;
  Multiindex letters_;
};

/// All words of length k in lexicographic order (first letter most significant).
std::vector<Multiindex> all_words(int n, int k);

/// (σ_1(x_1), …, σ_k(x_k)).
CylinderWord act_on_word(const PermutationSequence& seq, const CylinderWord& x);

struct ExtensiblePermutation {
  int r = 0;                          // prefix length
  std::vector<Permutation> w_factors;  // w_1..w_{r+1}; identity afterwards
  WordPoly w_word{2};
};

struct DiagonalNotExtensible {
  std::pair<int, int> witness;  // (k, k+1) with σ_k ≠ σ_{k+1}, recurring
};

struct DiagonalInconclusive {
  std::pair<int, int> window;  // sampled indices
  bool window_constant = false;
};

struct DiagonalVerdict {
  std::variant<ExtensiblePermutation, DiagonalNotExtensible, DiagonalInconclusive> result;
  bool extensible() const { return std::holds_alternative<ExtensiblePermutation>(result); }
};

std::string kind_name(const DiagonalVerdict& v);

DiagonalVerdict decide_extension(const PermutationSequence& seq);

/// w_1 φ(w_2) φ²(w_3) ⋯ as a word polynomial, compressed.
WordPoly build_permutation_unitary(const ExtensiblePermutation& ext);
WordPoly build_permutation_unitary(const DiagonalVerdict& verdict);

/// w_k ⋯ w_1, the permutation acting on slot k.
Permutation slot_permutation(const ExtensiblePermutation& ext, int n, int k);

/// Throws ValidationError unless w is balanced, every coefficient is 1 and
/// its matrix is a permutation matrix.
void require_permutation_unitary(const WordPoly& w);

struct DiagonalVerification {
  int depth = 0;
  std::size_t checked = 0;
  bool passed = true;
  std::optional<Multiindex> counterexample;
  WordPoly image{2};
  WordPoly expected{2};
};

DiagonalVerification verify_diagonal_extension(const WordPoly& w, const PermutationSequence& seq,
                                               int depth, double tol = 0.0);

struct FixedPointResult {
  bool fixes_diagonal = true;
  bool v_in_diagonal = true;
  std::optional<Multiindex> counterexample;
};

/// ConsistencyError if λ_v fixes the cylinder projections to depth
/// ≥ level(v) + 1 while v has an off-diagonal term.
FixedPointResult fixed_point_test(const WordPoly& v, int depth, double tol = 1e-10);

struct LevelMap {
  int k = 0;
  std::vector<std::pair<Multiindex, std::vector<Multiindex>>> relation;  // x ↦ cylinders
  bool injective = false;
  bool surjective = false;
};

struct DiagonalAction {
  std::vector<LevelMap> levels;
  bool injective = true;
  bool surjective = true;
};

/// Relation x ↦ λ_w(S_x S_x*) on cylinder words of length 1..depth.
/// StructuralError(k) if an image is not a sum of cylinder projections.
DiagonalAction perm_endo_diagonal_action(const WordPoly& w, int depth, double tol = 1e-12);

}  // namespace cuntz
