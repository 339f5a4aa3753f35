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

#include <algorithm>
#include <numeric>

#include "cuntz/matrix_core.hpp"
#include "cuntz/sequence.hpp"
#include "cuntz/words.hpp"

namespace cuntz {

/// The product-type automorphism ⊗_i Ad(u_i) of the core F_n. It maps each
/// level F_n^k onto itself.
class ProductAutomorphism {
 public:
  explicit ProductAutomorphism(UnitarySequence seq) : seq_(std::move(seq)) {}

  const UnitarySequence& sequence() const { return seq_; }
  int n() const { return seq_.n(); }

 private:
  UnitarySequence seq_;
};

/// u_1 ⊗ … ⊗ u_k (the 1×1 identity for k = 0).
ComplexMatrix product_unitary(const UnitarySequence& seq, int k, const Tolerances& tol = {});

/// Ad(u_1 ⊗ … ⊗ u_k)(m) for m at level k.
ComplexMatrix apply_level(const ProductAutomorphism& a, int k, const ComplexMatrix& m,
                          const Tolerances& tol = {});

/// Literal word-algebra evaluation of
///   α(S_α S_β*) = u_1 S_{α_1} u_2 S_{α_2} ⋯ u_k S_{α_k} S_{β_k}* u_k* ⋯ S_{β_1}* u_1*,
/// each u_j entering through from_matrix(1, ·). Independent of `apply_level`.
WordPoly apply_via_words(const ProductAutomorphism& a, const WordPoly& x);

/// Slotwise combination of two sequences. Constant/periodic tails combine to
/// a tail of period lcm(p, q) after the longer prefix; if either tail is
/// sampled the result is sampled up to the smaller available depth.
template <typename T, typename Fn>
Sequence<T> combine(const Sequence<T>& a, const Sequence<T>& b, Fn f) {
  if (a.n() != b.n()) throw ValidationError("combine: alphabet sizes differ");
  const auto at = [&](int k) { return f(a.factor_at(k), b.factor_at(k)); };
  if (a.is_sampled() || b.is_sampled()) {
    const int depth = std::min(a.depth().value_or(b.depth().value_or(0)),
                               b.depth().value_or(a.depth().value_or(0)));
    std::vector<T> samples;
    for (int k = 1; k <= depth; ++k) samples.push_back(at(k));
    return Sequence<T>(a.n(), {}, SampledTail<T>{depth, std::move(samples)});
  }
  const int m = std::max(a.prefix_length(), b.prefix_length());
  const int period = std::lcm(*a.period(), *b.period());
  std::vector<T> prefix;
  for (int k = 1; k <= m; ++k) prefix.push_back(at(k));
  if (period == 1) return Sequence<T>(a.n(), std::move(prefix), ConstantTail<T>{at(m + 1)});
  std::vector<T> cycle;
  for (int k = m + 1; k <= m + period; ++k) cycle.push_back(at(k));
  return Sequence<T>(a.n(), std::move(prefix), PeriodicTail<T>{std::move(cycle)});
}

/// Factors a_k b_k; acts as a ∘ b.
ProductAutomorphism compose(const ProductAutomorphism& a, const ProductAutomorphism& b);

/// Factors u_k*.
ProductAutomorphism inverse(const ProductAutomorphism& a);

}  // namespace cuntz
