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

#include "cuntz/product_autos.hpp"

namespace cuntz {

ComplexMatrix product_unitary(const UnitarySequence& seq, int k, const Tolerances& tol) {
  seq.require_depth(k);
  ComplexMatrix u = ComplexMatrix::Identity(1, 1);
  for (int j = 1; j <= k; ++j) u = tensor(u, seq.factor_at(j).matrix(), tol);
  return u;
}

ComplexMatrix apply_level(const ProductAutomorphism& a, int k, const ComplexMatrix& m,
                          const Tolerances& tol) {
  const Eigen::Index dim = ipow(a.n(), k);
  if (m.rows() != dim || m.cols() != dim) {
    std::ostringstream msg;
    msg << "apply_level: expected a " << dim << "x" << dim << " matrix at level " << k;
    throw ValidationError(msg.str());
  }
  const ComplexMatrix u = product_unitary(a.sequence(), k, tol);
  return u * m * u.adjoint();
}

WordPoly apply_via_words(const ProductAutomorphism& a, const WordPoly& x) {
  if (!x.balanced()) throw DomainError("apply_via_words: element is not balanced");
  const int n = a.n();
  if (x.alphabet() != n) throw ValidationError("apply_via_words: alphabet mismatch");
  const int depth = x.level();
  a.sequence().require_depth(depth);

  std::vector<WordPoly> u, u_star, s, s_star;
  for (int j = 1; j <= depth; ++j) {
    u.push_back(from_matrix(n, 1, a.sequence().factor_at(j).matrix()));
    u_star.push_back(adjoint(u.back()));
  }
  for (int i = 0; i < n; ++i) {
    s.push_back(WordPoly::generator(n, i));
    s_star.push_back(adjoint(s.back()));
  }

  WordPoly out(n);
  for (const auto& [key, c] : x.terms()) {
    const std::size_t k = key.alpha.size();
    WordPoly prod = WordPoly::one(n);
    for (std::size_t j = 0; j < k; ++j) {
      prod = prod * u[j];
      prod = prod * s[static_cast<std::size_t>(key.alpha[j])];
    }
    for (std::size_t j = k; j-- > 0;) {
      prod = prod * s_star[static_cast<std::size_t>(key.beta[j])];
      prod = prod * u_star[j];
    }
    out += c * prod;
  }
  return out;
}

ProductAutomorphism compose(const ProductAutomorphism& a, const ProductAutomorphism& b) {
  return ProductAutomorphism(combine(a.sequence(), b.sequence(),
                                     [](const UnitaryMatrix& x, const UnitaryMatrix& y) {
                                       return x * y;
                                     }));
}

ProductAutomorphism inverse(const ProductAutomorphism& a) {
  const auto& s = a.sequence();
  const auto adj = [](const std::vector<UnitaryMatrix>& v) {
    std::vector<UnitaryMatrix> out;
    out.reserve(v.size());
    for (const auto& u : v) out.push_back(u.adjoint());
    return out;
  };
  TailRule<UnitaryMatrix> tail = std::visit(
      [&](const auto& t) -> TailRule<UnitaryMatrix> {
        using R = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<R, ConstantTail<UnitaryMatrix>>) {
          return ConstantTail<UnitaryMatrix>{t.value.adjoint()};
        } else if constexpr (std::is_same_v<R, PeriodicTail<UnitaryMatrix>>) {
          return PeriodicTail<UnitaryMatrix>{adj(t.cycle)};
        } else {
          return SampledTail<UnitaryMatrix>{t.depth, adj(t.samples)};
        }
      },
      s.tail());
  return ProductAutomorphism(UnitarySequence(s.n(), adj(s.prefix()), std::move(tail)));
}

}  // namespace cuntz
