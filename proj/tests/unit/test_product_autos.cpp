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

#include <doctest.h>

#include "cuntz/product_autos.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cuntz;
using namespace cuntz::testing;

namespace {

UnitaryMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return UnitaryMatrix::validated(m);
}

UnitarySequence random_periodic(int n, int prefix, int period, Rng& rng) {
  std::vector<UnitaryMatrix> p, c;
  for (int i = 0; i < prefix; ++i) p.push_back(random_unitary(n, rng));
  for (int i = 0; i < period; ++i) c.push_back(random_unitary(n, rng));
  return UnitarySequence(n, std::move(p), PeriodicTail<UnitaryMatrix>{std::move(c)});
}

}  // namespace

TEST_CASE("factor lookup") {
  Rng rng(101);
  const auto a = random_unitary(2, rng), b = random_unitary(2, rng), c = random_unitary(2, rng);
  const UnitarySequence s1(2, {a}, ConstantTail<UnitaryMatrix>{b});
  CHECK(s1.factor_at(1).matrix() == a.matrix());
  CHECK(s1.factor_at(7).matrix() == b.matrix());
  const UnitarySequence s2(2, {}, PeriodicTail<UnitaryMatrix>{{b, c}});
  CHECK(s2.factor_at(3).matrix() == b.matrix());
  CHECK(s2.factor_at(4).matrix() == c.matrix());
  const auto s3 = random_sampled(2, 5, rng);
  CHECK_NOTHROW(s3.factor_at(5));
  CHECK_THROWS_AS(s3.factor_at(6), RangeError);
  CHECK_THROWS_AS(s1.factor_at(0), RangeError);
}

TEST_CASE("sequence validation") {
  Rng rng(103);
  CHECK_THROWS_AS(UnitarySequence(2, {random_unitary(3, rng)}, ConstantTail<UnitaryMatrix>{random_unitary(2, rng)}),
                  ValidationError);
  CHECK_THROWS_AS(UnitarySequence(2, {}, PeriodicTail<UnitaryMatrix>{{}}), ValidationError);
  CHECK_THROWS_AS(UnitarySequence(2, {}, SampledTail<UnitaryMatrix>{3, {random_unitary(2, rng)}}),
                  ValidationError);
}

TEST_CASE("level action: identity and level one") {
  Rng rng(107);
  const ProductAutomorphism id(UnitarySequence(2, {}, ConstantTail<UnitaryMatrix>{UnitaryMatrix::identity(2)}));
  const auto m = ginibre(8, 8, rng);
  CHECK(apply_level(id, 3, m) == m);

  const auto seq = random_constant_tail(2, 2, rng);
  const ProductAutomorphism a(seq);
  ComplexMatrix e12 = ComplexMatrix::Zero(2, 2);
  e12(0, 1) = 1;
  const auto u1 = seq.factor_at(1).matrix();
  CHECK(max_abs(apply_level(a, 1, e12) - u1 * e12 * u1.adjoint()) <= 1e-15);
  CHECK_THROWS_AS(apply_level(a, 2, e12), ValidationError);
}

TEST_CASE("word picture: closed-form example") {
  const ProductAutomorphism a(UnitarySequence(2, {}, ConstantTail<UnitaryMatrix>{pauli_x()}));
  CHECK(equal(apply_via_words(a, WordPoly::one(2)), WordPoly::one(2), 0.0));
  CHECK(equal(apply_via_words(a, WordPoly::monomial(2, {0}, {0})), WordPoly::monomial(2, {1}, {1}),
              0.0));
}

TEST_CASE("word picture matches the matrix picture") {
  Rng rng(109);
  for (int t = 0; t < 6; ++t) {
    const int n = 2 + t % 2;
    const auto seq = random_periodic(n, 1, 2, rng);
    const ProductAutomorphism a(seq);
    for (int k = 1; k <= 3; ++k) {
      const auto x = random_polynomial<cplx>(n, k, 3, true, rng);
      const auto xk = normalize_to_level(x, k, 0.0);
      CHECK(max_abs(to_matrix(apply_via_words(a, xk), k) - apply_level(a, k, to_matrix(xk, k))) <=
            1e-10);
    }
  }
}

TEST_CASE("level compatibility, homomorphism, trace preservation") {
  Rng rng(113);
  for (int t = 0; t < 5; ++t) {
    const int n = 2 + t % 2;
    const auto seq = random_periodic(n, 2, 3, rng);
    const ProductAutomorphism a(seq);
    for (int k = 1; k <= (n == 2 ? 4 : 3); ++k) {
      const Eigen::Index d = ipow(n, k);
      const auto m = ginibre(d, d, rng), q = ginibre(d, d, rng);
      const ComplexMatrix am = apply_level(a, k, m);
      if (k < 4) {
        CHECK(max_abs(apply_level(a, k + 1, embed_level(m, n, k, k + 1)) -
                      embed_level(am, n, k, k + 1)) <= 1e-10);
      }
      CHECK(max_abs(apply_level(a, k, ComplexMatrix(m * q)) - am * apply_level(a, k, q)) <= 1e-10);
      CHECK(std::abs(am.trace() - m.trace()) / static_cast<double>(d) <= 1e-10);
    }
  }
}

TEST_CASE("composition and inverse") {
  Rng rng(127);
  const auto c = random_unitary(2, rng);
  const ProductAutomorphism a(UnitarySequence(2, {}, ConstantTail<UnitaryMatrix>{c}));
  const auto inv = inverse(a);
  CHECK(inv.sequence().is_constant());
  CHECK(max_abs(inv.sequence().factor_at(5).matrix() - c.matrix().adjoint()) == 0.0);

  const auto b = ProductAutomorphism(random_periodic(2, 1, 2, rng));
  const auto ident = compose(b, inverse(b));
  const auto m = ginibre(8, 8, rng);
  CHECK(max_abs(apply_level(ident, 3, m) - m) <= 1e-10);

  const auto p2 = ProductAutomorphism(random_periodic(2, 0, 2, rng));
  const auto p3 = ProductAutomorphism(random_periodic(2, 0, 3, rng));
  const auto p6 = compose(p2, p3);
  REQUIRE(p6.sequence().period());
  CHECK(*p6.sequence().period() == 6);
  for (int k = 1; k <= 14; ++k) {
    CHECK(max_abs(p6.sequence().factor_at(k).matrix() -
                  p2.sequence().factor_at(k).matrix() * p3.sequence().factor_at(k).matrix()) <= 1e-15);
  }

  const auto s = ProductAutomorphism(random_sampled(2, 4, rng));
  const auto mixed = compose(s, p2);
  CHECK(mixed.sequence().is_sampled());
  CHECK(*mixed.sequence().depth() == 4);
  CHECK_THROWS_AS(compose(a, ProductAutomorphism(random_constant_tail(3, 0, rng))), ValidationError);
}
