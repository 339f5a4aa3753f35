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

#include <algorithm>
#include <set>

#include "cuntz/matrix_core.hpp"
#include "cuntz/permutation.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cuntz;
using namespace cuntz::testing;

namespace {

ComplexMatrix diag2(cplx a, cplx b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

UnitaryMatrix U(const ComplexMatrix& m) { return UnitaryMatrix::validated(m); }

}  // namespace

TEST_CASE("tensor: identities, diagonal kronecker, capacity") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(tensor(i2, i2) == ComplexMatrix::Identity(4, 4));
  const ComplexMatrix d = tensor(diag2(1, -1), i2);
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  want.diagonal() << 1, 1, -1, -1;
  CHECK(d == want);

  Tolerances small;
  small.max_dim = 8;
  CHECK_THROWS_AS(tensor(ComplexMatrix::Identity(4, 4), ComplexMatrix::Identity(4, 4), small),
                  CapacityError);
}

TEST_CASE("tensor agrees with an explicit loop kronecker") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const auto a = ginibre(2, 2, rng), b = ginibre(3, 3, rng);
    CHECK(max_abs(tensor(a, b) - kron_loops(a, b)) == 0.0);
  }
}

TEST_CASE("operator norm: closed-form cases") {
  CHECK(operator_norm(ComplexMatrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(operator_norm(diag2(1, -1) - ComplexMatrix::Identity(2, 2)) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(operator_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("operator norm matches SVD on random 8x8 matrices") {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto a = ginibre(8, 8, rng);
    const double want = svd_norm(a);
    CHECK(std::abs(operator_norm(a) - want) <= 1e-8 * want);
  }
}

TEST_CASE("operator norm is multiplicative under tensor") {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto a = ginibre(2, 2, rng), b = ginibre(2, 2, rng);
    const double lhs = operator_norm(tensor(a, b));
    CHECK(std::abs(lhs - operator_norm(a) * operator_norm(b)) <= 1e-10 * lhs);
  }
}

TEST_CASE("operator norm is submultiplicative") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto a = ginibre(3, 3, rng), b = ginibre(3, 3, rng);
    CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) * (1 + 1e-10));
  }
}

TEST_CASE("unitarity defects compose subadditively") {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    // Perturb Haar unitaries slightly so defects are nonzero.
    const ComplexMatrix a = haar_matrix(3, rng) + 1e-11 * ginibre(3, 3, rng);
    const ComplexMatrix b = haar_matrix(3, rng) + 1e-11 * ginibre(3, 3, rng);
    const double da = unitarity_defect(a), db = unitarity_defect(b);
    CHECK(unitarity_defect(ComplexMatrix(a * b)) <= da + db + da * db + 1e-15);
  }
}

TEST_CASE("unitary validation rejects non-unitary input") {
  CHECK_THROWS_AS(UnitaryMatrix::validated(diag2(1, 2)), ValidationError);
  CHECK_THROWS_AS(UnitaryMatrix::validated(ComplexMatrix(2, 3)), ValidationError);
  CHECK_NOTHROW(UnitaryMatrix::validated(pauli_x()));
}

TEST_CASE("eigenphases: closed-form cases") {
  const auto p = eigenphases(UnitaryMatrix::identity(2));
  CHECK(p == std::vector<double>{0.0, 0.0});
  const auto d = eigenphases(U(diag2(1, cplx(0, 1))));
  CHECK(d[0] == doctest::Approx(0.0));
  CHECK(d[1] == doctest::Approx(kPi / 2));
  const auto x = eigenphases(U(pauli_x()));
  CHECK(x[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("eigenphases match the 2x2 quadratic formula") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const auto u = random_unitary(2, rng);
    const auto ev = eigenvalues_2x2(u.matrix());
    std::vector<double> want{std::arg(ev[0]), std::arg(ev[1])};
    for (auto& w : want) w = wrap_phase(w);
    std::sort(want.begin(), want.end());
    const auto got = eigenphases(u);
    CHECK(std::abs(got[0] - want[0]) <= 1e-9);
    CHECK(std::abs(got[1] - want[1]) <= 1e-9);
  }
}

TEST_CASE("eigenphases of permutation matrices are roots of unity per cycle") {
  std::vector<int> img{0, 1, 2};
  do {
    const Permutation s(img);
    std::multiset<long> want;
    for (int len : s.cycle_lengths()) {
      for (int k = 0; k < len; ++k) {
        want.insert(std::lround(wrap_phase(2 * kPi * k / len) * 1e6));
      }
    }
    std::multiset<long> got;
    for (double p : eigenphases(permutation_matrix(s))) got.insert(std::lround(p * 1e6));
    CHECK(got == want);
  } while (std::next_permutation(img.begin(), img.end()));
}

TEST_CASE("phase alignment: closed-form cases") {
  const auto s = phase_align_to_identity(U(std::polar(1.0, kPi / 3) * ComplexMatrix::Identity(2, 2)));
  CHECK(s.psi == doctest::Approx(-kPi / 3));
  CHECK(s.delta == doctest::Approx(0.0).epsilon(1e-15));
  const auto z = phase_align_to_identity(U(diag2(1, -1)));
  CHECK(z.delta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(std::abs(z.psi) - kPi / 2) <= 1e-12);
  const auto e = phase_align_to_identity(U(diag2(1, std::polar(1.0, 0.01))));
  CHECK(e.delta <= 0.01);
}

TEST_CASE("phase alignment agrees with a grid search") {
  Rng rng(17);
  for (int n : {2, 3, 4}) {
    for (int t = 0; t < 5; ++t) {
      const auto u = random_unitary(n, rng);
      const auto a = phase_align_to_identity(u);
      const auto [psi, delta] = grid_alignment(u.matrix());
      CHECK(std::abs(a.delta - delta) <= 1e-6);
      CHECK(phased_distance(u.matrix(), a.psi) == doctest::Approx(a.delta).epsilon(1e-9));
      (void)psi;
    }
  }
}

TEST_CASE("phase alignment delta is gauge invariant") {
  Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    const auto u = random_unitary(3, rng);
    const auto v = u.scaled(std::polar(1.0, random_phase(rng)));
    CHECK(std::abs(phase_align_to_identity(u).delta - phase_align_to_identity(v).delta) <= 1e-9);
  }
}

TEST_CASE("scalar detection") {
  const auto i = is_scalar_multiple_of_identity(diag2(cplx(0, 1), cplx(0, 1)), 1e-9);
  REQUIRE(i);
  CHECK(*i == doctest::Approx(kPi / 2));
  CHECK_FALSE(is_scalar_multiple_of_identity(pauli_x(), 1e-9));
  ComplexMatrix near = ComplexMatrix::Identity(2, 2);
  near(0, 1) = 1e-12;
  const auto z = is_scalar_multiple_of_identity(near, 1e-9);
  REQUIRE(z);
  CHECK(*z == 0.0);
}

TEST_CASE("pauli X is far from every scalar") {
  double lo = 10;
  for (int k = 0; k < 720; ++k) lo = std::min(lo, phased_distance(pauli_x(), 2 * kPi * k / 720));
  CHECK(lo >= std::sqrt(2.0) - 1e-12);
}

TEST_CASE("rotation to contain one") {
  const auto a = rotate_to_contain_one(U(std::polar(1.0, kPi / 4) * ComplexMatrix::Identity(2, 2)));
  CHECK(max_abs(a.matrix() - ComplexMatrix::Identity(2, 2)) <= 1e-15);
  const auto b = rotate_to_contain_one(U(diag2(std::polar(1.0, kPi / 6), std::polar(1.0, kPi))));
  CHECK(max_abs(b.matrix() - diag2(1, std::polar(1.0, 5 * kPi / 6))) <= 1e-14);
  // Equal moduli: the positive phase wins.
  const auto c = rotate_to_contain_one(U(diag2(std::polar(1.0, 0.3), std::polar(1.0, -0.3))));
  CHECK(max_abs(c.matrix() - diag2(1, std::polar(1.0, -0.6))) <= 1e-14);

  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    const auto r = rotate_to_contain_one(random_unitary(3, rng));
    const auto p = eigenphases(r);
    CHECK(*std::min_element(p.begin(), p.end(), [](double x, double y) {
      return std::abs(x) < std::abs(y);
    }) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("permutation matrices") {
  CHECK(permutation_matrix(Permutation::identity(3)).matrix() == ComplexMatrix::Identity(3, 3));
  CHECK(permutation_matrix(Permutation::from_one_line({2, 1})).matrix() == pauli_x());
  const auto c = permutation_matrix(Permutation::from_one_line({2, 3, 1})).matrix();
  CHECK(c(1, 0) == 1.0);
  CHECK(c(2, 1) == 1.0);
  CHECK(c(0, 2) == 1.0);
  CHECK(ComplexMatrix(c * c * c) == ComplexMatrix::Identity(3, 3));
  CHECK_THROWS_AS(Permutation::from_one_line({1, 1}), ValidationError);
  CHECK_THROWS_AS(Permutation::from_one_line({1, 3}), ValidationError);
}

TEST_CASE("permutation algebra matches matrix products") {
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_permutation(4, rng), b = random_permutation(4, rng);
    CHECK(permutation_matrix(a * b).matrix() ==
          ComplexMatrix(permutation_matrix(a).matrix() * permutation_matrix(b).matrix()));
    CHECK((a * a.inverse()).is_identity());
    const auto back = Permutation::from_matrix(permutation_matrix(a).matrix());
    REQUIRE(back);
    CHECK(*back == a);
  }
}

TEST_CASE("level embedding pads with identities") {
  Rng rng(31);
  const auto x = ginibre(3, 3, rng);
  CHECK(max_abs(embed_level(x, 3, 1, 3) - kron_loops(x, ComplexMatrix::Identity(9, 9))) == 0.0);
}
