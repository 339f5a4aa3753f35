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

#include "cuntz/catalog.hpp"

#include <cmath>

namespace cuntz {

namespace {

using C = cplx;

UnitaryMatrix mat2(C a, C b, C c, C d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return UnitaryMatrix::validated(m);
}

UnitaryMatrix pauli_x() { return mat2(0, 1, 1, 0); }
UnitaryMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return mat2(s, s, s, -s);
}
UnitaryMatrix phase_gate(double theta) { return mat2(1, 0, 0, std::polar(1.0, theta)); }
UnitaryMatrix id(int n) { return UnitaryMatrix::identity(n); }

Scenario base(std::string name, std::string description, int n, ScenarioKind kind) {
  Scenario s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.n = n;
  s.kind = kind;
  return s;
}

Scenario inner_finite_support() {
  auto s = base("inner_finite_support",
                "finite-support product H, diag(1,i), then identity; inner, extends by u phi(u*)",
                2, ScenarioKind::UhfProduct);
  s.unitary_sequence = UnitarySequence(2, {hadamard(), phase_gate(kPi / 2)}, ConstantTail<UnitaryMatrix>{id(2)});
  s.expected = {{"extension", "ExtensibleExact"}, {"localized", true},
                {"stabilization_index", 2},       {"verification_passed", true},
                {"innerness", "Inner"},           {"inner_extension_passed", true}};
  return s;
}

Scenario bogolubov_constant_x() {
  auto s = base("bogolubov_constant_X", "constant Pauli-X sequence; extends to the flip, outer on the core",
                2, ScenarioKind::UhfProduct);
  s.unitary_sequence = UnitarySequence(2, {}, ConstantTail<UnitaryMatrix>{pauli_x()});
  s.expected = {{"extension", "ExtensibleExact"},
                {"localized", true},
                {"stabilization_index", 0},
                {"verification_passed", true},
                {"innerness", "Outer"}};
  return s;
}

Scenario alternating_identity_x() {
  auto s = base("alternating_identity_X", "alternating I, X, I, X, ...; outer and not extensible",
                2, ScenarioKind::UhfProduct);
  s.unitary_sequence = UnitarySequence(2, {}, PeriodicTail<UnitaryMatrix>{{id(2), pauli_x()}});
  s.expected = {{"extension", "NotExtensible"},
                {"lower_bound", std::sqrt(2.0)},
                {"innerness", "Outer"}};
  return s;
}

Scenario diagonal_phase_decay() {
  auto s = base("diagonal_phase_decay",
                "u_k = diag(1, exp(i pi / 2^k)) sampled to depth 13; extensible, not localized", 2,
                ScenarioKind::UhfProduct);
  std::vector<UnitaryMatrix> samples;
  for (int k = 1; k <= 13; ++k) samples.push_back(phase_gate(kPi / std::ldexp(1.0, k)));
  s.unitary_sequence = UnitarySequence(2, {}, SampledTail<UnitaryMatrix>{13, std::move(samples)});
  s.expected = {{"extension", "ExtensibleNumeric"},
                {"localized", false},
                {"verification_passed", true},
                {"innerness", "Inconclusive"},
                {"leaning", "inner"}};
  return s;
}

Permutation flip() { return Permutation::from_one_line({2, 1}); }

Scenario diagonal_alternating() {
  auto s = base("diagonal_alternating_transposition",
                "slot permutations (1 2), e, (1 2), e, ...; not extensible on the diagonal", 2,
                ScenarioKind::DiagonalProduct);
  s.permutation_sequence =
      PermutationSequence(2, {}, PeriodicTail<Permutation>{{flip(), Permutation::identity(2)}});
  s.params.k_max = 4;
  s.expected = {{"diagonal", "NotExtensible"}};
  return s;
}

Scenario diagonal_constant_flip() {
  auto s = base("diagonal_constant_flip", "slot permutation (1 2) everywhere; extends to the flip",
                2, ScenarioKind::DiagonalProduct);
  s.permutation_sequence = PermutationSequence(2, {}, ConstantTail<Permutation>{flip()});
  s.params.k_max = 4;
  s.expected = {{"diagonal", "ExtensiblePermutation"}};
  return s;
}

Scenario identity_sequence() {
  auto s = base("identity_sequence", "all factors identity; extends by v = 1", 2,
                ScenarioKind::UhfProduct);
  s.unitary_sequence = UnitarySequence(2, {}, ConstantTail<UnitaryMatrix>{id(2)});
  s.expected = {{"extension", "ExtensibleExact"},
                {"stabilization_index", 0},
                {"verification_passed", true},
                {"innerness", "Inner"}};
  return s;
}

Scenario diagonal_prefix_flip() {
  auto s = base("diagonal_prefix_flip", "(1 2) in the first slot, identity afterwards", 2,
                ScenarioKind::DiagonalProduct);
  s.permutation_sequence =
      PermutationSequence(2, {flip()}, ConstantTail<Permutation>{Permutation::identity(2)});
  s.params.k_max = 4;
  s.expected = {{"diagonal", "ExtensiblePermutation"}};
  return s;
}

Scenario cyclic_shift_n3() {
  auto s = base("bogolubov_cyclic_shift_n3", "constant cyclic shift on three letters", 3,
                ScenarioKind::UhfProduct);
  s.unitary_sequence = UnitarySequence(
      3, {}, ConstantTail<UnitaryMatrix>{permutation_matrix(Permutation::from_one_line({2, 3, 1}))});
  s.params.k_max = 2;
  s.expected = {{"extension", "ExtensibleExact"},
                {"verification_passed", true},
                {"innerness", "Outer"}};
  return s;
}

Scenario verify_flip_candidate() {
  auto s = base("verify_flip_candidate", "checks v = S_1S_2* + S_2S_1* against constant X", 2,
                ScenarioKind::Verify);
  s.unitary_sequence = UnitarySequence(2, {}, ConstantTail<UnitaryMatrix>{pauli_x()});
  WordPoly v(2);
  v.add({0}, {1}, 1.0);
  v.add({1}, {0}, 1.0);
  s.element_word = v;
  s.expected = {{"verification_passed", true}};
  return s;
}

Scenario verify_wrong_candidate() {
  auto s = base("verify_wrong_candidate", "checks v = 1 against constant X; must fail", 2,
                ScenarioKind::Verify);
  s.unitary_sequence = UnitarySequence(2, {}, ConstantTail<UnitaryMatrix>{pauli_x()});
  s.element = LevelMatrix{1, ComplexMatrix::Identity(2, 2)};
  s.expected = {{"verification_passed", false}};
  return s;
}

Scenario inner_level2() {
  auto s = base("inner_level2_unitary", "u = H (x) diag(1,i); extension u phi(u*) versus Ad(u)", 2,
                ScenarioKind::Inner);
  s.element = LevelMatrix{2, tensor(hadamard().matrix(), phase_gate(kPi / 2).matrix())};
  s.expected = {{"inner_extension_passed", true}};
  return s;
}

UnitarySequence peel_sequence() {
  return UnitarySequence(2, {hadamard(), phase_gate(kPi / 3), mat2(0, C(0, 1), C(0, 1), 0)},
                         ConstantTail<UnitaryMatrix>{phase_gate(kPi / 5)});
}

Scenario peel_telescoped() {
  auto s = base("peel_telescoped", "level-4 telescoped product peeled three times", 2,
                ScenarioKind::Peel);
  s.unitary_sequence = peel_sequence();
  const auto& seq = *s.unitary_sequence;
  ComplexMatrix w = seq.factor_at(1).matrix();
  for (int k = 1; k <= 3; ++k) {
    w = tensor(w, (seq.factor_at(k + 1) * seq.factor_at(k).adjoint()).matrix());
  }
  s.element = LevelMatrix{4, w};
  s.params.k_max = 3;
  s.expected = {{"peel_status", "ok"}};
  return s;
}

Scenario peel_entangled() {
  auto s = base("peel_entangled", "controlled-X across slots 1 and 2; not of telescoped form", 2,
                ScenarioKind::Peel);
  s.unitary_sequence = UnitarySequence(2, {}, ConstantTail<UnitaryMatrix>{id(2)});
  ComplexMatrix cx = ComplexMatrix::Zero(4, 4);
  cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1.0;
  s.element = LevelMatrix{3, tensor(cx, ComplexMatrix::Identity(2, 2))};
  s.params.k_max = 2;
  s.expected = {{"peel_status", "structural_error"}};
  return s;
}

}  // namespace

std::vector<Scenario> witness_catalog() {
  return {inner_finite_support(), bogolubov_constant_x(), alternating_identity_x(),
          diagonal_phase_decay(), diagonal_alternating(),  diagonal_constant_flip(),
          identity_sequence(),    diagonal_prefix_flip(),  cyclic_shift_n3(),
          verify_flip_candidate(), verify_wrong_candidate(), inner_level2(),
          peel_telescoped(),      peel_entangled()};
}

std::optional<Scenario> find_witness(const std::string& name) {
  for (auto& s : witness_catalog()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace cuntz
