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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any
// failure. Tolerances are fixed here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cuntz/catalog.hpp"
#include "cuntz/diagonal.hpp"
#include "cuntz/extension.hpp"
#include "cuntz/report.hpp"
#include "cuntz/scenario.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cuntz;
using namespace cuntz::testing;

namespace {

constexpr double kVerifyTol = 1e-10;
constexpr double kWitnessTol = 1e-9;
constexpr double kPeelTol = 1e-9;
constexpr double kPlantedTol = 1e-8;
constexpr double kScalarTol = 1e-9;
constexpr double kGaugeFixTol = 1e-14;  // λ_{z1} on units: z^k z̄^k rounding only
constexpr double kPictureTol = 1e-12;   // word vs matrix evaluation of α_u

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
    pass_ = pass_ && ok;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  Outcome done() const { return {pass_, pass_ ? notes_ : "first failure: " + failure_}; }

 private:
  bool pass_ = true;
  std::string failure_;
  std::string notes_;
};

std::string fmt(double x, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

UnitaryMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return UnitaryMatrix::validated(m);
}

Permutation flip() { return Permutation::from_one_line({2, 1}); }

UnitarySequence decaying_phases(int depth) {
  std::vector<UnitaryMatrix> s;
  for (int k = 1; k <= depth; ++k) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(1, 1) = std::polar(1.0, kPi / std::ldexp(1.0, k));
    s.push_back(UnitaryMatrix::validated(m));
  }
  return UnitarySequence(2, {}, SampledTail<UnitaryMatrix>{depth, std::move(s)});
}

std::vector<WordPoly> units_up_to(int n, int k_max) {
  std::vector<WordPoly> out;
  for (int k = 1; k <= k_max; ++k) {
    for (Eigen::Index a = 0; a < ipow(n, k); ++a) {
      for (Eigen::Index b = 0; b < ipow(n, k); ++b) {
        out.push_back(WordPoly::monomial(n, index_word(a, n, k), index_word(b, n, k)));
      }
    }
  }
  return out;
}

Outcome forward_constant_tails() {
  Rng rng(1001);
  Tally t;
  double worst = 0;
  for (int i = 0; i < 25; ++i) {
    const int n = 2 + i % 2;
    const auto seq = random_constant_tail(n, 3, rng);
    const auto v = build_extension_unitary(seq, std::max(1, seq.prefix_length()));
    const auto rep = verify_extension_auto(v, ProductAutomorphism(seq), 3, kVerifyTol);
    worst = std::max(worst, rep.max_deviation);
    t.check(rep.passed, "sequence " + std::to_string(i) + " deviation " + fmt(rep.max_deviation));
  }
  t.note("25 sequences, max deviation " + fmt(worst));
  return t.done();
}

Outcome bogolubov_case() {
  Tally t;
  const UnitarySequence seq(2, {}, ConstantTail<UnitaryMatrix>{pauli_x()});
  const auto verdict = analyze_extension(seq, 12);
  const auto* ex = std::get_if<ExtensibleExact>(&verdict.result);
  t.check(ex != nullptr, "verdict " + kind_name(verdict));
  if (!ex) return t.done();
  t.check(ex->v.level() == 1 && ex->v.dense() == pauli_x().matrix(), "v differs from X");
  const WordPoly x = from_matrix(2, 1, pauli_x().matrix());
  const WordPoly v = ex->v.word();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto unit = WordPoly::monomial(2, {i}, {j});
      t.check(equal(lambda_apply(v, unit), x * unit * adjoint(x), 0.0),
              "λ_v(S_iS_j*) for i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1));
    }
  }
  const auto inner = analyze_innerness(seq, 12);
  t.check(std::holds_alternative<Outer>(inner.result), "innerness " + kind_name(inner));
  t.note("v = X, symbolic images exact, innerness " + kind_name(inner));
  return t.done();
}

Outcome non_extensibility_witness() {
  Tally t;
  const UnitarySequence seq(2, {}, PeriodicTail<UnitaryMatrix>{{UnitaryMatrix::identity(2), pauli_x()}});
  const auto verdict = analyze_extension(seq, 12);
  const auto* ne = std::get_if<NotExtensible>(&verdict.result);
  t.check(ne != nullptr && verdict.certified(), "verdict " + kind_name(verdict));
  if (!ne) return t.done();
  t.check(std::abs(ne->lower_bound - std::sqrt(2.0)) <= kWitnessTol,
          "lower bound " + fmt(ne->lower_bound));
  double floor = 1e300;
  for (double d : cauchy_defects(seq, 12)) floor = std::min(floor, d);
  t.check(floor >= std::sqrt(2.0) - kWitnessTol, "Cauchy defect dropped to " + fmt(floor));
  // Dense partial products of the same factors for the first steps.
  std::vector<UnitaryMatrix> samples;
  for (int k = 1; k <= 7; ++k) samples.push_back(seq.factor_at(k));
  const UnitarySequence sampled(2, {}, SampledTail<UnitaryMatrix>{7, samples});
  for (int K = 1; K <= 6; ++K) {
    const ComplexMatrix big = build_extension_unitary(sampled, K).dense();
    const ComplexMatrix small = build_extension_unitary(sampled, K - 1).dense();
    const double d = svd_norm(big - kron_loops(small, ComplexMatrix::Identity(2, 2)));
    t.check(d >= std::sqrt(2.0) - kWitnessTol, "dense partial-product defect " + fmt(d));
  }
  t.note("delta = " + fmt(ne->lower_bound, 12) + ", window minimum " + fmt(floor, 12));
  return t.done();
}

Outcome inner_extension_formula() {
  Rng rng(1004);
  Tally t;
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    const int n = i < 7 ? 2 : 3;
    const int level = n == 2 ? 1 + i % 2 : 1;
    const WordPoly u = from_matrix(n, level, haar_matrix(ipow(n, level), rng));
    const auto rep = verify_inner_extension(u, 3, kVerifyTol);
    worst = std::max(worst, rep.max_deviation);
    t.check(rep.passed, "unitary " + std::to_string(i) + " deviation " + fmt(rep.max_deviation));
  }
  t.note("10 unitaries, max deviation " + fmt(worst));
  return t.done();
}

Outcome localization() {
  Tally t;
  int count = 0;
  for (const auto& s : witness_catalog()) {
    if (!s.unitary_sequence || !s.unitary_sequence->is_constant()) continue;
    const auto& seq = *s.unitary_sequence;
    const auto v = analyze_extension(seq, s.params.depth);
    if (!v.extensible()) continue;
    const auto loc = classify_localized(seq, v);
    t.check(loc.localized && loc.stabilization_index == seq.prefix_length(), s.name);
    ++count;
  }
  Rng rng(1005);
  for (int i = 0; i < 10; ++i) {
    const auto seq = random_constant_tail(2 + i % 2, 3, rng);
    const auto loc = classify_localized(seq, analyze_extension(seq, 12));
    t.check(loc.localized && loc.certified && loc.stabilization_index == seq.prefix_length(),
            "random constant tail " + std::to_string(i));
    ++count;
  }

  const int K = 12;
  const auto decay = decaying_phases(K + 1);
  const auto verdict = analyze_extension(decay, K);
  const auto* num = std::get_if<ExtensibleNumeric>(&verdict.result);
  t.check(num != nullptr, "decaying phases verdict " + kind_name(verdict));
  if (!num) return t.done();
  t.check(!classify_localized(decay, verdict).localized, "decaying phases classified localized");
  const double bound = kPi / std::ldexp(1.0, K + 1) * 2;
  t.check(num->tail_bound <= bound, "tail bound " + fmt(num->tail_bound));
  const auto rep = verify_extension(num->v, ProductAutomorphism(decay), 3, 3 * num->tail_bound);
  t.check(rep.passed, "truncated verification deviation " + fmt(rep.max_deviation));
  t.note(std::to_string(count) + " constant-tail sequences localized; decay tail bound " +
         fmt(num->tail_bound) + " <= " + fmt(bound));
  return t.done();
}

Outcome peeling() {
  Rng rng(1006);
  Tally t;
  double worst_tau = 0, worst_ek = 0, worst_r = 0;
  for (int i = 0; i < 6; ++i) {
    const int n = 2;
    const auto c = random_unitary(n, rng);
    std::vector<UnitaryMatrix> prefix;
    for (int k = 0; k < 3; ++k) prefix.push_back(c.scaled(std::polar(1.0, random_phase(rng))));
    const UnitarySequence seq(n, prefix, ConstantTail<UnitaryMatrix>{c});
    const ComplexMatrix w = build_extension_unitary(seq, 3).dense();
    for (const auto& s : peel_residuals(w, 4, seq, 3)) {
      const double tau_err = std::abs(s.tau_z - 1.0);
      const double ek_err = max_abs(partial_trace_tail(w, ipow(n, 4 - s.k)) - s.partial * s.tau_z);
      worst_tau = std::max(worst_tau, tau_err);
      worst_ek = std::max(worst_ek, ek_err);
      t.check(tau_err <= kPeelTol, "tau(z) off by " + fmt(tau_err));
      t.check(ek_err <= kPeelTol, "E_k(w) residual " + fmt(ek_err));
    }
  }
  for (int i = 0; i < 6; ++i) {
    const auto seq = random_constant_tail(2, 2, rng);
    const ComplexMatrix v = build_extension_unitary(seq, 2).dense();
    const ComplexMatrix r = haar_matrix(2, rng);
    const auto trace = peel_residuals(kron_loops(v, r), 4, seq, 3);
    const ComplexMatrix& z = trace.back().z;
    const cplx c = (r.adjoint() * z).trace() / 2.0;
    const double err = max_abs(z - (c / std::abs(c)) * r);
    worst_r = std::max(worst_r, err);
    t.check(err <= kPlantedTol, "planted residual error " + fmt(err));
  }
  t.note("tau error " + fmt(worst_tau) + ", E_k error " + fmt(worst_ek) + ", planted r error " +
         fmt(worst_r));
  return t.done();
}

Outcome gauge_kernel() {
  Rng rng(1007);
  Tally t;
  double worst = 0;
  const auto units = units_up_to(2, 3);
  for (int i = 0; i < 8; ++i) {
    const cplx z = std::polar(1.0, random_phase(rng));
    const WordPoly zv = gauge_compose(WordPoly::one(2), z);
    for (const auto& u : units) worst = std::max(worst, max_deviation(lambda_apply(zv, u), u));
  }
  t.check(worst <= kGaugeFixTol, "λ_{z1} moved a unit by " + fmt(worst));
  double worst_res = 0;
  for (int i = 0; i < 8; ++i) {
    const auto seq = random_sampled(2 + i % 2, 4, rng);
    const auto v1 = build_extension_unitary(seq, 3).dense();
    std::vector<double> phases;
    for (int k = 0; k < 3; ++k) phases.push_back(random_phase(rng));
    const auto v2 = build_extension_unitary(seq, 3, phases).dense();
    const ComplexMatrix q = v2 * v1.adjoint();
    const auto phase = is_scalar_multiple_of_identity(q, kScalarTol);
    t.check(phase.has_value(), "gauges differ by more than a phase");
    if (phase) {
      const double res = max_abs(q - std::polar(1.0, *phase) * ComplexMatrix::Identity(q.rows(), q.cols()));
      worst_res = std::max(worst_res, res);
    }
  }
  t.note("gauge fix deviation " + fmt(worst) + ", scalar residual " + fmt(worst_res));
  return t.done();
}

Outcome diagonal_extension() {
  Tally t;
  const PermutationSequence cflip(2, {}, ConstantTail<Permutation>{flip()});
  const auto v = decide_extension(cflip);
  t.check(v.extensible(), "constant flip verdict " + kind_name(v));
  if (v.extensible()) {
    const auto rep = verify_diagonal_extension(build_permutation_unitary(v), cflip, 4);
    t.check(rep.passed && rep.checked == 2 + 4 + 8 + 16, "constant flip verification");
  }
  const PermutationSequence alt(2, {}, PeriodicTail<Permutation>{{flip(), Permutation::identity(2)}});
  const auto a = decide_extension(alt);
  t.check(std::holds_alternative<DiagonalNotExtensible>(a.result), "alternating verdict " + kind_name(a));

  Rng rng(1008);
  for (int i = 0; i < 10; ++i) {
    const int n = 2 + i % 2;
    std::vector<Permutation> prefix;
    const int m = uniform_int(0, 3, rng);
    for (int j = 0; j < m; ++j) prefix.push_back(random_permutation(n, rng));
    const PermutationSequence seq(n, prefix, ConstantTail<Permutation>{random_permutation(n, rng)});
    const auto d = decide_extension(seq);
    t.check(d.extensible(), "random sequence not extensible");
    if (!d.extensible()) continue;
    const auto& ext = std::get<ExtensiblePermutation>(d.result);
    for (int k = 1; k <= 4; ++k) {
      t.check(slot_permutation(ext, n, k) == seq.factor_at(k),
              "telescoping identity at k=" + std::to_string(k));
    }
  }
  t.note("flip verified to depth 4, alternating rejected, 10 telescoping checks");
  return t.done();
}

Outcome fixed_points() {
  Rng rng(1009);
  Tally t;
  for (int i = 0; i < 10; ++i) {
    const int n = 2 + i % 2, level = 1 + i % 2;
    ComplexMatrix d = ComplexMatrix::Zero(ipow(n, level), ipow(n, level));
    for (Eigen::Index j = 0; j < d.rows(); ++j) d(j, j) = std::polar(1.0, random_phase(rng));
    const auto r = fixed_point_test(from_matrix(n, level, d), level + 1);
    t.check(r.fixes_diagonal && r.v_in_diagonal, "diagonal unitary " + std::to_string(i));
  }
  for (int i = 0; i < 10; ++i) {
    const int n = 2 + i % 2, level = 1 + i % 2;
    const auto p = random_non_identity_permutation(static_cast<int>(ipow(n, level)), rng);
    const WordPoly v = from_matrix(n, level, permutation_matrix(p).matrix());
    const auto r = fixed_point_test(v, level + 1);
    t.check(!r.fixes_diagonal && r.counterexample.has_value(),
            "permutation unitary " + std::to_string(i));
    if (r.counterexample) {
      const auto proj = WordPoly::monomial(n, *r.counterexample, *r.counterexample);
      t.check(!equal(lambda_apply(v, proj), proj, 1e-10), "counterexample is fixed");
    }
  }
  t.note("10 diagonal and 10 permutation unitaries");
  return t.done();
}

Outcome picture_equivalence() {
  Rng rng(1010);
  Tally t;
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const int n = i % 4 == 3 ? 3 : 2;
    const int k_max = 3;
    std::vector<UnitaryMatrix> prefix, cycle;
    for (int j = 0; j < 2; ++j) prefix.push_back(random_unitary(n, rng));
    for (int j = 0; j < 2; ++j) cycle.push_back(random_unitary(n, rng));
    const ProductAutomorphism alpha(UnitarySequence(n, prefix, PeriodicTail<UnitaryMatrix>{cycle}));
    for (const auto& u : units_up_to(n, k_max)) {
      const int k = u.level();
      const double dev =
          max_abs(to_matrix(apply_via_words(alpha, u), k) - apply_level(alpha, k, to_matrix(u, k)));
      worst = std::max(worst, dev);
    }
  }
  t.check(worst <= kPictureTol, "word vs matrix picture deviation " + fmt(worst));
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 2;
    const auto x = random_polynomial<cplx>(n, 2, 6, true, rng);
    const auto y = random_polynomial<cplx>(n, 2, 6, true, rng);
    t.check(to_matrix(x * y, 2) == to_matrix(x, 2) * to_matrix(y, 2), "level-2 product mismatch");
  }
  t.note("20 sequences, max deviation " + fmt(worst) + "; 20 exact level-2 products");
  return t.done();
}

Outcome catalog_regression() {
  Tally t;
  const auto catalog = witness_catalog();
  t.check(catalog.size() >= 6, "catalog too small");
  for (const auto& s : catalog) {
    const auto first = run_scenario(s);
    const auto mism = check_expectations(s, first);
    t.check(mism.empty(), s.name + (mism.empty() ? "" : ": " + mism.front()));
    t.check(emit_report(first, ReportFormat::Machine) ==
                emit_report(run_scenario(s), ReportFormat::Machine),
            s.name + " machine report differs between runs");
  }
  t.note(std::to_string(catalog.size()) + " scenarios");
  return t.done();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"forward extension for constant tails", forward_constant_tails},
      {"Bogolubov constant-X case", bogolubov_case},
      {"non-extensibility witness", non_extensibility_witness},
      {"inner extension formula", inner_extension_formula},
      {"localization", localization},
      {"peeling recursion", peeling},
      {"gauge kernel", gauge_kernel},
      {"diagonal permutation extension", diagonal_extension},
      {"fixed-point test", fixed_points},
      {"word and matrix pictures agree", picture_equivalence},
      {"catalog regression", catalog_regression},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s [%2zu] %s (%s) %.0f ms\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), ms);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
