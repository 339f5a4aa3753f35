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

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cuntz/matrix_core.hpp"
#include "cuntz/product_autos.hpp"
#include "cuntz/sequence.hpp"
#include "cuntz/words.hpp"

namespace cuntz {

/// Unitary f_1 ⊗ f_2 ⊗ … ⊗ f_L of F_n kept in factored form, so that deep
/// truncations never need the n^L-dimensional matrix. Level 0 is the scalar 1.
class ProductUnitary {
 public:
  ProductUnitary() = default;
  ProductUnitary(int n, std::vector<UnitaryMatrix> factors);

  int n() const { return n_; }
  int level() const { return static_cast<int>(factors_.size()); }
  const std::vector<UnitaryMatrix>& factors() const { return factors_; }

  /// Dense n^L matrix; CapacityError above `tol.max_dim`.
  ComplexMatrix dense(const Tolerances& tol = {}) const;
  /// Word-algebra form, compressed by the unit relation where exact.
  WordPoly word(const Tolerances& tol = {}) const;

 private:
  int n_ = 1;
  std::vector<UnitaryMatrix> factors_;
};

/// d_k = u_{k+1} u_k* with its optimal phase alignment.
struct TelescopeFactor {
  int k = 0;
  UnitaryMatrix d;
  PhaseAlignment alignment;
};

/// d_1 … d_K. Past the prefix of a constant tail, d_k = I exactly.
std::vector<TelescopeFactor> telescope(const UnitarySequence& seq, int K,
                                       const Tolerances& tol = {});

/// ‖e^{iψ_k} d_k − I‖ for k = 1..K, each evaluated by power iteration on the
/// gauged factor. Equals ‖P_{k+1} − P_k ⊗ I‖ for the gauged partial products.
std::vector<double> cauchy_defects(const UnitarySequence& seq, int K,
                                   const Tolerances& tol = {});

struct ExtensibleExact {
  ProductUnitary v;
  bool localized = true;
  int stabilization_index = 0;
  std::vector<double> delta_trace;
};

struct ExtensibleNumeric {
  ProductUnitary v;  // truncation v_K at level K + 1
  double tail_bound = 0;
  double max_ratio = 0;
  std::vector<double> delta_trace;
};

struct NotExtensible {
  TelescopeFactor witness;
  double lower_bound = 0;
  std::vector<double> delta_trace;
};

struct InconclusiveExtension {
  std::vector<double> delta_trace;
  std::vector<double> partial_sums;
  double window_floor = 0;
  std::string reason;
};

/// Outcome of the telescoped-product criterion. Only constant and periodic
/// tails produce certified verdicts (ExtensibleExact / NotExtensible).
struct ExtensionVerdict {
  int K = 0;
  std::variant<ExtensibleExact, ExtensibleNumeric, NotExtensible, InconclusiveExtension> result;

  bool certified() const {
    return std::holds_alternative<ExtensibleExact>(result) ||
           std::holds_alternative<NotExtensible>(result);
  }
  bool extensible() const {
    return std::holds_alternative<ExtensibleExact>(result) ||
           std::holds_alternative<ExtensibleNumeric>(result);
  }
  const std::vector<double>& delta_trace() const;
};

std::string kind_name(const ExtensionVerdict& v);

/// Threshold of the ratio test applied to sampled tails.
inline constexpr double kSummableRatio = 0.9;

/// Decides whether ⊗ Ad(u_i) extends to an endomorphism λ_v of O_n.
///
/// Constant tails are always extensible. A periodic tail is extensible iff
/// every cycle factor c_{j+1} c_j* is a scalar; otherwise the non-scalar
/// factor recurs forever and its δ is a certified lower bound on the Cauchy
/// defect. Sampled tails get a ratio test on the last half of δ_1..δ_K.
ExtensionVerdict analyze_extension(const UnitarySequence& seq, int K,
                                   const Tolerances& tol = {});

/// v_K = u_1 ⊗ e^{iψ_1} d_1 ⊗ … ⊗ e^{iψ_K} d_K with minimal-arc phases.
/// ContractError on certified non-extensible sequences.
ProductUnitary build_extension_unitary(const UnitarySequence& seq, int K,
                                       const Tolerances& tol = {});

/// Same with caller-chosen phases θ_k for d_k (phases.size() == K).
ProductUnitary build_extension_unitary(const UnitarySequence& seq, int K,
                                       const std::vector<double>& phases,
                                       const Tolerances& tol = {});

enum class VerificationMethod { Dense, ProductForm, Symbolic };

std::string method_name(VerificationMethod m);

struct VerificationReport {
  VerificationMethod method = VerificationMethod::Dense;
  int k_max = 0;
  double tol = 0;
  double max_deviation = 0;
  std::vector<double> level_deviation;  // index k − 1
  int worst_level = 0;
  Multiindex worst_alpha, worst_beta;
  std::size_t units_checked = 0;
  bool passed = false;
};

/// Target map on matrix units: Ad(T_k) with T_k a unitary at level t_k ≥ k.
using ConjugationTarget = std::function<std::pair<ComplexMatrix, int>(int k)>;

/// Max entrywise deviation between λ_v(E_αβ) and the target over every
/// matrix unit of levels 1..k_max. v is dense at level `v_level` ≥ 1.
VerificationReport verify_against_conjugation(const ComplexMatrix& v, int n, int v_level,
                                              int k_max, const ConjugationTarget& target,
                                              double tol);

/// Compares λ_v with α_u on all matrix units up to k_max.
VerificationReport verify_extension(const ComplexMatrix& v, int v_level,
                                    const ProductAutomorphism& a, int k_max, double tol);
VerificationReport verify_extension(const WordPoly& v, const ProductAutomorphism& a,
                                    int k_max, double tol);
/// Product-form route: λ_v(E ⊗ I) = Ad(g_1 ⊗ … ⊗ g_k)(E) ⊗ I with
/// g_s = f_s f_{s−1} ⋯ f_1.
VerificationReport verify_extension(const ProductUnitary& v, const ProductAutomorphism& a,
                                    int k_max, double tol);
/// Word-algebra route: lambda_apply against apply_via_words, term by term.
/// Dense route when its estimated cost is small, product-form route otherwise.
VerificationReport verify_extension_auto(const ProductUnitary& v, const ProductAutomorphism& a,
                                         int k_max, double tol);
VerificationReport verify_extension_symbolic(const WordPoly& v, const ProductAutomorphism& a,
                                             int k_max, double tol);

/// u φ(u*), whose λ restricts to Ad(u) on F_n.
WordPoly inner_extension_unitary(const WordPoly& u, double tol = 1e-9);

/// Checks λ_{uφ(u*)} = Ad(u) on matrix units up to k_max (dense route).
VerificationReport verify_inner_extension(const WordPoly& u, int k_max, double tol);

struct Localization {
  bool localized = false;
  int stabilization_index = 0;  // d_k ∈ 𝕋·1 for every k > index
  bool certified = false;
};

/// Eventual scalarity of the telescope factors. ContractError unless the
/// verdict is extensible.
Localization classify_localized(const UnitarySequence& seq, const ExtensionVerdict& verdict,
                                const Tolerances& tol = {});

struct Inner {
  ProductUnitary u;  // rotated prefix product
  std::vector<double> defect_trace;
};

struct Outer {
  int k = 0;
  UnitaryMatrix witness;  // rotated factor that recurs
  double defect = 0;
  std::vector<double> defect_trace;
};

enum class Leaning { None, Inner, Outer };

struct InconclusiveInnerness {
  Leaning leaning = Leaning::None;
  std::optional<ProductUnitary> approximation;
  double tail_bound = 0;
  std::vector<double> defect_trace;
};

struct InnernessVerdict {
  int K = 0;
  std::variant<Inner, Outer, InconclusiveInnerness> result;
};

std::string kind_name(const InnernessVerdict& v);
std::string leaning_name(Leaning l);

/// Innerness of ⊗ Ad(u_i) after rotating each u_i so that 1 ∈ σ(u_i):
/// inner iff u'_1 ⊗ … ⊗ u'_K converges, i.e. the defects ‖u'_k − 1‖ vanish
/// on the tail.
InnernessVerdict analyze_innerness(const UnitarySequence& seq, int K,
                                   const Tolerances& tol = {});

struct PeelingTrace {
  int k = 0;                 // w = P_{k−1} φ^k(z_k)
  ComplexMatrix z;           // residual at level L − k, phase fixed
  cplx tau_z;                // τ(z) ≥ 0 after phase fixing
  double phase_fix = 0;      // z = e^{i phase_fix} z_raw
  double structural_residual = 0;
  double expectation_residual = 0;  // ‖E_k(w) − P_{k−1} τ(z_k)‖_max
  ComplexMatrix partial;     // gauged P_{k−1} at level k
};

/// Peels u_1, d_1, …, d_{k−1} off w for k = 1..k_max < L, checking
/// E_k(w) = (u_1 ⊗ d_1 ⊗ … ⊗ d_{k−1}) τ(z_k). StructuralError names the
/// first level at which w is not of the form P ⊗ I · (1 ⊗ z).
std::vector<PeelingTrace> peel_residuals(const ComplexMatrix& w, int w_level,
                                         const UnitarySequence& seq, int k_max,
                                         const Tolerances& tol = {});

/// z·v for a phase z. λ_{zv} and λ_v agree on F_n.
WordPoly gauge_compose(const WordPoly& v, cplx z, double tol = 1e-9);

/// E_k on a level-m matrix: partial trace over the last m − k slots / n^{m−k}.
ComplexMatrix cond_expectation_matrix(int n, int m, int k, const ComplexMatrix& x);

}  // namespace cuntz
