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

#include "cuntz/extension.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cuntz {

namespace {

// δ values below this are rounding noise in the ratio test.
constexpr double kNoise = 1e-13;

struct RatioTest {
  bool summable = false;
  double max_ratio = 0;
  double tail_bound = 0;
  double floor = 0;
};

// Ratio test on the last half of a trace t_1..t_K (1-based indices
// K/2+1..K). Geometric extrapolation t_K ρ/(1−ρ) bounds the remainder.
RatioTest ratio_test(const std::vector<double>& trace) {
  const std::size_t K = trace.size();
  const std::size_t start = K / 2;
  if (K < 2 || K - start < 2) throw DomainError("ratio test: window has fewer than two samples");
  RatioTest out;
  out.floor = std::numeric_limits<double>::infinity();
  for (std::size_t i = start; i < K; ++i) out.floor = std::min(out.floor, trace[i]);
  for (std::size_t i = start; i + 1 < K; ++i) {
    const double a = trace[i], b = trace[i + 1];
    double r;
    if (b <= kNoise) {
      r = 0;
    } else if (a <= kNoise) {
      r = std::numeric_limits<double>::infinity();
    } else {
      r = b / a;
    }
    out.max_ratio = std::max(out.max_ratio, r);
  }
  out.summable = out.max_ratio <= kSummableRatio;
  if (out.summable) out.tail_bound = trace.back() * out.max_ratio / (1.0 - out.max_ratio);
  return out;
}

UnitaryMatrix gauged(const TelescopeFactor& f) {
  return f.d.scaled(std::polar(1.0, f.alignment.psi));
}

bool near_identity(const UnitaryMatrix& u, double tol) {
  return operator_norm(u.matrix() - ComplexMatrix::Identity(u.dim(), u.dim())) <= tol;
}

// Cycle factors c_{j+1} c_j* of a periodic tail (wrapping around).
std::vector<TelescopeFactor> cycle_factors(const UnitarySequence& seq, const Tolerances& tol) {
  const auto& cycle = std::get<PeriodicTail<UnitaryMatrix>>(seq.tail()).cycle;
  const std::size_t p = cycle.size();
  std::vector<TelescopeFactor> out;
  for (std::size_t j = 0; j < p; ++j) {
    TelescopeFactor f;
    f.k = seq.prefix_length() + 1 + static_cast<int>(j);
    f.d = cycle[(j + 1) % p] * cycle[j].adjoint();
    f.alignment = phase_align_to_identity(f.d, tol);
    out.push_back(std::move(f));
  }
  return out;
}

// Non-scalar cycle factor of largest δ, if any.
std::optional<TelescopeFactor> recurring_witness(const UnitarySequence& seq,
                                                 const Tolerances& tol) {
  std::optional<TelescopeFactor> worst;
  for (auto& f : cycle_factors(seq, tol)) {
    if (is_scalar_multiple_of_identity(f.d.matrix(), tol.validation)) continue;
    if (!worst || f.alignment.delta > worst->alignment.delta) worst = std::move(f);
  }
  return worst;
}

// u_1, e^{iψ_1}d_1, …, e^{iψ_K}d_K; factors past the prefix are exactly I
// when the tail is certified extensible.
std::vector<UnitaryMatrix> minimal_arc_factors(const UnitarySequence& seq, int K,
                                               const Tolerances& tol) {
  const auto tel = telescope(seq, K, tol);
  const bool exact_tail = seq.certifiable();
  std::vector<UnitaryMatrix> f{seq.factor_at(1)};
  for (const auto& t : tel) {
    if (exact_tail && t.k > seq.prefix_length()) {
      f.push_back(UnitaryMatrix::identity(seq.n()));
    } else {
      f.push_back(gauged(t));
    }
  }
  return f;
}

ProductUnitary trimmed(int n, std::vector<UnitaryMatrix> f, double tol) {
  while (!f.empty() && near_identity(f.back(), tol)) f.pop_back();
  return ProductUnitary(n, std::move(f));
}

void record(VerificationReport& rep, int k, double dev, const Multiindex& a,
            const Multiindex& b) {
  auto& lvl = rep.level_deviation[static_cast<std::size_t>(k - 1)];
  lvl = std::max(lvl, dev);
  ++rep.units_checked;
  if (dev > rep.max_deviation || rep.worst_level == 0) {
    if (dev >= rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_level = k;
      rep.worst_alpha = a;
      rep.worst_beta = b;
    }
  }
}

VerificationReport start_report(VerificationMethod m, int k_max, double tol) {
  if (k_max < 1) throw DomainError("verification: k_max must be >= 1");
  VerificationReport rep;
  rep.method = m;
  rep.k_max = k_max;
  rep.tol = tol;
  rep.level_deviation.assign(static_cast<std::size_t>(k_max), 0.0);
  return rep;
}

}  // namespace

ProductUnitary::ProductUnitary(int n, std::vector<UnitaryMatrix> factors)
    : n_(n), factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (f.dim() != n_) throw ValidationError("product unitary: factor has the wrong dimension");
  }
}

ComplexMatrix ProductUnitary::dense(const Tolerances& tol) const {
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors_) m = tensor(m, f.matrix(), tol);
  return m;
}

WordPoly ProductUnitary::word(const Tolerances& tol) const {
  if (factors_.empty()) return WordPoly::one(n_);
  return compress(from_matrix(n_, level(), dense(tol)));
}

const std::vector<double>& ExtensionVerdict::delta_trace() const {
  return std::visit([](const auto& r) -> const std::vector<double>& { return r.delta_trace; },
                    result);
}

std::string kind_name(const ExtensionVerdict& v) {
  switch (v.result.index()) {
    case 0: return "ExtensibleExact";
    case 1: return "ExtensibleNumeric";
    case 2: return "NotExtensible";
    default: return "Inconclusive";
  }
}

std::vector<TelescopeFactor> telescope(const UnitarySequence& seq, int K,
                                       const Tolerances& tol) {
  if (K < 0) throw DomainError("telescope: negative depth");
  seq.require_depth(K + 1);
  std::vector<TelescopeFactor> out;
  out.reserve(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) {
    TelescopeFactor f;
    f.k = k;
    if (seq.is_constant() && k > seq.prefix_length()) {
      f.d = UnitaryMatrix::identity(seq.n());
    } else {
      f.d = seq.factor_at(k + 1) * seq.factor_at(k).adjoint();
      f.alignment = phase_align_to_identity(f.d, tol);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<double> cauchy_defects(const UnitarySequence& seq, int K, const Tolerances& tol) {
  std::vector<double> out;
  const ComplexMatrix id = ComplexMatrix::Identity(seq.n(), seq.n());
  for (const auto& f : telescope(seq, K, tol)) {
    out.push_back(operator_norm(gauged(f).matrix() - id, tol));
  }
  return out;
}

ExtensionVerdict analyze_extension(const UnitarySequence& seq, int K, const Tolerances& tol) {
  if (K < 1) throw DomainError("analyze_extension: depth K must be >= 1");
  const auto tel = telescope(seq, K, tol);
  std::vector<double> deltas;
  for (const auto& f : tel) deltas.push_back(f.alignment.delta);
  const int m = seq.prefix_length();

  ExtensionVerdict out;
  out.K = K;
  if (seq.is_constant() || (seq.is_periodic() && !recurring_witness(seq, tol))) {
    ExtensibleExact ex{trimmed(seq.n(), minimal_arc_factors(seq, std::max(m, 1), tol),
                               tol.validation),
                       true, m, deltas};
    out.result = std::move(ex);
    return out;
  }
  if (seq.is_periodic()) {
    auto w = *recurring_witness(seq, tol);
    const double bound = w.alignment.delta;
    out.result = NotExtensible{std::move(w), bound, deltas};
    return out;
  }

  const RatioTest rt = ratio_test(deltas);
  if (rt.summable) {
    out.result = ExtensibleNumeric{build_extension_unitary(seq, K, tol), rt.tail_bound,
                                   rt.max_ratio, deltas};
    return out;
  }
  InconclusiveExtension inc;
  inc.delta_trace = deltas;
  double s = 0;
  for (double d : deltas) inc.partial_sums.push_back(s += d);
  inc.window_floor = rt.floor;
  inc.reason = rt.floor > tol.validation
                   ? "delta stays above the window floor; divergence suspected (sampled tail, "
                     "not certified)"
                   : "no geometric decay of delta on the window";
  out.result = std::move(inc);
  return out;
}

ProductUnitary build_extension_unitary(const UnitarySequence& seq, int K, const Tolerances& tol) {
  if (seq.is_periodic()) {
    if (auto w = recurring_witness(seq, tol)) {
      std::ostringstream msg;
      msg << "build_extension_unitary: sequence is not extensible (factor d_" << w->k
          << " with delta " << w->alignment.delta << " recurs)";
      throw ContractError(msg.str());
    }
  }
  return ProductUnitary(seq.n(), minimal_arc_factors(seq, K, tol));
}

ProductUnitary build_extension_unitary(const UnitarySequence& seq, int K,
                                       const std::vector<double>& phases,
                                       const Tolerances& tol) {
  if (static_cast<int>(phases.size()) != K) {
    throw ValidationError("build_extension_unitary: need one phase per telescope factor");
  }
  if (seq.is_periodic() && recurring_witness(seq, tol)) {
    throw ContractError("build_extension_unitary: sequence is not extensible");
  }
  std::vector<UnitaryMatrix> f{seq.factor_at(1)};
  for (const auto& t : telescope(seq, K, tol)) {
    f.push_back(t.d.scaled(std::polar(1.0, phases[static_cast<std::size_t>(t.k - 1)])));
  }
  return ProductUnitary(seq.n(), std::move(f));
}

std::string method_name(VerificationMethod m) {
  switch (m) {
    case VerificationMethod::Dense: return "dense";
    case VerificationMethod::ProductForm: return "product_form";
    case VerificationMethod::Symbolic: return "symbolic";
  }
  return "dense";
}

VerificationReport verify_against_conjugation(const ComplexMatrix& v, int n, int v_level,
                                              int k_max, const ConjugationTarget& target,
                                              double tol) {
  VerificationReport rep = start_report(VerificationMethod::Dense, k_max, tol);
  for (int k = 1; k <= k_max; ++k) {
    ComplexMatrix w = lambda_power_matrix(v, n, v_level, k);
    int image_level = lambda_image_level(v_level, k);
    auto [t_mat, t_level] = target(k);
    if (t_level < k || t_mat.rows() != ipow(n, t_level)) {
      throw ValidationError("verification: target unitary has an inconsistent level");
    }
    const int common = std::max(image_level, t_level);
    if (image_level < common) {
      w = embed_level(w, n, image_level, common);
      image_level = common;
    }
    const Eigen::Index units = ipow(n, k);
    const Eigen::Index block = ipow(n, common - k);
    const Eigen::Index t_block = ipow(n, t_level - k);
    const Eigen::Index t_dim = t_mat.rows();
    const Eigen::Index pad = ipow(n, common - t_level);
    for (Eigen::Index a = 0; a < units; ++a) {
      for (Eigen::Index b = 0; b < units; ++b) {
        ComplexMatrix d = w.middleCols(a * block, block) * w.middleCols(b * block, block).adjoint();
        const ComplexMatrix t = t_mat.middleCols(a * t_block, t_block) *
                                t_mat.middleCols(b * t_block, t_block).adjoint();
        for (Eigen::Index q = 0; q < t_dim; ++q) {
          for (Eigen::Index p = 0; p < t_dim; ++p) {
            d.block(p * pad, q * pad, pad, pad).diagonal().array() -= t(p, q);
          }
        }
        record(rep, k, d.cwiseAbs().maxCoeff(), index_word(a, n, k), index_word(b, n, k));
      }
    }
  }
  rep.passed = rep.max_deviation <= tol;
  return rep;
}

VerificationReport verify_extension(const ComplexMatrix& v, int v_level,
                                    const ProductAutomorphism& a, int k_max, double tol) {
  const int n = a.n();
  ComplexMatrix vv = v;
  int level = v_level;
  if (level == 0) {
    vv = v(0, 0) * ComplexMatrix::Identity(n, n);
    level = 1;
  }
  a.sequence().require_depth(k_max);
  const auto target = [&](int k) { return std::make_pair(product_unitary(a.sequence(), k), k); };
  return verify_against_conjugation(vv, n, level, k_max, target, tol);
}

VerificationReport verify_extension(const WordPoly& v, const ProductAutomorphism& a,
                                    int k_max, double tol) {
  const int level = std::max(1, v.level());
  return verify_extension(to_matrix(v, level), level, a, k_max, tol);
}

VerificationReport verify_extension(const ProductUnitary& v, const ProductAutomorphism& a,
                                    int k_max, double tol) {
  VerificationReport rep = start_report(VerificationMethod::ProductForm, k_max, tol);
  const int n = a.n();
  a.sequence().require_depth(k_max);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (int k = 1; k <= k_max; ++k) {
    ComplexMatrix g = ComplexMatrix::Identity(1, 1);
    ComplexMatrix slot = id;
    for (int s = 1; s <= k; ++s) {
      if (s <= v.level()) slot = v.factors()[static_cast<std::size_t>(s - 1)].matrix() * slot;
      g = tensor(g, slot);
    }
    const ComplexMatrix u = product_unitary(a.sequence(), k);
    const Eigen::Index units = ipow(n, k);
    for (Eigen::Index al = 0; al < units; ++al) {
      for (Eigen::Index be = 0; be < units; ++be) {
        const ComplexMatrix img = g.col(al) * g.col(be).adjoint();
        const ComplexMatrix tgt = u.col(al) * u.col(be).adjoint();
        record(rep, k, max_abs_diff(img, tgt), index_word(al, n, k), index_word(be, n, k));
      }
    }
  }
  rep.passed = rep.max_deviation <= tol;
  return rep;
}

VerificationReport verify_extension_auto(const ProductUnitary& v, const ProductAutomorphism& a,
                                         int k_max, double tol) {
  // Dense cost: Σ_k n^{2k} · N_k² · r with N_k = n^{L+k−1}, r = n^{L−1}.
  const int n = a.n();
  const int level = std::max(1, v.level());
  double cost = 0;
  for (int k = 1; k <= k_max; ++k) {
    const double units = std::pow(double(n), 2 * k);
    const double big = std::pow(double(n), level + k - 1);
    cost += units * big * big * std::pow(double(n), level - 1);
  }
  if (cost > 5e7) return verify_extension(v, a, k_max, tol);
  return verify_extension(v.dense(), v.level(), a, k_max, tol);
}

VerificationReport verify_extension_symbolic(const WordPoly& v, const ProductAutomorphism& a,
                                             int k_max, double tol) {
  VerificationReport rep = start_report(VerificationMethod::Symbolic, k_max, tol);
  const int n = a.n();
  for (int k = 1; k <= k_max; ++k) {
    const Eigen::Index units = ipow(n, k);
    for (Eigen::Index al = 0; al < units; ++al) {
      for (Eigen::Index be = 0; be < units; ++be) {
        const auto alpha = index_word(al, n, k), beta = index_word(be, n, k);
        const auto unit = WordPoly::monomial(n, alpha, beta);
        const double dev = max_deviation(lambda_apply(v, unit), apply_via_words(a, unit));
        record(rep, k, dev, alpha, beta);
      }
    }
  }
  rep.passed = rep.max_deviation <= tol;
  return rep;
}

WordPoly inner_extension_unitary(const WordPoly& u, double tol) {
  if (!u.balanced()) throw ValidationError("inner_extension_unitary: u must lie in F_n");
  const auto one = WordPoly::one(u.alphabet());
  if (!equal(u * adjoint(u), one, tol) || !equal(adjoint(u) * u, one, tol)) {
    throw ValidationError("inner_extension_unitary: u is not unitary");
  }
  return u * phi(adjoint(u));
}

VerificationReport verify_inner_extension(const WordPoly& u, int k_max, double tol) {
  const int n = u.alphabet();
  const int lu = std::max(1, u.level());
  const ComplexMatrix um = to_matrix(u, lu);
  const WordPoly w = inner_extension_unitary(u);
  const ComplexMatrix wm = to_matrix(w, lu + 1);
  const auto target = [&](int k) {
    const int t = std::max(k, lu);
    return std::make_pair(embed_level(um, n, lu, t), t);
  };
  return verify_against_conjugation(wm, n, lu + 1, k_max, target, tol);
}

Localization classify_localized(const UnitarySequence& seq, const ExtensionVerdict& verdict,
                                const Tolerances& tol) {
  if (!verdict.extensible()) {
    throw ContractError("classify_localized: verdict is not extensible");
  }
  Localization out;
  if (std::holds_alternative<ExtensibleExact>(verdict.result)) {
    out.localized = true;
    out.stabilization_index = seq.prefix_length();
    out.certified = true;
    return out;
  }
  const auto tel = telescope(seq, verdict.K, tol);
  int last_non_scalar = 0;
  for (const auto& f : tel) {
    if (!is_scalar_multiple_of_identity(f.d.matrix(), tol.validation)) last_non_scalar = f.k;
  }
  out.stabilization_index = last_non_scalar;
  out.localized = last_non_scalar <= verdict.K / 2;
  out.certified = false;
  return out;
}

std::string kind_name(const InnernessVerdict& v) {
  switch (v.result.index()) {
    case 0: return "Inner";
    case 1: return "Outer";
    default: return "Inconclusive";
  }
}

std::string leaning_name(Leaning l) {
  switch (l) {
    case Leaning::Inner: return "inner";
    case Leaning::Outer: return "outer";
    default: return "none";
  }
}

InnernessVerdict analyze_innerness(const UnitarySequence& seq, int K, const Tolerances& tol) {
  if (K < 1) throw DomainError("analyze_innerness: depth K must be >= 1");
  seq.require_depth(K);
  const int n = seq.n();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const auto defect = [&](const UnitaryMatrix& u) { return operator_norm(u.matrix() - id, tol); };

  std::vector<UnitaryMatrix> rotated;
  std::vector<double> trace;
  for (int k = 1; k <= K; ++k) {
    rotated.push_back(rotate_to_contain_one(seq.factor_at(k), tol));
    trace.push_back(defect(rotated.back()));
  }
  const int m = seq.prefix_length();
  const auto prefix_product = [&]() {
    std::vector<UnitaryMatrix> f;
    for (int k = 1; k <= m; ++k) f.push_back(rotate_to_contain_one(seq.factor_at(k), tol));
    return trimmed(n, std::move(f), tol.validation);
  };

  InnernessVerdict out;
  out.K = K;
  if (seq.certifiable()) {
    std::vector<UnitaryMatrix> tail;
    if (const auto* c = std::get_if<ConstantTail<UnitaryMatrix>>(&seq.tail())) {
      tail.push_back(c->value);
    } else {
      tail = std::get<PeriodicTail<UnitaryMatrix>>(seq.tail()).cycle;
    }
    std::optional<Outer> worst;
    for (std::size_t j = 0; j < tail.size(); ++j) {
      UnitaryMatrix r = rotate_to_contain_one(tail[j], tol);
      const double d = defect(r);
      if (d <= tol.validation) continue;
      if (!worst || d > worst->defect) {
        worst = Outer{m + 1 + static_cast<int>(j), std::move(r), d, trace};
      }
    }
    if (worst) {
      out.result = std::move(*worst);
    } else {
      out.result = Inner{prefix_product(), trace};
    }
    return out;
  }

  const RatioTest rt = ratio_test(trace);
  InconclusiveInnerness inc;
  inc.defect_trace = trace;
  if (rt.summable) {
    inc.leaning = Leaning::Inner;
    inc.approximation = ProductUnitary(n, rotated);
    inc.tail_bound = rt.tail_bound;
  } else if (rt.floor > tol.validation) {
    inc.leaning = Leaning::Outer;
  }
  out.result = std::move(inc);
  return out;
}

ComplexMatrix cond_expectation_matrix(int n, int m, int k, const ComplexMatrix& x) {
  if (k < 0 || k > m) throw DomainError("cond_expectation_matrix: level out of range");
  const Eigen::Index s = ipow(n, m - k), d = ipow(n, k);
  if (x.rows() != d * s || x.cols() != d * s) {
    throw ValidationError("cond_expectation_matrix: matrix has the wrong dimension");
  }
  ComplexMatrix out(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      out(i, j) = x.block(i * s, j * s, s, s).trace() / static_cast<double>(s);
    }
  }
  return out;
}

std::vector<PeelingTrace> peel_residuals(const ComplexMatrix& w, int w_level,
                                         const UnitarySequence& seq, int k_max,
                                         const Tolerances& tol) {
  const int n = seq.n();
  if (k_max < 1 || k_max >= w_level) {
    throw DomainError("peel_residuals: need 1 <= k_max < level of w");
  }
  if (w.rows() != ipow(n, w_level) || w.cols() != w.rows()) {
    throw ValidationError("peel_residuals: w has the wrong dimension for its level");
  }
  seq.require_depth(k_max);

  std::vector<PeelingTrace> out;
  ComplexMatrix partial_raw;
  for (int k = 1; k <= k_max; ++k) {
    if (k == 1) {
      partial_raw = seq.factor_at(1).matrix();
    } else {
      const ComplexMatrix d = seq.factor_at(k).matrix() * seq.factor_at(k - 1).matrix().adjoint();
      partial_raw = tensor(partial_raw, d, tol);
    }
    const Eigen::Index s = ipow(n, w_level - k);
    const Eigen::Index blocks = ipow(n, k);
    const ComplexMatrix r = embed_level(partial_raw, n, k, w_level).adjoint() * w;

    ComplexMatrix z_raw = ComplexMatrix::Zero(s, s);
    for (Eigen::Index g = 0; g < blocks; ++g) z_raw += r.block(g * s, g * s, s, s);
    z_raw /= static_cast<double>(blocks);

    double structural = 0;
    for (Eigen::Index q = 0; q < blocks; ++q) {
      for (Eigen::Index p = 0; p < blocks; ++p) {
        const ComplexMatrix expect = p == q ? z_raw : ComplexMatrix::Zero(s, s);
        structural = std::max(structural, max_abs_diff(r.block(p * s, q * s, s, s), expect));
      }
    }
    const double z_defect = unitarity_defect(z_raw, tol);
    if (structural > tol.validation || z_defect > tol.validation) {
      std::ostringstream msg;
      msg << "peel_residuals: w is not of telescoped form at level " << k
          << " (block residual " << structural << ", residual unitarity defect " << z_defect
          << ")";
      throw StructuralError(msg.str(), k);
    }

    PeelingTrace t;
    t.k = k;
    const cplx tau_raw = z_raw.trace() / static_cast<double>(s);
    t.phase_fix = std::abs(tau_raw) > 0 ? -std::arg(tau_raw) : 0.0;
    const cplx fix = std::polar(1.0, t.phase_fix);
    t.z = fix * z_raw;
    t.tau_z = cplx(std::abs(tau_raw), 0.0);
    t.partial = std::conj(fix) * partial_raw;
    t.structural_residual = structural;
    t.expectation_residual =
        max_abs_diff(cond_expectation_matrix(n, w_level, k, w), t.partial * t.tau_z);
    out.push_back(std::move(t));
  }
  return out;
}

WordPoly gauge_compose(const WordPoly& v, cplx z, double tol) {
  if (std::abs(std::abs(z) - 1.0) > tol) {
    throw ValidationError("gauge_compose: z is not a phase");
  }
  return z * v;
}

}  // namespace cuntz
