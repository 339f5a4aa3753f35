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

#include "cuntz/scenario.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace cuntz {

namespace {

// Dense matrices and word forms are reported only up to this dimension.
constexpr Eigen::Index kMatrixReportDim = 81;
constexpr Eigen::Index kWordReportDim = 9;

class Stopwatch {
 public:
  Stopwatch(Report& r, std::string label)
      : r_(r), label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    const auto d = std::chrono::steady_clock::now() - start_;
    r_.timings_ms.emplace_back(label_, std::chrono::duration<double, std::milli>(d).count());
  }

 private:
  Report& r_;
  std::string label_;
  std::chrono::steady_clock::time_point start_;
};

Json trace_json(const std::vector<double>& t) {
  Json out = Json::array();
  for (double x : t) out.push_back(number(x));
  return out;
}

Json factors_json(const ProductUnitary& v) {
  Json out = Json::array();
  for (const auto& f : v.factors()) out.push_back(to_json(f.matrix()));
  return out;
}

void put_product(Json& out, const char* prefix, const ProductUnitary& v) {
  const std::string p(prefix);
  out[p + "_level"] = v.level();
  out[p + "_factors"] = factors_json(v);
  const Eigen::Index dim = ipow(v.n(), v.level());
  if (dim <= kMatrixReportDim) out[p + "_matrix"] = to_json(v.dense());
  if (dim <= kWordReportDim) out[p + "_word"] = to_json(v.word());
}

Json verification_json(const VerificationReport& rep) {
  Json out = Json::object();
  out["method"] = method_name(rep.method);
  out["k_max"] = rep.k_max;
  out["tol"] = number(rep.tol);
  out["max_deviation"] = number(rep.max_deviation);
  out["level_deviation"] = trace_json(rep.level_deviation);
  Json worst = Json::object();
  worst["level"] = rep.worst_level;
  worst["alpha"] = to_json(rep.worst_alpha);
  worst["beta"] = to_json(rep.worst_beta);
  out["worst_unit"] = std::move(worst);
  out["units_checked"] = rep.units_checked;
  out["passed"] = rep.passed;
  return out;
}

Json extension_json(const ExtensionVerdict& v, const std::optional<Localization>& loc) {
  Json out = Json::object();
  out["verdict_kind"] = kind_name(v);
  out["certified"] = v.certified();
  out["K"] = v.K;
  out["delta_trace"] = trace_json(v.delta_trace());
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ExtensibleExact>) {
          out["tail_bound"] = 0.0;
          put_product(out, "v", r.v);
        } else if constexpr (std::is_same_v<R, ExtensibleNumeric>) {
          out["tail_bound"] = number(r.tail_bound);
          out["max_ratio"] = number(r.max_ratio);
          put_product(out, "v", r.v);
        } else if constexpr (std::is_same_v<R, NotExtensible>) {
          Json w = Json::object();
          w["k"] = r.witness.k;
          w["d"] = to_json(r.witness.d.matrix());
          w["delta"] = number(r.witness.alignment.delta);
          w["psi"] = number(r.witness.alignment.psi);
          out["witness"] = std::move(w);
          out["lower_bound"] = number(r.lower_bound);
        } else {
          out["partial_sums"] = trace_json(r.partial_sums);
          out["window_floor"] = number(r.window_floor);
          out["reason"] = r.reason;
        }
      },
      v.result);
  if (loc) {
    out["localized"] = loc->localized;
    out["stabilization_index"] = loc->stabilization_index;
    out["localization_certified"] = loc->certified;
  }
  return out;
}

Json innerness_json(const InnernessVerdict& v) {
  Json out = Json::object();
  out["verdict_kind"] = kind_name(v);
  out["K"] = v.K;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        out["defect_trace"] = trace_json(r.defect_trace);
        if constexpr (std::is_same_v<R, Inner>) {
          out["certified"] = true;
          put_product(out, "u", r.u);
        } else if constexpr (std::is_same_v<R, Outer>) {
          out["certified"] = true;
          out["k"] = r.k;
          out["witness"] = to_json(r.witness.matrix());
          out["defect"] = number(r.defect);
        } else {
          out["certified"] = false;
          out["leaning"] = leaning_name(r.leaning);
          out["tail_bound"] = number(r.tail_bound);
        }
      },
      v.result);
  return out;
}

Tolerances tolerances(const ScenarioParams& p) {
  Tolerances t;
  t.verification = p.tol;
  return t;
}

void require_analysis(bool ok, Analysis a, ScenarioKind k) {
  if (!ok) {
    throw ValidationError("analysis '" + analysis_name(a) + "' does not apply to scenario kind '" +
                          kind_name(k) + "'");
  }
}

void run_uhf(const Scenario& s, Analysis a, Report& rep) {
  require_analysis(a != Analysis::Diagonal && a != Analysis::Peel, a, s.kind);
  const auto& seq = *s.unitary_sequence;
  const Tolerances tol = tolerances(s.params);
  const ProductAutomorphism alpha(seq);
  const int K = s.params.depth;

  if (a != Analysis::Innerness) {
    std::optional<ExtensionVerdict> v;
    std::optional<Localization> loc;
    {
      Stopwatch sw(rep, "analyze_extension");
      v = analyze_extension(seq, K, tol);
      if (v->extensible()) loc = classify_localized(seq, *v, tol);
    }
    rep.results["extension"] = extension_json(*v, loc);
    if (a == Analysis::Full || a == Analysis::Verify) {
      Stopwatch sw(rep, "verify_extension");
      if (const auto* ex = std::get_if<ExtensibleExact>(&v->result)) {
        const auto vr = verify_extension_auto(ex->v, alpha, s.params.k_max, s.params.tol);
        rep.results["verification"] = verification_json(vr);
        if (!vr.passed) {
          throw ConsistencyError("scenario " + s.name +
                                 ": certified extension fails verification (max deviation " +
                                 std::to_string(vr.max_deviation) + ")");
        }
      } else if (const auto* nu = std::get_if<ExtensibleNumeric>(&v->result)) {
        const double t = std::max(3.0 * nu->tail_bound, s.params.tol);
        const int k_max = std::min(s.params.k_max, K + 1);
        rep.results["verification"] = verification_json(verify_extension(nu->v, alpha, k_max, t));
      }
    }
  }

  if (a == Analysis::Full || a == Analysis::Innerness) {
    std::optional<InnernessVerdict> iv;
    {
      Stopwatch sw(rep, "analyze_innerness");
      iv = analyze_innerness(seq, K, tol);
    }
    rep.results["innerness"] = innerness_json(*iv);
    if (const auto* in = std::get_if<Inner>(&iv->result)) {
      Json ie = Json::object();
      if (ipow(seq.n(), in->u.level() + s.params.k_max) > 729) {
        ie["skipped"] = "dimension too large for the dense inner-extension check";
      } else {
        Stopwatch sw(rep, "verify_inner_extension");
        const auto vr = verify_inner_extension(in->u.word(), s.params.k_max, s.params.tol);
        ie["w_level"] = std::max(1, in->u.level()) + 1;
        ie["passed"] = vr.passed;
        ie["verification"] = verification_json(vr);
        if (!vr.passed) {
          throw ConsistencyError("scenario " + s.name + ": inner extension fails verification");
        }
      }
      rep.results["inner_extension"] = std::move(ie);
    }
  }
}

void run_diagonal(const Scenario& s, Analysis a, Report& rep) {
  require_analysis(a == Analysis::Full || a == Analysis::Diagonal || a == Analysis::Verify, a,
                   s.kind);
  const auto& seq = *s.permutation_sequence;
  DiagonalVerdict v;
  {
    Stopwatch sw(rep, "decide_extension");
    v = decide_extension(seq);
  }
  Json out = Json::object();
  out["verdict_kind"] = kind_name(v);
  out["certified"] = !std::holds_alternative<DiagonalInconclusive>(v.result);
  out["reading"] = "eventually constant";
  if (const auto* ex = std::get_if<ExtensiblePermutation>(&v.result)) {
    out["r"] = ex->r;
    Json wf = Json::array();
    for (const auto& p : ex->w_factors) wf.push_back(to_json(p));
    out["w_factors"] = std::move(wf);
    out["w_word"] = to_json(ex->w_word);
    Stopwatch sw(rep, "verify_diagonal_extension");
    const auto vr = verify_diagonal_extension(ex->w_word, seq, s.params.k_max);
    Json vj = Json::object();
    vj["depth"] = vr.depth;
    vj["checked"] = vr.checked;
    vj["passed"] = vr.passed;
    if (vr.counterexample) vj["counterexample"] = to_json(*vr.counterexample);
    out["verification"] = std::move(vj);
    if (!vr.passed) {
      throw ConsistencyError("scenario " + s.name + ": permutation unitary fails verification");
    }
    const auto action = perm_endo_diagonal_action(ex->w_word, s.params.k_max);
    Json aj = Json::object();
    Json levels = Json::array();
    for (const auto& lm : action.levels) {
      Json l = Json::object();
      l["k"] = lm.k;
      l["injective"] = lm.injective;
      l["surjective"] = lm.surjective;
      levels.push_back(std::move(l));
    }
    aj["levels"] = std::move(levels);
    aj["injective"] = action.injective;
    aj["surjective"] = action.surjective;
    out["diagonal_action"] = std::move(aj);
  } else if (const auto* ne = std::get_if<DiagonalNotExtensible>(&v.result)) {
    out["witness"] = Json::array({ne->witness.first, ne->witness.second});
    out["sigma_k"] = to_json(seq.factor_at(ne->witness.first));
    out["sigma_k1"] = to_json(seq.factor_at(ne->witness.second));
  } else {
    const auto& inc = std::get<DiagonalInconclusive>(v.result);
    out["window"] = Json::array({inc.window.first, inc.window.second});
    out["window_constant"] = inc.window_constant;
  }

  // Cross-check against the unitary analyzer on u_k = P(σ_k).
  if (seq.certifiable()) {
    const auto to_unitary = [](const Permutation& p) { return permutation_matrix(p); };
    std::vector<UnitaryMatrix> prefix;
    for (const auto& p : seq.prefix()) prefix.push_back(to_unitary(p));
    TailRule<UnitaryMatrix> tail;
    if (const auto* c = std::get_if<ConstantTail<Permutation>>(&seq.tail())) {
      tail = ConstantTail<UnitaryMatrix>{to_unitary(c->value)};
    } else {
      std::vector<UnitaryMatrix> cycle;
      for (const auto& p : std::get<PeriodicTail<Permutation>>(seq.tail()).cycle) {
        cycle.push_back(to_unitary(p));
      }
      tail = PeriodicTail<UnitaryMatrix>{std::move(cycle)};
    }
    const UnitarySequence useq(seq.n(), std::move(prefix), std::move(tail));
    const bool unitary_ext = analyze_extension(useq, std::max(2, s.params.depth)).extensible();
    out["unitary_cross_check"] = unitary_ext;
    if (unitary_ext != v.extensible()) {
      throw ConsistencyError("scenario " + s.name +
                             ": diagonal verdict disagrees with the unitary analyzer");
    }
  }
  rep.results["diagonal"] = std::move(out);
}

void run_verify(const Scenario& s, Analysis a, Report& rep) {
  require_analysis(a == Analysis::Full || a == Analysis::Verify, a, s.kind);
  const ProductAutomorphism alpha(*s.unitary_sequence);
  Stopwatch sw(rep, "verify_extension");
  VerificationReport vr;
  if (s.element_word) {
    vr = verify_extension(*s.element_word, alpha, s.params.k_max, s.params.tol);
  } else {
    vr = verify_extension(s.element->matrix, s.element->level, alpha, s.params.k_max, s.params.tol);
  }
  rep.results["verification"] = verification_json(vr);
}

void run_peel(const Scenario& s, Analysis a, Report& rep) {
  require_analysis(a == Analysis::Full || a == Analysis::Peel, a, s.kind);
  Json out = Json::object();
  try {
    Stopwatch sw(rep, "peel_residuals");
    const auto steps = peel_residuals(s.element->matrix, s.element->level, *s.unitary_sequence,
                                      s.params.k_max, tolerances(s.params));
    out["status"] = "ok";
    Json js = Json::array();
    for (const auto& t : steps) {
      Json j = Json::object();
      j["k"] = t.k;
      j["tau_z"] = Json::array({number(t.tau_z.real()), number(t.tau_z.imag())});
      j["phase_fix"] = number(t.phase_fix);
      j["structural_residual"] = number(t.structural_residual);
      j["expectation_residual"] = number(t.expectation_residual);
      js.push_back(std::move(j));
    }
    out["steps"] = std::move(js);
  } catch (const StructuralError& e) {
    out["status"] = "structural_error";
    out["level"] = e.level();
    out["message"] = e.what();
  }
  rep.results["peel"] = std::move(out);
}

void run_inner(const Scenario& s, Analysis a, Report& rep) {
  require_analysis(a == Analysis::Full || a == Analysis::Verify || a == Analysis::Innerness, a,
                   s.kind);
  const WordPoly u = s.element_word ? *s.element_word
                                    : compress(from_matrix(s.n, s.element->level, s.element->matrix));
  Stopwatch sw(rep, "verify_inner_extension");
  const WordPoly w = inner_extension_unitary(u);
  const auto vr = verify_inner_extension(u, s.params.k_max, s.params.tol);
  Json out = Json::object();
  out["u_level"] = u.level();
  out["w_level"] = std::max(1, u.level()) + 1;
  if (ipow(s.n, std::max(1, u.level()) + 1) <= kWordReportDim) out["w_word"] = to_json(w);
  out["passed"] = vr.passed;
  out["verification"] = verification_json(vr);
  rep.results["inner_extension"] = std::move(out);
}

LevelMatrix level_matrix_from_json(const Json& j, int n, const std::string& path) {
  LevelMatrix lm;
  lm.level = require_int(require_field(j, "level", path), path + ".level");
  if (lm.level < 1 || lm.level > 8) throw ValidationError(path + ".level: expected 1..8");
  lm.matrix = matrix_from_json(require_field(j, "matrix", path), path + ".matrix");
  if (lm.matrix.rows() != ipow(n, lm.level)) {
    throw ValidationError(path + ".matrix: dimension " + std::to_string(lm.matrix.rows()) +
                          " does not match n^level = " + std::to_string(ipow(n, lm.level)));
  }
  try {
    UnitaryMatrix::validated(lm.matrix);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ".matrix: " + e.what());
  }
  return lm;
}

}  // namespace

std::string kind_name(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::UhfProduct: return "uhf_product";
    case ScenarioKind::DiagonalProduct: return "diagonal_product";
    case ScenarioKind::Verify: return "verify";
    case ScenarioKind::Peel: return "peel";
    case ScenarioKind::Inner: return "inner";
  }
  return "uhf_product";
}

ScenarioKind scenario_kind_from_name(const std::string& s, const std::string& path) {
  for (auto k : {ScenarioKind::UhfProduct, ScenarioKind::DiagonalProduct, ScenarioKind::Verify,
                 ScenarioKind::Peel, ScenarioKind::Inner}) {
    if (kind_name(k) == s) return k;
  }
  throw ValidationError(path + ": unknown scenario kind '" + s +
                        "' (uhf_product | diagonal_product | verify | peel | inner)");
}

std::string analysis_name(Analysis a) {
  switch (a) {
    case Analysis::Full: return "analyze";
    case Analysis::Extension: return "localize";
    case Analysis::Innerness: return "inner";
    case Analysis::Diagonal: return "diagonal";
    case Analysis::Verify: return "verify";
    case Analysis::Peel: return "peel";
  }
  return "analyze";
}

Scenario parse_scenario(const Json& j) {
  const int version = require_int(require_field(j, "schema_version", ""), "schema_version");
  if (version != kSchemaVersion) {
    throw ValidationError("schema_version: unsupported version " + std::to_string(version));
  }
  Scenario s;
  s.name = require_string(require_field(j, "name", ""), "name");
  if (j.contains("description")) s.description = require_string(j["description"], "description");
  s.n = require_int(require_field(j, "n", ""), "n");
  if (s.n < 2) throw ValidationError("n: alphabet size must be >= 2");
  s.kind = scenario_kind_from_name(require_string(require_field(j, "kind", ""), "kind"), "kind");

  if (j.contains("params")) {
    const auto& p = j["params"];
    if (!p.is_object()) throw ValidationError("params: expected an object");
    if (p.contains("depth")) s.params.depth = require_int(p["depth"], "params.depth");
    if (p.contains("k_max")) s.params.k_max = require_int(p["k_max"], "params.k_max");
    if (p.contains("tol")) s.params.tol = require_number(p["tol"], "params.tol");
    if (s.params.depth < 1) throw ValidationError("params.depth: must be >= 1");
    if (s.params.k_max < 1) throw ValidationError("params.k_max: must be >= 1");
    if (!(s.params.tol > 0)) throw ValidationError("params.tol: must be positive");
  }

  if (s.kind == ScenarioKind::DiagonalProduct) {
    s.permutation_sequence =
        permutation_sequence_from_json(require_field(j, "sequence", ""), s.n, "sequence");
  } else if (s.kind != ScenarioKind::Inner) {
    s.unitary_sequence =
        unitary_sequence_from_json(require_field(j, "sequence", ""), s.n, "sequence");
  }

  if (s.kind == ScenarioKind::Verify || s.kind == ScenarioKind::Peel ||
      s.kind == ScenarioKind::Inner) {
    const auto& e = require_field(j, "element", "");
    if (e.contains("word") && s.kind != ScenarioKind::Peel) {
      s.element_word = word_from_json(e["word"], s.n, "element.word");
    } else {
      s.element = level_matrix_from_json(e, s.n, "element");
    }
  }
  if (j.contains("expected")) {
    if (!j["expected"].is_object()) throw ValidationError("expected: expected an object");
    s.expected = j["expected"];
  }
  return s;
}

Scenario parse_scenario_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("scenario: malformed JSON: ") + e.what());
  }
  return parse_scenario(j);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario_text(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Json to_json(const Scenario& s) {
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  j["n"] = s.n;
  j["kind"] = kind_name(s.kind);
  if (s.unitary_sequence) {
    j["sequence"] = to_json(*s.unitary_sequence);
  } else if (s.permutation_sequence) {
    j["sequence"] = to_json(*s.permutation_sequence);
  }
  if (s.element_word) {
    j["element"] = Json{{"word", to_json(*s.element_word)}};
  } else if (s.element) {
    Json e = Json::object();
    e["level"] = s.element->level;
    e["matrix"] = to_json(s.element->matrix);
    j["element"] = std::move(e);
  }
  Json p = Json::object();
  p["depth"] = s.params.depth;
  p["k_max"] = s.params.k_max;
  p["tol"] = s.params.tol;
  j["params"] = std::move(p);
  if (!s.expected.empty()) j["expected"] = s.expected;
  return j;
}

Report run_scenario(const Scenario& s, Analysis a) {
  Report rep;
  rep.scenario = s.name;
  rep.kind = kind_name(s.kind);
  rep.n = s.n;
  try {
    switch (s.kind) {
      case ScenarioKind::UhfProduct: run_uhf(s, a, rep); break;
      case ScenarioKind::DiagonalProduct: run_diagonal(s, a, rep); break;
      case ScenarioKind::Verify: run_verify(s, a, rep); break;
      case ScenarioKind::Peel: run_peel(s, a, rep); break;
      case ScenarioKind::Inner: run_inner(s, a, rep); break;
    }
  } catch (const ConsistencyError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError("scenario " + s.name + ": " + e.what());
  }
  return rep;
}

std::vector<std::string> check_expectations(const Scenario& s, const Report& r) {
  // expectation key -> (section, field)
  static const std::vector<std::tuple<std::string, std::string, std::string>> kPaths = {
      {"extension", "extension", "verdict_kind"},
      {"localized", "extension", "localized"},
      {"stabilization_index", "extension", "stabilization_index"},
      {"lower_bound", "extension", "lower_bound"},
      {"innerness", "innerness", "verdict_kind"},
      {"leaning", "innerness", "leaning"},
      {"diagonal", "diagonal", "verdict_kind"},
      {"verification_passed", "verification", "passed"},
      {"inner_extension_passed", "inner_extension", "passed"},
      {"peel_status", "peel", "status"},
  };
  std::vector<std::string> out;
  for (const auto& [key, want] : s.expected.items()) {
    bool known = false;
    for (const auto& [k, section, field] : kPaths) {
      if (k != key) continue;
      known = true;
      const Json* got = nullptr;
      if (r.results.contains(section) && r.results[section].contains(field)) {
        got = &r.results[section][field];
      }
      bool ok = got != nullptr;
      if (ok && want.is_number_float()) {
        ok = got->is_number() && std::abs(got->get<double>() - want.get<double>()) <= 1e-9;
      } else if (ok) {
        ok = *got == want;
      }
      if (!ok) {
        out.push_back(s.name + ": expected " + key + " = " + want.dump() + ", got " +
                      (got ? got->dump() : std::string("<missing>")));
      }
    }
    if (!known) out.push_back(s.name + ": unknown expectation key '" + key + "'");
  }
  return out;
}

}  // namespace cuntz
