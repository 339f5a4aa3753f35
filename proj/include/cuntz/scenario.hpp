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
#include <vector>

#include "cuntz/report.hpp"
#include "cuntz/serialization.hpp"

namespace cuntz {

enum class ScenarioKind { UhfProduct, DiagonalProduct, Verify, Peel, Inner };

std::string kind_name(ScenarioKind k);
ScenarioKind scenario_kind_from_name(const std::string& s, const std::string& path);

struct ScenarioParams {
  int depth = 12;   // analysis depth K
  int k_max = 3;    // verification level
  double tol = 1e-10;
};

/// A level-L dense element (unitary u, candidate v, or telescoped w).
struct LevelMatrix {
  int level = 0;
  ComplexMatrix matrix;
};

struct Scenario {
  std::string name;
  std::string description;
  int n = 2;
  ScenarioKind kind = ScenarioKind::UhfProduct;
  std::optional<UnitarySequence> unitary_sequence;
  std::optional<PermutationSequence> permutation_sequence;
  std::optional<LevelMatrix> element;  // verify: v, peel: w, inner: u
  std::optional<WordPoly> element_word;
  ScenarioParams params;
  Json expected = Json::object();  // recorded verdicts, checked by check_expectations
};

Scenario parse_scenario(const Json& j);
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);
Json to_json(const Scenario& s);

enum class Analysis { Full, Extension, Innerness, Diagonal, Verify, Peel };

std::string analysis_name(Analysis a);

/// Throws ValidationError when the analysis does not apply to the kind,
/// ConsistencyError when an internal cross-check fails.
Report run_scenario(const Scenario& s, Analysis a = Analysis::Full);

/// Mismatches between the recorded expectations and the report.
std::vector<std::string> check_expectations(const Scenario& s, const Report& r);

}  // namespace cuntz
