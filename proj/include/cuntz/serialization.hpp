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

#include <string>

#include <json.hpp>

#include "cuntz/diagonal.hpp"
#include "cuntz/extension.hpp"
#include "cuntz/permutation.hpp"
#include "cuntz/sequence.hpp"
#include "cuntz/words.hpp"

namespace cuntz {

using Json = nlohmann::ordered_json;

/// Finite doubles as numbers, anything else as null.
Json number(double x);

/// Matrices are row lists of [re, im] pairs.
Json to_json(const ComplexMatrix& m);
Json to_json(const Permutation& p);  // one-line, 1-based
Json to_json(const WordPoly& x);     // [{alpha, beta, coeff}], letters 1-based
Json to_json(const Multiindex& w);   // 1-based letters
Json to_json(const UnitarySequence& s);
Json to_json(const PermutationSequence& s);

// Readers throw ValidationError naming the JSON path of the bad entry.
ComplexMatrix matrix_from_json(const Json& j, const std::string& path);
UnitaryMatrix unitary_from_json(const Json& j, const std::string& path, const Tolerances& tol = {});
Permutation permutation_from_json(const Json& j, const std::string& path);
WordPoly word_from_json(const Json& j, int n, const std::string& path);
Multiindex word_letters_from_json(const Json& j, int n, const std::string& path);
UnitarySequence unitary_sequence_from_json(const Json& j, int n, const std::string& path,
                                           const Tolerances& tol = {});
PermutationSequence permutation_sequence_from_json(const Json& j, int n, const std::string& path);

// Typed field access with path-aware errors.
const Json& require_field(const Json& j, const char* key, const std::string& path);
int require_int(const Json& j, const std::string& path);
double require_number(const Json& j, const std::string& path);
std::string require_string(const Json& j, const std::string& path);

}  // namespace cuntz
