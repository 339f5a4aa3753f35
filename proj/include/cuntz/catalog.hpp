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

#include "cuntz/scenario.hpp"

namespace cuntz {

/// Built-in scenarios with recorded expected verdicts (W1..W6 first).
std::vector<Scenario> witness_catalog();

std::optional<Scenario> find_witness(const std::string& name);

}  // namespace cuntz
