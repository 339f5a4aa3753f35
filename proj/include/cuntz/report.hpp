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
#include <utility>
#include <vector>

#include "cuntz/serialization.hpp"

namespace cuntz {

enum class ReportFormat { Text, Machine };

/// Outcome of one scenario. `results` follows the machine schema; timings
/// are wall-clock and appear in the text format only, so machine output
/// is byte-stable.
struct Report {
  std::string scenario;
  std::string kind = "none";
  int n = 0;
  Json results = Json::object();
  std::vector<std::pair<std::string, double>> timings_ms;
};

inline constexpr int kSchemaVersion = 1;

std::string emit_report(const Report& r, ReportFormat format);
std::string emit_reports(const std::vector<Report>& rs, ReportFormat format);

/// Writes to `path`, or stdout when `path` is empty or "-"; I/O failures
/// throw Error naming the path.
void write_output(const std::string& text, const std::string& path);

/// Parses and schema-checks a machine report; ValidationError with the
/// JSON path on violations.
Report parse_report(const std::string& text);
std::vector<Report> parse_reports(const std::string& text);

}  // namespace cuntz
