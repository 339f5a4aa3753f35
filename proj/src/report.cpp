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

#include "cuntz/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

namespace cuntz {

namespace {

const std::set<std::string> kReportKinds = {"none", "uhf_product", "diagonal_product",
                                            "verify", "peel", "inner"};

Json body(const Report& r) {
  Json j = Json::object();
  j["scenario"] = r.scenario;
  j["kind"] = r.kind;
  j["n"] = r.n;
  j["results"] = r.results;
  return j;
}

bool is_pair(const Json& j) {
  return j.is_array() && j.size() == 2 && (j[0].is_number() || j[0].is_null()) &&
         (j[1].is_number() || j[1].is_null());
}

bool is_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) return false;
    for (const auto& e : row) {
      if (!is_pair(e)) return false;
    }
  }
  return true;
}

bool is_flat(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "n/a";
  if (j.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(12) << j.get<double>();
    return os.str();
  }
  return j.dump();
}

std::string complex_text(const Json& pair) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed;
  // Values that round to zero print unsigned.
  const auto part = [](const Json& x) {
    const double v = x.is_null() ? 0 : x.get<double>();
    return std::abs(v) < 5e-7 ? 0.0 : v;
  };
  os << std::showpos << part(pair[0]) << part(pair[1]) << "i";
  return os.str();
}

bool is_word_list(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("alpha") || !t.contains("beta") || !t.contains("coeff")) {
      return false;
    }
  }
  return true;
}

std::string letters_text(const Json& w) {
  std::string out;
  for (const auto& l : w) out += std::to_string(l.get<int>());
  return out;
}

void render(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, val] : j.items()) {
    if (is_word_list(val)) {
      os << pad << key << ":\n";
      for (const auto& t : val) {
        os << pad << "   (" << complex_text(t["coeff"]) << ")";
        if (!t["alpha"].empty()) os << " S_" << letters_text(t["alpha"]);
        if (!t["beta"].empty()) os << " S_" << letters_text(t["beta"]) << "*";
        if (t["alpha"].empty() && t["beta"].empty()) os << " 1";
        os << "\n";
      }
    } else if (is_matrix(val)) {
      os << pad << key << ":\n";
      for (const auto& row : val) {
        os << pad << "  ";
        for (const auto& e : row) os << " " << complex_text(e);
        os << "\n";
      }
    } else if (is_pair(val) && key.find("coeff") != std::string::npos) {
      os << pad << key << ": " << complex_text(val) << "\n";
    } else if (is_flat(val)) {
      os << pad << key << ": [";
      for (std::size_t i = 0; i < val.size(); ++i) os << (i ? ", " : "") << scalar_text(val[i]);
      os << "]\n";
    } else if (val.is_object()) {
      os << pad << key << ":\n";
      render(os, val, indent + 2);
    } else if (val.is_array()) {
      os << pad << key << ":\n";
      for (std::size_t i = 0; i < val.size(); ++i) {
        if (val[i].is_object()) {
          os << pad << "  - #" << i + 1 << "\n";
          render(os, val[i], indent + 4);
        } else {
          Json wrapped = Json::object();
          wrapped["#" + std::to_string(i + 1)] = val[i];
          render(os, wrapped, indent + 2);
        }
      }
    } else {
      os << pad << key << ": " << scalar_text(val) << "\n";
    }
  }
}

void summary(std::ostream& os, const std::string& section, const Json& s) {
  if (!s.contains("verdict_kind")) return;
  os << "  verdict: " << s["verdict_kind"].get<std::string>();
  if (s.contains("certified")) os << (s["certified"].get<bool>() ? " (certified)" : " (not certified)");
  os << "\n";
  if (section == "extension" && s.contains("witness")) {
    os << "  witness factor d_" << s["witness"]["k"].get<int>() << " with delta "
       << scalar_text(s["witness"]["delta"]) << "; lower bound on the Cauchy defect "
       << scalar_text(s["lower_bound"]) << "\n";
  }
}

std::string text_report(const Report& r) {
  std::ostringstream os;
  os << "scenario: " << (r.scenario.empty() ? "<none>" : r.scenario) << " (" << r.kind
     << ", n = " << r.n << ")\n";
  for (const auto& [section, val] : r.results.items()) {
    os << "[" << section << "]\n";
    summary(os, section, val);
    render(os, val, 2);
  }
  if (!r.timings_ms.empty()) {
    os << "timings (ms):";
    for (const auto& [label, ms] : r.timings_ms) {
      os << " " << label << "=" << std::fixed << std::setprecision(3) << ms;
    }
    os << "\n";
  }
  return os.str();
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError("report " + path + ": " + what);
}

void require_kind(const Json& s, const std::string& path, const std::set<std::string>& allowed) {
  if (!s.contains("verdict_kind") || !s["verdict_kind"].is_string()) {
    fail(path + ".verdict_kind", "missing or not a string");
  }
  if (!allowed.count(s["verdict_kind"].get<std::string>())) {
    fail(path + ".verdict_kind", "unknown verdict '" + s["verdict_kind"].get<std::string>() + "'");
  }
}

void require_typed(const Json& s, const std::string& path, const char* key, bool (Json::*pred)() const,
                   const char* what) {
  if (!s.contains(key) || !(s[key].*pred)()) fail(path + "." + key, std::string("expected ") + what);
}

void check_verification(const Json& v, const std::string& path) {
  require_typed(v, path, "method", &Json::is_string, "a string");
  require_typed(v, path, "passed", &Json::is_boolean, "a boolean");
  if (!v.contains("max_deviation") || !(v["max_deviation"].is_number() || v["max_deviation"].is_null())) {
    fail(path + ".max_deviation", "expected a number");
  }
}

Report report_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  Report r;
  require_typed(j, path, "scenario", &Json::is_string, "a string");
  require_typed(j, path, "kind", &Json::is_string, "a string");
  require_typed(j, path, "n", &Json::is_number_integer, "an integer");
  require_typed(j, path, "results", &Json::is_object, "an object");
  r.scenario = j["scenario"].get<std::string>();
  r.kind = j["kind"].get<std::string>();
  if (!kReportKinds.count(r.kind)) fail(path + ".kind", "unknown kind '" + r.kind + "'");
  r.n = j["n"].get<int>();
  r.results = j["results"];
  const std::string rp = path + ".results";
  for (const auto& [section, val] : r.results.items()) {
    const std::string sp = rp + "." + section;
    if (!val.is_object()) fail(sp, "expected an object");
    if (section == "extension") {
      require_kind(val, sp, {"ExtensibleExact", "ExtensibleNumeric", "NotExtensible", "Inconclusive"});
      require_typed(val, sp, "K", &Json::is_number_integer, "an integer");
      require_typed(val, sp, "delta_trace", &Json::is_array, "an array");
      require_typed(val, sp, "certified", &Json::is_boolean, "a boolean");
    } else if (section == "innerness") {
      require_kind(val, sp, {"Inner", "Outer", "Inconclusive"});
      require_typed(val, sp, "defect_trace", &Json::is_array, "an array");
    } else if (section == "diagonal") {
      require_kind(val, sp, {"ExtensiblePermutation", "NotExtensible", "Inconclusive"});
    } else if (section == "verification") {
      check_verification(val, sp);
    } else if (section == "inner_extension") {
      if (!val.contains("skipped")) {
        require_typed(val, sp, "passed", &Json::is_boolean, "a boolean");
        check_verification(val["verification"], sp + ".verification");
      }
    } else if (section == "peel") {
      require_typed(val, sp, "status", &Json::is_string, "a string");
    } else {
      fail(sp, "unknown section");
    }
  }
  return r;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("report: malformed JSON: ") + e.what());
  }
}

void check_version(const Json& j) {
  if (!j.is_object() || !j.contains("schema_version") || !j["schema_version"].is_number_integer()) {
    fail("schema_version", "missing or not an integer");
  }
  if (j["schema_version"].get<int>() != kSchemaVersion) fail("schema_version", "unsupported version");
}

}  // namespace

std::string emit_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::Text) return text_report(r);
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  const Json b = body(r);
  for (const auto& [k, v] : b.items()) j[k] = v;
  return j.dump(2) + "\n";
}

std::string emit_reports(const std::vector<Report>& rs, ReportFormat format) {
  if (format == ReportFormat::Text) {
    std::string out;
    for (std::size_t i = 0; i < rs.size(); ++i) out += (i ? "\n" : "") + text_report(rs[i]);
    return out;
  }
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  j["reports"] = Json::array();
  for (const auto& r : rs) j["reports"].push_back(body(r));
  return j.dump(2) + "\n";
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw Error("<stdout>: write failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << text;
  out.close();
  if (!out) throw Error(path + ": write failed");
}

Report parse_report(const std::string& text) {
  const Json j = parse_json(text);
  check_version(j);
  return report_from_json(j, "");
}

std::vector<Report> parse_reports(const std::string& text) {
  const Json j = parse_json(text);
  check_version(j);
  if (!j.contains("reports") || !j["reports"].is_array()) fail("reports", "expected an array");
  std::vector<Report> out;
  for (std::size_t i = 0; i < j["reports"].size(); ++i) {
    out.push_back(report_from_json(j["reports"][i], "reports[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace cuntz
