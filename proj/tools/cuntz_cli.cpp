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

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cuntz/catalog.hpp"
#include "cuntz/errors.hpp"
#include "cuntz/report.hpp"
#include "cuntz/scenario.hpp"

namespace {

struct Options {
  std::vector<std::string> files;
  std::optional<int> depth;
  std::optional<int> k_max;
  std::optional<double> tol;
  std::string format = "text";
  std::string out;
  std::string name;
  std::string dump_dir;
  bool list = false;
};

void apply_overrides(cuntz::Scenario& s, const Options& o) {
  if (o.depth) s.params.depth = *o.depth;
  if (o.k_max) s.params.k_max = *o.k_max;
  if (o.tol) s.params.tol = *o.tol;
}

cuntz::ReportFormat format_of(const Options& o) {
  return o.format == "machine" ? cuntz::ReportFormat::Machine : cuntz::ReportFormat::Text;
}

int run_files(const Options& o, cuntz::Analysis a) {
  std::vector<cuntz::Report> reports;
  for (const auto& f : o.files) {
    auto s = cuntz::load_scenario(f);
    apply_overrides(s, o);
    reports.push_back(cuntz::run_scenario(s, a));
  }
  const auto fmt = format_of(o);
  cuntz::write_output(reports.size() == 1 ? cuntz::emit_report(reports.front(), fmt)
                                          : cuntz::emit_reports(reports, fmt),
                      o.out);
  return 0;
}

int run_witnesses(const Options& o) {
  auto catalog = cuntz::witness_catalog();
  if (!o.name.empty()) {
    auto s = cuntz::find_witness(o.name);
    if (!s) throw cuntz::ValidationError("witnesses: no scenario named '" + o.name + "'");
    catalog = {*s};
  }
  if (o.list) {
    std::string text;
    for (const auto& s : catalog) {
      text += s.name + "  [" + cuntz::kind_name(s.kind) + "]  " + s.description + "\n";
    }
    cuntz::write_output(text, o.out);
    return 0;
  }
  if (!o.dump_dir.empty()) {
    std::filesystem::create_directories(o.dump_dir);
    for (const auto& s : catalog) {
      const auto path = (std::filesystem::path(o.dump_dir) / (s.name + ".json")).string();
      cuntz::write_output(cuntz::to_json(s).dump(2) + "\n", path);
    }
    return 0;
  }
  std::vector<cuntz::Report> reports;
  std::vector<std::string> mismatches;
  for (auto& s : catalog) {
    apply_overrides(s, o);
    reports.push_back(cuntz::run_scenario(s));
    for (auto& m : cuntz::check_expectations(s, reports.back())) mismatches.push_back(std::move(m));
  }
  cuntz::write_output(cuntz::emit_reports(reports, format_of(o)), o.out);
  for (const auto& m : mismatches) std::cerr << "mismatch: " << m << "\n";
  return mismatches.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extension analysis for product-type automorphisms of Cuntz algebra cores"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--depth", o.depth, "analysis depth K")->check(CLI::PositiveNumber);
    sub->add_option("--k-max", o.k_max, "verification level")->check(CLI::PositiveNumber);
    sub->add_option("--tol", o.tol, "verification tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "text | machine")
        ->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--out", o.out, "output path (stdout when omitted)");
  };

  const std::vector<std::pair<std::string, cuntz::Analysis>> analyses = {
      {"analyze", cuntz::Analysis::Full},       {"inner", cuntz::Analysis::Innerness},
      {"localize", cuntz::Analysis::Extension}, {"diagonal", cuntz::Analysis::Diagonal},
      {"verify", cuntz::Analysis::Verify},      {"peel", cuntz::Analysis::Peel}};
  const std::vector<std::string> help = {
      "full analysis of a scenario file",
      "innerness verdict for a product automorphism",
      "extension verdict with localization",
      "extension decision for a diagonal (permutation) product",
      "verify a candidate or constructed extension unitary",
      "peel a telescoped unitary level by level"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < analyses.size(); ++i) {
    auto* sub = app.add_subcommand(analyses[i].first, help[i]);
    sub->add_option("scenario", o.files, "scenario JSON file(s)")->required()->check(CLI::ExistingFile);
    add_common(sub);
    subs.push_back(sub);
  }
  auto* wit = app.add_subcommand("witnesses", "run the built-in witness catalog");
  add_common(wit);
  wit->add_option("--name", o.name, "run a single catalog entry");
  wit->add_flag("--list", o.list, "list catalog entries");
  wit->add_option("--dump", o.dump_dir, "write catalog scenarios as JSON files into a directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (wit->parsed()) return run_witnesses(o);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) return run_files(o, analyses[i].second);
    }
  } catch (const cuntz::ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
