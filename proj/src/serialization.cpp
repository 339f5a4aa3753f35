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

#include "cuntz/serialization.hpp"

#include <cmath>

namespace cuntz {

namespace {

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string dot(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

cplx entry_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(path, "expected a number or an [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T, typename Reader>
TailRule<T> tail_from_json(const Json& j, const std::string& path, std::size_t prefix_len,
                           Reader read) {
  const std::string kind = require_string(require_field(j, "kind", path), dot(path, "kind"));
  if (kind == "constant") {
    return ConstantTail<T>{read(require_field(j, "value", path), dot(path, "value"))};
  }
  if (kind == "periodic") {
    const auto& c = require_array(require_field(j, "cycle", path), dot(path, "cycle"));
    std::vector<T> cycle;
    for (std::size_t i = 0; i < c.size(); ++i) cycle.push_back(read(c[i], at(dot(path, "cycle"), i)));
    if (cycle.empty()) fail(dot(path, "cycle"), "periodic tail needs at least one entry");
    return PeriodicTail<T>{std::move(cycle)};
  }
  if (kind == "sampled") {
    const int depth = require_int(require_field(j, "depth", path), dot(path, "depth"));
    const auto& s = require_array(require_field(j, "samples", path), dot(path, "samples"));
    std::vector<T> samples;
    for (std::size_t i = 0; i < s.size(); ++i) {
      samples.push_back(read(s[i], at(dot(path, "samples"), i)));
    }
    if (depth < 0 || static_cast<std::size_t>(depth) != prefix_len + samples.size()) {
      fail(dot(path, "samples"), "sampled tail of depth " + std::to_string(depth) + " needs " +
                                     std::to_string(depth - static_cast<int>(prefix_len)) +
                                     " samples, got " + std::to_string(samples.size()));
    }
    return SampledTail<T>{depth, std::move(samples)};
  }
  fail(dot(path, "kind"), "unknown tail kind '" + kind + "' (constant | periodic | sampled)");
}

template <typename T, typename Reader>
Sequence<T> sequence_from_json(const Json& j, int n, const std::string& path, Reader read) {
  if (!j.is_object()) fail(path, "expected an object with prefix and tail");
  std::vector<T> prefix;
  if (j.contains("prefix")) {
    const auto& p = require_array(j["prefix"], dot(path, "prefix"));
    for (std::size_t i = 0; i < p.size(); ++i) prefix.push_back(read(p[i], at(dot(path, "prefix"), i)));
  }
  auto tail = tail_from_json<T>(require_field(j, "tail", path), dot(path, "tail"), prefix.size(),
                                read);
  try {
    return Sequence<T>(n, std::move(prefix), std::move(tail));
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

template <typename T>
Json sequence_to_json(const Sequence<T>& s) {
  const auto enc = [](const T& x) {
    if constexpr (std::is_same_v<T, UnitaryMatrix>) {
      return to_json(x.matrix());
    } else {
      return to_json(x);
    }
  };
  Json out = Json::object();
  out["prefix"] = Json::array();
  for (const auto& x : s.prefix()) out["prefix"].push_back(enc(x));
  Json tail = Json::object();
  std::visit(
      [&](const auto& t) {
        using R = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<R, ConstantTail<T>>) {
          tail["kind"] = "constant";
          tail["value"] = enc(t.value);
        } else if constexpr (std::is_same_v<R, PeriodicTail<T>>) {
          tail["kind"] = "periodic";
          tail["cycle"] = Json::array();
          for (const auto& x : t.cycle) tail["cycle"].push_back(enc(x));
        } else {
          tail["kind"] = "sampled";
          tail["depth"] = t.depth;
          tail["samples"] = Json::array();
          for (const auto& x : t.samples) tail["samples"].push_back(enc(x));
        }
      },
      s.tail());
  out["tail"] = std::move(tail);
  return out;
}

}  // namespace

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({number(m(i, j).real()), number(m(i, j).imag())}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Permutation& p) { return Json(p.one_line()); }

Json to_json(const Multiindex& w) {
  Json out = Json::array();
  for (int l : w) out.push_back(l + 1);
  return out;
}

Json to_json(const WordPoly& x) {
  Json out = Json::array();
  for (const auto& [k, c] : x.terms()) {
    Json t = Json::object();
    t["alpha"] = to_json(k.alpha);
    t["beta"] = to_json(k.beta);
    t["coeff"] = Json::array({number(c.real()), number(c.imag())});
    out.push_back(std::move(t));
  }
  return out;
}

Json to_json(const UnitarySequence& s) { return sequence_to_json(s); }
Json to_json(const PermutationSequence& s) { return sequence_to_json(s); }

const Json& require_field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  if (!j.contains(key)) fail(dot(path, key), "missing required field");
  return j[key];
}

int require_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

double require_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::string require_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  require_array(j, path);
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) fail(path, "matrix has no rows");
  ComplexMatrix m(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    const std::string rp = at(path, static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
      fail(rp, "expected a row of " + std::to_string(rows) + " entries (square matrix)");
    }
    for (Eigen::Index c = 0; c < rows; ++c) {
      m(i, c) = entry_from_json(row[static_cast<std::size_t>(c)], at(rp, static_cast<std::size_t>(c)));
    }
  }
  return m;
}

UnitaryMatrix unitary_from_json(const Json& j, const std::string& path, const Tolerances& tol) {
  try {
    return UnitaryMatrix::validated(matrix_from_json(j, path), tol);
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    fail(path, what);
  }
}

Permutation permutation_from_json(const Json& j, const std::string& path) {
  require_array(j, path);
  std::vector<int> images;
  for (std::size_t i = 0; i < j.size(); ++i) images.push_back(require_int(j[i], at(path, i)));
  try {
    return Permutation::from_one_line(images);
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

Multiindex word_letters_from_json(const Json& j, int n, const std::string& path) {
  require_array(j, path);
  Multiindex w;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int l = require_int(j[i], at(path, i));
    if (l < 1 || l > n) fail(at(path, i), "letter outside 1.." + std::to_string(n));
    w.push_back(l - 1);
  }
  return w;
}

WordPoly word_from_json(const Json& j, int n, const std::string& path) {
  require_array(j, path);
  WordPoly x(n);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tp = at(path, i);
    const auto a = word_letters_from_json(require_field(j[i], "alpha", tp), n, dot(tp, "alpha"));
    const auto b = word_letters_from_json(require_field(j[i], "beta", tp), n, dot(tp, "beta"));
    x.add(a, b, entry_from_json(require_field(j[i], "coeff", tp), dot(tp, "coeff")));
  }
  return x;
}

UnitarySequence unitary_sequence_from_json(const Json& j, int n, const std::string& path,
                                           const Tolerances& tol) {
  return sequence_from_json<UnitaryMatrix>(
      j, n, path, [&](const Json& e, const std::string& p) { return unitary_from_json(e, p, tol); });
}

PermutationSequence permutation_sequence_from_json(const Json& j, int n, const std::string& path) {
  return sequence_from_json<Permutation>(j, n, path, permutation_from_json);
}

}  // namespace cuntz
