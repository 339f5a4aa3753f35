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

#include "cuntz/diagonal.hpp"

#include <map>
#include <set>
#include <sstream>

namespace cuntz {

namespace {

WordPoly permutation_word(int n, const Permutation& sigma) {
  WordPoly p(n);
  for (int j = 0; j < n; ++j) p.add({sigma(j)}, {j}, cplx(1.0));
  return p;
}

ExtensiblePermutation telescoped(const PermutationSequence& seq) {
  ExtensiblePermutation ext;
  ext.r = seq.prefix_length();
  ext.w_factors.push_back(seq.factor_at(1));
  for (int k = 1; k <= ext.r; ++k) {
    ext.w_factors.push_back(seq.factor_at(k + 1) * seq.factor_at(k).inverse());
  }
  ext.w_word = build_permutation_unitary(ext);
  return ext;
}

// Fine words of a diagonal projection sum, all padded to length m.
std::set<Multiindex> expand(const std::vector<Multiindex>& words, int n, int m) {
  std::set<Multiindex> out;
  for (const auto& w : words) {
    const int pad = m - static_cast<int>(w.size());
    for (const auto& tail : all_words(n, pad)) {
      Multiindex full = w;
      full.insert(full.end(), tail.begin(), tail.end());
      out.insert(std::move(full));
    }
  }
  return out;
}

}  // namespace

CylinderWord::CylinderWord(int n, Multiindex letters) : n_(n), letters_(std::move(letters)) {
  if (n_ < 2) throw ValidationError("cylinder word: alphabet size must be >= 2");
  for (int l : letters_) {
    if (l < 0 || l >= n_) {
      std::ostringstream msg;
      msg << "cylinder word: letter " << l + 1 << " outside 1.." << n_;
      throw ValidationError(msg.str());
    }
  }
}

std::vector<Multiindex> all_words(int n, int k) {
  std::vector<Multiindex> out;
  const Eigen::Index count = ipow(n, k);
  out.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) out.push_back(index_word(i, n, k));
  return out;
}

CylinderWord act_on_word(const PermutationSequence& seq, const CylinderWord& x) {
  if (x.n() != seq.n()) throw ValidationError("act_on_word: alphabet mismatch");
  seq.require_depth(x.length());
  Multiindex y(x.letters().size());
  for (int k = 1; k <= x.length(); ++k) {
    y[static_cast<std::size_t>(k - 1)] = seq.factor_at(k)(x.letters()[static_cast<std::size_t>(k - 1)]);
  }
  return CylinderWord(x.n(), std::move(y));
}

std::string kind_name(const DiagonalVerdict& v) {
  switch (v.result.index()) {
    case 0: return "ExtensiblePermutation";
    case 1: return "NotExtensible";
    default: return "Inconclusive";
  }
}

DiagonalVerdict decide_extension(const PermutationSequence& seq) {
  const int m = seq.prefix_length();
  DiagonalVerdict out;
  if (const auto* p = std::get_if<PeriodicTail<Permutation>>(&seq.tail())) {
    const auto& c = p->cycle;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] != c[(j + 1) % c.size()]) {
        const int k = m + 1 + static_cast<int>(j);
        out.result = DiagonalNotExtensible{{k, k + 1}};
        return out;
      }
    }
  }
  if (const auto* s = std::get_if<SampledTail<Permutation>>(&seq.tail())) {
    DiagonalInconclusive inc;
    inc.window = {m + 1, s->depth};
    inc.window_constant = true;
    for (std::size_t j = 1; j < s->samples.size(); ++j) {
      if (s->samples[j] != s->samples[j - 1]) inc.window_constant = false;
    }
    out.result = inc;
    return out;
  }
  out.result = telescoped(seq);
  return out;
}

WordPoly build_permutation_unitary(const ExtensiblePermutation& ext) {
  if (ext.w_factors.empty()) throw ContractError("build_permutation_unitary: no factors");
  const int n = ext.w_factors.front().size();
  WordPoly w = permutation_word(n, ext.w_factors.front());
  for (std::size_t j = 1; j < ext.w_factors.size(); ++j) {
    if (ext.w_factors[j].is_identity()) continue;
    w = w * phi_power(permutation_word(n, ext.w_factors[j]), static_cast<int>(j));
  }
  return compress(w);
}

WordPoly build_permutation_unitary(const DiagonalVerdict& verdict) {
  const auto* ext = std::get_if<ExtensiblePermutation>(&verdict.result);
  if (!ext) {
    throw ContractError("build_permutation_unitary: verdict is " + kind_name(verdict));
  }
  return build_permutation_unitary(*ext);
}

Permutation slot_permutation(const ExtensiblePermutation& ext, int n, int k) {
  Permutation p = Permutation::identity(n);
  for (int j = 1; j <= k && j <= static_cast<int>(ext.w_factors.size()); ++j) {
    p = ext.w_factors[static_cast<std::size_t>(j - 1)] * p;
  }
  return p;
}

void require_permutation_unitary(const WordPoly& w) {
  if (!w.balanced()) throw ValidationError("permutation unitary: element is not in F_n");
  for (const auto& [k, c] : w.terms()) {
    if (c != cplx(1.0)) throw ValidationError("permutation unitary: coefficient other than 1");
  }
  const int level = std::max(1, w.level());
  if (!Permutation::from_matrix(to_matrix(w, level))) {
    throw ValidationError("permutation unitary: matrix is not a permutation matrix");
  }
}

DiagonalVerification verify_diagonal_extension(const WordPoly& w, const PermutationSequence& seq,
                                               int depth, double tol) {
  require_permutation_unitary(w);
  if (w.alphabet() != seq.n()) throw ValidationError("verify_diagonal_extension: alphabet mismatch");
  DiagonalVerification rep;
  rep.depth = depth;
  for (int k = 1; k <= depth; ++k) {
    for (const auto& x : all_words(seq.n(), k)) {
      const CylinderWord cx(seq.n(), x);
      const WordPoly img = lambda_apply(w, cx.projection());
      const WordPoly expect = act_on_word(seq, cx).projection();
      ++rep.checked;
      if (!equal(img, expect, tol)) {
        rep.passed = false;
        rep.counterexample = x;
        rep.image = compress(normal_form(img));
        rep.expected = expect;
        return rep;
      }
    }
  }
  return rep;
}

FixedPointResult fixed_point_test(const WordPoly& v, int depth, double tol) {
  FixedPointResult out;
  out.v_in_diagonal = is_diagonal(v, tol);
  for (int k = 1; k <= depth && out.fixes_diagonal; ++k) {
    for (const auto& x : all_words(v.alphabet(), k)) {
      const WordPoly p = WordPoly::monomial(v.alphabet(), x, x);
      if (!equal(lambda_apply(v, p), p, tol)) {
        out.fixes_diagonal = false;
        out.counterexample = x;
        break;
      }
    }
  }
  if (out.fixes_diagonal && !out.v_in_diagonal && depth >= v.level() + 1) {
    throw ConsistencyError("fixed_point_test: lambda_v fixes the diagonal but v is not diagonal");
  }
  return out;
}

DiagonalAction perm_endo_diagonal_action(const WordPoly& w, int depth, double tol) {
  require_permutation_unitary(w);
  const int n = w.alphabet();
  DiagonalAction out;
  for (int k = 1; k <= depth; ++k) {
    LevelMap lm;
    lm.k = k;
    std::vector<std::vector<Multiindex>> images;
    int finest = k;
    for (const auto& x : all_words(n, k)) {
      const WordPoly img = normal_form(lambda_apply(w, WordPoly::monomial(n, x, x)), tol);
      std::vector<Multiindex> fine;
      for (const auto& [key, c] : img.terms()) {
        if (key.alpha != key.beta || std::abs(c - cplx(1.0)) > tol) {
          std::ostringstream msg;
          msg << "perm_endo_diagonal_action: image of a length-" << k
              << " cylinder projection is not a sum of cylinder projections";
          throw StructuralError(msg.str(), k);
        }
        fine.push_back(key.alpha);
        finest = std::max(finest, static_cast<int>(key.alpha.size()));
      }
      std::vector<Multiindex> coarse;
      WordPoly sum(n);
      for (const auto& f : fine) sum.add(f, f, cplx(1.0));
      const WordPoly merged = compress(sum);
      for (const auto& [key, c] : merged.terms()) coarse.push_back(key.alpha);
      lm.relation.emplace_back(x, std::move(coarse));
      images.push_back(std::move(fine));
    }

    std::map<Multiindex, std::size_t> owner;
    lm.injective = true;
    std::vector<std::set<Multiindex>> expanded;
    for (std::size_t i = 0; i < images.size(); ++i) {
      expanded.push_back(expand(images[i], n, finest));
      if (expanded.back().empty()) lm.injective = false;
      for (const auto& f : expanded.back()) {
        if (!owner.emplace(f, i).second) lm.injective = false;
      }
    }
    // Each length-k cylinder must be an exact union of images.
    lm.surjective = true;
    for (const auto& y : all_words(n, k)) {
      std::set<std::size_t> hit;
      for (const auto& tail : all_words(n, finest - k)) {
        Multiindex f = y;
        f.insert(f.end(), tail.begin(), tail.end());
        const auto it = owner.find(f);
        if (it == owner.end()) {
          lm.surjective = false;
        } else {
          hit.insert(it->second);
        }
      }
      for (std::size_t i : hit) {
        for (const auto& f : expanded[i]) {
          if (!std::equal(y.begin(), y.end(), f.begin())) lm.surjective = false;
        }
      }
    }
    out.injective = out.injective && lm.injective;
    out.surjective = out.surjective && lm.surjective;
    out.levels.push_back(std::move(lm));
  }
  return out;
}

}  // namespace cuntz
