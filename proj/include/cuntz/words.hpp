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

#include <algorithm>
#include <cmath>
#include <compare>
#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cuntz/errors.hpp"
#include "cuntz/matrix_core.hpp"

namespace cuntz {

/// Word over the alphabet {0, …, n−1}; letter i stands for the generator
/// S_{i+1}.
using Multiindex = std::vector<int>;

namespace detail {

template <typename Scalar>
double magnitude(const Scalar& c) {
  using std::abs;
  return static_cast<double>(abs(c));
}

template <typename Scalar>
Scalar conjugate(const Scalar& c) {
  using std::conj;
  return Scalar(conj(c));
}

inline Multiindex concat(const Multiindex& a, Multiindex::const_iterator first,
                         Multiindex::const_iterator last) {
  Multiindex out;
  out.reserve(a.size() + static_cast<std::size_t>(last - first));
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), first, last);
  return out;
}

inline bool is_prefix(const Multiindex& p, const Multiindex& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

}  // namespace detail

/// Finite linear combination of monomials S_α S_β* in the Cuntz algebra O_n.
///
/// Terms are keyed by (α, β) and kept in a std::map so iteration order is
/// deterministic. Exact zeros are dropped on insertion; the unit relation
/// Σ_i S_i S_i* = 1 is applied only by `normalize_to_level` / `normal_form`.
template <typename Scalar>
class WordPolynomial {
 public:
  struct Key {
    Multiindex alpha;
    Multiindex beta;
    friend auto operator<=>(const Key&, const Key&) = default;
    friend bool operator==(const Key&, const Key&) = default;
  };
  using Terms = std::map<Key, Scalar>;
  using scalar_type = Scalar;

  explicit WordPolynomial(int n) : n_(n) {
    if (n < 2) throw ValidationError("word polynomial: alphabet size must be >= 2");
  }

  static WordPolynomial one(int n) {
    WordPolynomial p(n);
    p.add({}, {}, Scalar(1));
    return p;
  }

  /// S_{i+1} for the 0-based letter i.
  static WordPolynomial generator(int n, int i) {
    WordPolynomial p(n);
    p.add({i}, {}, Scalar(1));
    return p;
  }

  static WordPolynomial monomial(int n, const Multiindex& alpha,
                                 const Multiindex& beta, const Scalar& c = Scalar(1)) {
    WordPolynomial p(n);
    p.add(alpha, beta, c);
    return p;
  }

  int alphabet() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Multiindex& alpha, const Multiindex& beta, const Scalar& c) {
    check_word(alpha);
    check_word(beta);
    add_unchecked(Key{alpha, beta}, c);
  }

  /// True iff every term has |α| = |β|, i.e. the element lies in the core F_n.
  bool balanced() const {
    for (const auto& [k, c] : terms_) {
      if (k.alpha.size() != k.beta.size()) return false;
    }
    return true;
  }

  /// Longest word length appearing in any term.
  int level() const {
    std::size_t l = 0;
    for (const auto& [k, c] : terms_) l = std::max({l, k.alpha.size(), k.beta.size()});
    return static_cast<int>(l);
  }

  WordPolynomial& operator+=(const WordPolynomial& o) {
    require_same(o);
    for (const auto& [k, c] : o.terms_) add_unchecked(k, c);
    return *this;
  }
  WordPolynomial& operator-=(const WordPolynomial& o) {
    require_same(o);
    for (const auto& [k, c] : o.terms_) add_unchecked(k, Scalar(0) - c);
    return *this;
  }
  WordPolynomial& operator*=(const Scalar& s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c = c * s;
    return *this;
  }

  friend WordPolynomial operator+(WordPolynomial a, const WordPolynomial& b) { return a += b; }
  friend WordPolynomial operator-(WordPolynomial a, const WordPolynomial& b) { return a -= b; }
  friend WordPolynomial operator*(const Scalar& s, WordPolynomial a) { return a *= s; }
  friend WordPolynomial operator*(const WordPolynomial& a, const WordPolynomial& b) {
    return multiply(a, b);
  }
  /// Exact, term-by-term; see `equal` for equality modulo the unit relation.
  friend bool operator==(const WordPolynomial& a, const WordPolynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  void require_same(const WordPolynomial& o) const {
    if (o.n_ != n_) {
      std::ostringstream msg;
      msg << "word polynomial: alphabet mismatch (" << n_ << " vs " << o.n_ << ")";
      throw ValidationError(msg.str());
    }
  }

  // Skips letter validation; callers guarantee letters are in range.
  void add_unchecked(Key key, const Scalar& c) {
    if (c == Scalar(0)) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), c);
      return;
    }
    it->second = it->second + c;
    if (it->second == Scalar(0)) terms_.erase(it);
  }

 private:
  void check_word(const Multiindex& w) const {
    for (int letter : w) {
      if (letter < 0 || letter >= n_) {
        std::ostringstream msg;
        msg << "word polynomial: letter " << letter + 1 << " outside 1.." << n_;
        throw ValidationError(msg.str());
      }
    }
  }

  int n_;
  Terms terms_;
};

using WordPoly = WordPolynomial<cplx>;

/// Product via S_α S_β* · S_γ S_δ* = S_{αγ''} S_δ* if γ = βγ'',
/// S_α S_{δβ''}* if β = γβ'', and 0 otherwise.
template <typename Scalar>
WordPolynomial<Scalar> multiply(const WordPolynomial<Scalar>& x,
                                const WordPolynomial<Scalar>& y) {
  x.require_same(y);
  using Key = typename WordPolynomial<Scalar>::Key;
  WordPolynomial<Scalar> out(x.alphabet());
  for (const auto& [kx, cx] : x.terms()) {
    const Multiindex& b = kx.beta;
    for (const auto& [ky, cy] : y.terms()) {
      const Multiindex& g = ky.alpha;
      if (g.size() >= b.size()) {
        if (!std::equal(b.begin(), b.end(), g.begin())) continue;
        out.add_unchecked(
            Key{detail::concat(kx.alpha, g.begin() + static_cast<std::ptrdiff_t>(b.size()),
                               g.end()),
                ky.beta},
            cx * cy);
      } else {
        if (!std::equal(g.begin(), g.end(), b.begin())) continue;
        out.add_unchecked(
            Key{kx.alpha,
                detail::concat(ky.beta, b.begin() + static_cast<std::ptrdiff_t>(g.size()),
                               b.end())},
            cx * cy);
      }
    }
  }
  return out;
}

template <typename Scalar>
WordPolynomial<Scalar> adjoint(const WordPolynomial<Scalar>& x) {
  using Key = typename WordPolynomial<Scalar>::Key;
  WordPolynomial<Scalar> out(x.alphabet());
  for (const auto& [k, c] : x.terms()) {
    out.add_unchecked(Key{k.beta, k.alpha}, detail::conjugate(c));
  }
  return out;
}

/// Canonical shift φ(x) = Σ_i S_i x S_i*.
template <typename Scalar>
WordPolynomial<Scalar> phi(const WordPolynomial<Scalar>& x) {
  using Key = typename WordPolynomial<Scalar>::Key;
  WordPolynomial<Scalar> out(x.alphabet());
  for (const auto& [k, c] : x.terms()) {
    for (int i = 0; i < x.alphabet(); ++i) {
      Multiindex a{i}, b{i};
      a.insert(a.end(), k.alpha.begin(), k.alpha.end());
      b.insert(b.end(), k.beta.begin(), k.beta.end());
      out.add_unchecked(Key{std::move(a), std::move(b)}, c);
    }
  }
  return out;
}

template <typename Scalar>
WordPolynomial<Scalar> phi_power(const WordPolynomial<Scalar>& x, int times) {
  WordPolynomial<Scalar> out = x;
  for (int i = 0; i < times; ++i) out = phi(out);
  return out;
}

/// Pads every term S_α S_β* with min(|α|,|β|) < m to Σ_γ S_{αγ} S_{βγ}*
/// over words γ of the missing length, then prunes coefficients below
/// `prune_tol` (strictly).
template <typename Scalar>
WordPolynomial<Scalar> normalize_to_level(const WordPolynomial<Scalar>& x, int m,
                                          double prune_tol = 0.0) {
  using Key = typename WordPolynomial<Scalar>::Key;
  const int n = x.alphabet();
  WordPolynomial<Scalar> out(n);
  for (const auto& [k, c] : x.terms()) {
    const int short_len = static_cast<int>(std::min(k.alpha.size(), k.beta.size()));
    const int pad = std::max(0, m - short_len);
    const Eigen::Index count = ipow(n, pad);
    for (Eigen::Index idx = 0; idx < count; ++idx) {
      Multiindex a = k.alpha, b = k.beta;
      Eigen::Index rest = idx;
      Multiindex tail(static_cast<std::size_t>(pad));
      for (int p = pad - 1; p >= 0; --p) {
        tail[static_cast<std::size_t>(p)] = static_cast<int>(rest % n);
        rest /= n;
      }
      a.insert(a.end(), tail.begin(), tail.end());
      b.insert(b.end(), tail.begin(), tail.end());
      out.add_unchecked(Key{std::move(a), std::move(b)}, c);
    }
  }
  if (prune_tol > 0) {
    WordPolynomial<Scalar> pruned(n);
    for (const auto& [k, c] : out.terms()) {
      if (!(detail::magnitude(c) < prune_tol)) pruned.add_unchecked(k, c);
    }
    return pruned;
  }
  return out;
}

/// Unique representative modulo the unit relation: all terms padded so that
/// min(|α|,|β|) equals the largest such value present.
template <typename Scalar>
WordPolynomial<Scalar> normal_form(const WordPolynomial<Scalar>& x,
                                   double prune_tol = 0.0) {
  int m = 0;
  for (const auto& [k, c] : x.terms()) {
    m = std::max(m, static_cast<int>(std::min(k.alpha.size(), k.beta.size())));
  }
  return normalize_to_level(x, m, prune_tol);
}

/// Largest coefficient of the normal form of x − y.
template <typename Scalar>
double max_deviation(const WordPolynomial<Scalar>& x, const WordPolynomial<Scalar>& y) {
  const WordPolynomial<Scalar> d = normal_form(x - y);
  double worst = 0;
  for (const auto& [k, c] : d.terms()) worst = std::max(worst, detail::magnitude(c));
  return worst;
}

template <typename Scalar>
bool equal(const WordPolynomial<Scalar>& x, const WordPolynomial<Scalar>& y,
           double tol = 1e-12) {
  return max_deviation(x, y) <= tol;
}

/// Inverse of padding: merges complete families Σ_i c S_{αi} S_{βi}* into
/// c S_α S_β* while all n coefficients agree within `tol`. Cosmetic; the
/// result is equal to x modulo the unit relation.
template <typename Scalar>
WordPolynomial<Scalar> compress(const WordPolynomial<Scalar>& x, double tol = 0.0) {
  using Key = typename WordPolynomial<Scalar>::Key;
  const int n = x.alphabet();
  WordPolynomial<Scalar> cur = x;
  for (bool changed = true; changed;) {
    changed = false;
    std::map<Key, std::vector<std::pair<int, Scalar>>> families;
    for (const auto& [k, c] : cur.terms()) {
      if (k.alpha.empty() || k.beta.empty() || k.alpha.back() != k.beta.back()) continue;
      Key parent{Multiindex(k.alpha.begin(), k.alpha.end() - 1),
                 Multiindex(k.beta.begin(), k.beta.end() - 1)};
      families[parent].emplace_back(k.alpha.back(), c);
    }
    WordPolynomial<Scalar> next(n);
    std::map<Key, bool> merged;
    for (const auto& [parent, members] : families) {
      if (static_cast<int>(members.size()) != n) continue;
      bool same = true;
      for (const auto& m : members) {
        if (detail::magnitude(m.second - members.front().second) > tol) same = false;
      }
      if (same) merged[parent] = true;
    }
    if (merged.empty()) break;
    for (const auto& [k, c] : cur.terms()) {
      if (!k.alpha.empty() && !k.beta.empty() && k.alpha.back() == k.beta.back()) {
        Key parent{Multiindex(k.alpha.begin(), k.alpha.end() - 1),
                   Multiindex(k.beta.begin(), k.beta.end() - 1)};
        if (merged.count(parent)) {
          if (k.alpha.back() == 0) next.add_unchecked(parent, c);
          continue;
        }
      }
      next.add_unchecked(k, c);
    }
    cur = std::move(next);
    changed = true;
  }
  return cur;
}

/// Normalized trace τ(S_α S_β*) = δ_{αβ} n^{−|α|}.
template <typename Scalar>
Scalar tau(const WordPolynomial<Scalar>& x) {
  if (!x.balanced()) throw DomainError("tau: element is not balanced");
  Scalar total(0);
  for (const auto& [k, c] : x.terms()) {
    if (k.alpha != k.beta) continue;
    Scalar w = c;
    for (std::size_t i = 0; i < k.alpha.size(); ++i) w = w / Scalar(x.alphabet());
    total = total + w;
  }
  return total;
}

/// E_k = id_k ⊗ τ on balanced elements.
template <typename Scalar>
WordPolynomial<Scalar> cond_expectation(int k, const WordPolynomial<Scalar>& x) {
  if (!x.balanced()) throw DomainError("cond_expectation: element is not balanced");
  if (k < 0) throw DomainError("cond_expectation: negative level");
  using Key = typename WordPolynomial<Scalar>::Key;
  WordPolynomial<Scalar> out(x.alphabet());
  const auto kk = static_cast<std::size_t>(k);
  for (const auto& [key, c] : x.terms()) {
    if (key.alpha.size() <= kk) {
      out.add_unchecked(key, c);
      continue;
    }
    if (!std::equal(key.alpha.begin() + k, key.alpha.end(), key.beta.begin() + k)) continue;
    Scalar w = c;
    for (std::size_t i = kk; i < key.alpha.size(); ++i) w = w / Scalar(x.alphabet());
    out.add_unchecked(Key{Multiindex(key.alpha.begin(), key.alpha.begin() + k),
                          Multiindex(key.beta.begin(), key.beta.begin() + k)},
                      w);
  }
  return out;
}

/// True iff the normal form has only terms with α = β (above `tol`).
template <typename Scalar>
bool is_diagonal(const WordPolynomial<Scalar>& x, double tol = 1e-12) {
  const WordPolynomial<Scalar> nf = normal_form(x);
  for (const auto& [k, c] : nf.terms()) {
    if (k.alpha != k.beta && detail::magnitude(c) > tol) return false;
  }
  return true;
}

/// Products V_j = v φ(v) ⋯ φ^{j−1}(v) for j = 0..max_len.
template <typename Scalar>
std::vector<WordPolynomial<Scalar>> lambda_powers(const WordPolynomial<Scalar>& v,
                                                  int max_len) {
  std::vector<WordPolynomial<Scalar>> out;
  out.push_back(WordPolynomial<Scalar>::one(v.alphabet()));
  for (int j = 1; j <= max_len; ++j) out.push_back(multiply(v, phi(out.back())));
  return out;
}

/// Image of x under the endomorphism λ_v (λ_v(S_i) = v S_i) of O_n:
/// λ_v(S_α S_β*) = V_{|α|} S_α S_β* V_{|β|}*.
///
/// Throws ValidationError if v is not unitary within `tol`, and
/// ConsistencyError if `check` is set and the images v S_i fail the Cuntz
/// relations.
template <typename Scalar>
WordPolynomial<Scalar> lambda_apply(const WordPolynomial<Scalar>& v,
                                    const WordPolynomial<Scalar>& x, bool check = false,
                                    double tol = 1e-9) {
  v.require_same(x);
  const int n = v.alphabet();
  const auto one = WordPolynomial<Scalar>::one(n);
  const auto v_star = adjoint(v);
  if (!equal(multiply(v, v_star), one, tol) || !equal(multiply(v_star, v), one, tol)) {
    throw ValidationError("lambda_apply: v is not unitary");
  }
  if (check) {
    WordPolynomial<Scalar> range_sum(n);
    std::vector<WordPolynomial<Scalar>> t;
    for (int i = 0; i < n; ++i) t.push_back(multiply(v, WordPolynomial<Scalar>::generator(n, i)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto g = multiply(adjoint(t[static_cast<std::size_t>(i)]),
                                t[static_cast<std::size_t>(j)]);
        const auto expect = i == j ? one : WordPolynomial<Scalar>(n);
        if (!equal(g, expect, tol)) {
          std::ostringstream msg;
          msg << "lambda_apply: images violate T_" << i + 1 << "* T_" << j + 1
              << " = delta";
          throw ConsistencyError(msg.str());
        }
      }
      range_sum += multiply(t[static_cast<std::size_t>(i)],
                            adjoint(t[static_cast<std::size_t>(i)]));
    }
    if (!equal(range_sum, one, tol)) {
      throw ConsistencyError("lambda_apply: images violate sum T_i T_i* = 1");
    }
  }
  const auto powers = lambda_powers(v, x.level());
  std::vector<WordPolynomial<Scalar>> powers_star;
  for (const auto& p : powers) powers_star.push_back(adjoint(p));

  WordPolynomial<Scalar> out(n);
  for (const auto& [k, c] : x.terms()) {
    const auto mono = WordPolynomial<Scalar>::monomial(n, k.alpha, k.beta, c);
    out += multiply(multiply(powers[k.alpha.size()], mono), powers_star[k.beta.size()]);
  }
  return out;
}

/// Human-readable rendering, e.g. "(1+0i) S1S2* + ..."; letters 1-based.
std::string to_string(const WordPoly& x);

/// Row/column index of the word α in M_{n^k}, first letter most significant.
Eigen::Index word_index(const Multiindex& w, int n);
Multiindex index_word(Eigen::Index idx, int n, int k);

/// Matrix-unit correspondence F_n^k ≅ M_{n^k}: entry (α, β) ↦ S_α S_β*.
WordPoly from_matrix(int n, int k, const ComplexMatrix& m);

/// Inverse of `from_matrix`; shorter terms are padded by the unit relation.
/// Throws DomainError for unbalanced input or terms longer than k.
ComplexMatrix to_matrix(const WordPoly& x, int k);

/// Level of λ_v(x) for v at level L ≥ 1 and x at level k: L + k − 1
/// (0 when k = 0).
inline int lambda_image_level(int v_level, int k) { return k == 0 ? 0 : v_level + k - 1; }

/// V_k = v φ(v) ⋯ φ^{k−1}(v) as a matrix at level L + k − 1 (k ≥ 1).
ComplexMatrix lambda_power_matrix(const ComplexMatrix& v, int n, int v_level, int k);

/// Matrix realization of `lambda_apply` on a level-k element x.
ComplexMatrix lambda_apply_matrix(const ComplexMatrix& v, int n, int v_level,
                                  const ComplexMatrix& x, int k);

}  // namespace cuntz
