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

#include <numeric>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include "cuntz/errors.hpp"
#include "cuntz/matrix_core.hpp"
#include "cuntz/permutation.hpp"

namespace cuntz {

template <typename T>
struct ConstantTail {
  T value;
};

template <typename T>
struct PeriodicTail {
  std::vector<T> cycle;
};

/// Finitely many explicit terms; `depth` is the largest supported index k
/// (prefix included), so `samples` holds terms prefix+1 .. depth.
template <typename T>
struct SampledTail {
  int depth = 0;
  std::vector<T> samples;
};

template <typename T>
using TailRule = std::variant<ConstantTail<T>, PeriodicTail<T>, SampledTail<T>>;

inline Eigen::Index element_size(const UnitaryMatrix& u) { return u.dim(); }
inline Eigen::Index element_size(const Permutation& p) { return p.size(); }

/// Infinite sequence x_1, x_2, … given by an explicit prefix and a tail rule.
template <typename T>
class Sequence {
 public:
  Sequence(int n, std::vector<T> prefix, TailRule<T> tail)
      : n_(n), prefix_(std::move(prefix)), tail_(std::move(tail)) {
    if (n_ < 2) throw ValidationError("sequence: alphabet size must be >= 2");
    for (std::size_t i = 0; i < prefix_.size(); ++i) check(prefix_[i], "prefix", i);
    std::visit(
        [&](const auto& t) {
          using R = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<R, ConstantTail<T>>) {
            check(t.value, "tail", 0);
          } else if constexpr (std::is_same_v<R, PeriodicTail<T>>) {
            if (t.cycle.empty()) throw ValidationError("sequence: periodic tail has an empty cycle");
            for (std::size_t i = 0; i < t.cycle.size(); ++i) check(t.cycle[i], "cycle", i);
          } else {
            const auto expected = static_cast<std::size_t>(t.depth) - prefix_.size();
            if (t.depth < static_cast<int>(prefix_.size()) || t.samples.size() != expected) {
              std::ostringstream msg;
              msg << "sequence: sampled tail of depth " << t.depth << " needs " << expected
                  << " samples after a prefix of " << prefix_.size() << ", got "
                  << t.samples.size();
              throw ValidationError(msg.str());
            }
            for (std::size_t i = 0; i < t.samples.size(); ++i) check(t.samples[i], "samples", i);
          }
        },
        tail_);
  }

  int n() const { return n_; }
  const std::vector<T>& prefix() const { return prefix_; }
  int prefix_length() const { return static_cast<int>(prefix_.size()); }
  const TailRule<T>& tail() const { return tail_; }

  bool is_constant() const { return std::holds_alternative<ConstantTail<T>>(tail_); }
  bool is_periodic() const { return std::holds_alternative<PeriodicTail<T>>(tail_); }
  bool is_sampled() const { return std::holds_alternative<SampledTail<T>>(tail_); }

  /// Constant and periodic tails determine the whole sequence.
  bool certifiable() const { return !is_sampled(); }

  /// Largest index available; empty when the sequence is infinite.
  std::optional<int> depth() const {
    if (const auto* s = std::get_if<SampledTail<T>>(&tail_)) return s->depth;
    return std::nullopt;
  }

  /// Tail period (1 for constant tails); empty for sampled tails.
  std::optional<int> period() const {
    if (is_constant()) return 1;
    if (const auto* p = std::get_if<PeriodicTail<T>>(&tail_)) {
      return static_cast<int>(p->cycle.size());
    }
    return std::nullopt;
  }

  /// x_k for k ≥ 1.
  const T& factor_at(int k) const {
    if (k < 1) throw RangeError("sequence: indices start at 1");
    if (k <= prefix_length()) return prefix_[static_cast<std::size_t>(k - 1)];
    const int j = k - prefix_length() - 1;
    if (const auto* c = std::get_if<ConstantTail<T>>(&tail_)) return c->value;
    if (const auto* p = std::get_if<PeriodicTail<T>>(&tail_)) {
      return p->cycle[static_cast<std::size_t>(j) % p->cycle.size()];
    }
    const auto& s = std::get<SampledTail<T>>(tail_);
    if (k > s.depth) {
      std::ostringstream msg;
      msg << "sequence: index " << k << " beyond sampled depth " << s.depth;
      throw RangeError(msg.str());
    }
    return s.samples[static_cast<std::size_t>(j)];
  }

  /// Throws RangeError unless indices 1..k are available.
  void require_depth(int k) const {
    const auto d = depth();
    if (d && k > *d) {
      std::ostringstream msg;
      msg << "sequence: depth " << k << " requested but only " << *d << " available";
      throw RangeError(msg.str());
    }
  }

 private:
  void check(const T& x, const char* where, std::size_t i) const {
    if (element_size(x) != n_) {
      std::ostringstream msg;
      msg << "sequence: " << where << "[" << i << "] has size " << element_size(x)
          << ", expected " << n_;
      throw ValidationError(msg.str());
    }
  }

  int n_;
  std::vector<T> prefix_;
  TailRule<T> tail_;
};

using UnitarySequence = Sequence<UnitaryMatrix>;
using PermutationSequence = Sequence<Permutation>;

}  // namespace cuntz
