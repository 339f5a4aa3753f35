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

#include "cuntz/permutation.hpp"

#include <sstream>

namespace cuntz {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t j = 0; j < images_.size(); ++j) {
    const int v = images_[j];
    if (v < 0 || v >= static_cast<int>(images_.size()) ||
        seen[static_cast<std::size_t>(v)]) {
      std::ostringstream msg;
      msg << "permutation: not a bijection (entry " << j + 1 << " maps to "
          << v + 1 << ")";
      throw ValidationError(msg.str());
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int m) {
  std::vector<int> im(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) im[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(im));
}

Permutation Permutation::from_one_line(const std::vector<int>& images_one_based) {
  std::vector<int> im;
  im.reserve(images_one_based.size());
  for (int v : images_one_based) im.push_back(v - 1);
  return Permutation(std::move(im));
}

std::optional<Permutation> Permutation::from_matrix(const ComplexMatrix& p,
                                                    double tol) {
  if (p.rows() != p.cols()) return std::nullopt;
  std::vector<int> im(static_cast<std::size_t>(p.cols()), -1);
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      const cplx e = p(i, j);
      if (std::abs(e - 1.0) <= tol) {
        if (im[static_cast<std::size_t>(j)] != -1) return std::nullopt;
        im[static_cast<std::size_t>(j)] = static_cast<int>(i);
      } else if (std::abs(e) > tol) {
        return std::nullopt;
      }
    }
    if (im[static_cast<std::size_t>(j)] == -1) return std::nullopt;
  }
  try {
    return Permutation(std::move(im));
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

std::vector<int> Permutation::one_line() const {
  std::vector<int> out;
  out.reserve(images_.size());
  for (int v : images_) out.push_back(v + 1);
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  }
  return Permutation(std::move(inv));
}

std::vector<int> Permutation::cycle_lengths() const {
  std::vector<int> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) {
    throw ValidationError("permutation product: size mismatch");
  }
  std::vector<int> im(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) im[static_cast<std::size_t>(i)] = a(b(i));
  return Permutation(std::move(im));
}

UnitaryMatrix permutation_matrix(const Permutation& sigma) {
  const Eigen::Index m = sigma.size();
  if (m == 0) throw ValidationError("permutation_matrix: empty permutation");
  ComplexMatrix p = ComplexMatrix::Zero(m, m);
  for (int j = 0; j < sigma.size(); ++j) p(sigma(j), j) = 1.0;
  return UnitaryMatrix::validated(std::move(p));
}

}  // namespace cuntz
