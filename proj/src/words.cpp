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

#include "cuntz/words.hpp"

#include <iomanip>

namespace cuntz {

namespace {

// (A ⊗ I_s) X without forming the Kronecker product. Each column of X is
// viewed as an s × dim(A) block whose rows are the trailing slots.
ComplexMatrix left_kron_identity(const ComplexMatrix& a, Eigen::Index s,
                                 const ComplexMatrix& x) {
  const Eigen::Index na = a.rows();
  ComplexMatrix y(na * s, x.cols());
  const ComplexMatrix at = a.transpose();
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    Eigen::Map<const ComplexMatrix> in(x.col(c).data(), s, na);
    Eigen::Map<ComplexMatrix> out(y.col(c).data(), s, na);
    out.noalias() = in * at;
  }
  return y;
}

void write_word(std::ostream& os, const Multiindex& w) {
  os << "S_";
  for (int l : w) os << l + 1;
}

}  // namespace

Eigen::Index word_index(const Multiindex& w, int n) {
  Eigen::Index idx = 0;
  for (int l : w) idx = idx * n + l;
  return idx;
}

Multiindex index_word(Eigen::Index idx, int n, int k) {
  Multiindex w(static_cast<std::size_t>(k));
  for (int p = k - 1; p >= 0; --p) {
    w[static_cast<std::size_t>(p)] = static_cast<int>(idx % n);
    idx /= n;
  }
  return w;
}

WordPoly from_matrix(int n, int k, const ComplexMatrix& m) {
  const Eigen::Index dim = ipow(n, k);
  if (m.rows() != dim || m.cols() != dim) {
    std::ostringstream msg;
    msg << "from_matrix: expected " << dim << "x" << dim << " matrix for level " << k
        << ", got " << m.rows() << "x" << m.cols();
    throw ValidationError(msg.str());
  }
  WordPoly out(n);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (m(r, c) == cplx(0)) continue;
      out.add_unchecked({index_word(r, n, k), index_word(c, n, k)}, m(r, c));
    }
  }
  return out;
}

ComplexMatrix to_matrix(const WordPoly& x, int k) {
  if (!x.balanced()) throw DomainError("to_matrix: element is not balanced");
  if (x.level() > k) {
    std::ostringstream msg;
    msg << "to_matrix: element has level " << x.level() << " > " << k;
    throw DomainError(msg.str());
  }
  const int n = x.alphabet();
  const Eigen::Index dim = ipow(n, k);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& [key, c] : x.terms()) {
    const int pad = k - static_cast<int>(key.alpha.size());
    const Eigen::Index s = ipow(n, pad);
    const Eigen::Index ia = word_index(key.alpha, n) * s;
    const Eigen::Index ib = word_index(key.beta, n) * s;
    for (Eigen::Index g = 0; g < s; ++g) m(ia + g, ib + g) += c;
  }
  return m;
}

ComplexMatrix lambda_power_matrix(const ComplexMatrix& v, int n, int v_level, int k) {
  if (v_level < 1 || k < 1) throw DomainError("lambda_power_matrix: levels must be >= 1");
  if (v.rows() != ipow(n, v_level)) {
    throw ValidationError("lambda_power_matrix: v has the wrong dimension for its level");
  }
  ComplexMatrix power = v;
  for (int j = 2; j <= k; ++j) {
    const Eigen::Index block = power.rows();
    ComplexMatrix shifted = ComplexMatrix::Zero(n * block, n * block);
    for (int i = 0; i < n; ++i) shifted.block(i * block, i * block, block, block) = power;
    power = left_kron_identity(v, ipow(n, j - 1), shifted);
  }
  return power;
}

ComplexMatrix lambda_apply_matrix(const ComplexMatrix& v, int n, int v_level,
                                  const ComplexMatrix& x, int k) {
  if (k == 0) return x;
  const ComplexMatrix power = lambda_power_matrix(v, n, v_level, k);
  const int out_level = lambda_image_level(v_level, k);
  const ComplexMatrix padded = embed_level(x, n, k, out_level);
  return power * padded * power.adjoint();
}

std::string to_string(const WordPoly& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  os << std::setprecision(6);
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (k.alpha.empty() && k.beta.empty()) continue;
    os << " ";
    if (!k.alpha.empty()) write_word(os, k.alpha);
    if (!k.beta.empty()) {
      write_word(os, k.beta);
      os << "*";
    }
  }
  return os.str();
}

}  // namespace cuntz
