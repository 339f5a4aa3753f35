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
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "cuntz/errors.hpp"

namespace cuntz {

using cplx = std::complex<double>;

template <typename RealScalar>
using MatrixC =
    Eigen::Matrix<std::complex<RealScalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename RealScalar>
using VectorC = Eigen::Matrix<std::complex<RealScalar>, Eigen::Dynamic, 1>;

using ComplexMatrix = MatrixC<double>;
using ComplexVector = VectorC<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Numerical thresholds shared by every module. Defaults are the library-wide
/// contract; callers override per analysis.
struct Tolerances {
  double validation = 1e-9;    // unitarity and input checks
  double solver = 1e-10;       // relative tolerance of iterative solvers
  double verification = 1e-10; // exact-tail verification
  double equality = 1e-12;     // word-polynomial coefficient equality
  double prune = 1e-14;        // coefficient pruning on normalize
  Eigen::Index max_dim = Eigen::Index{1} << 14;
  int max_power_steps = 10000;
};

/// n^k for small non-negative exponents.
inline Eigen::Index ipow(Eigen::Index base, int exp) {
  Eigen::Index r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Wraps an angle into (-pi, pi].
inline double wrap_phase(double x) {
  double r = std::remainder(x, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

/// Largest singular value by power iteration on A*A from a fixed seeded start.
///
/// Stops when the Rayleigh quotient has settled to the relative solver
/// tolerance, using the observed contraction ratio to bound the remaining
/// error. Throws NumericError with the last iterates if `max_power_steps` is
/// exhausted.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real operator_norm(
    const Eigen::MatrixBase<Derived>& expr, const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  const auto a = expr.derived().eval();
  if (a.size() == 0) return Real(0);
  const Real fro2 = a.squaredNorm();
  if (fro2 == Real(0)) return Real(0);

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss;
  Vec x(a.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
      x(i) = Scalar(Real(gauss(rng)), Real(gauss(rng)));
    } else {
      x(i) = Scalar(gauss(rng));
    }
  }
  x.normalize();

  const Real floor = Real(1e-28) * std::max(Real(1), fro2);
  Real prev = -1, prev_change = -1;
  for (int step = 0; step < tol.max_power_steps; ++step) {
    const Vec y = a * x;
    const Vec z = a.adjoint() * y;
    const Real rq = y.squaredNorm();
    const Real zn = z.norm();
    if (zn == Real(0)) return std::sqrt(rq);
    const Real residual = (z - rq * x).norm();
    x = z / zn;
    if (residual <= Real(tol.solver) * rq) return std::sqrt(rq);
    if (prev >= 0) {
      const Real change = std::abs(rq - prev);
      if (change <= floor) return std::sqrt(rq);
      if (prev_change > 0) {
        const Real ratio = change / prev_change;
        if (ratio < Real(1)) {
          const Real remaining = change * ratio / (Real(1) - ratio);
          if (remaining <= Real(tol.solver) * rq) return std::sqrt(rq);
        }
      }
      prev_change = change;
    }
    prev = rq;
  }
  std::ostringstream msg;
  msg << "operator_norm: power iteration did not converge in "
      << tol.max_power_steps << " steps (dim " << a.rows() << "x" << a.cols()
      << ", last estimate " << std::sqrt(std::max(prev, Real(0)))
      << ", last change " << prev_change << ")";
  throw NumericError(msg.str());
}

/// Kronecker product a ⊗ b, first factor most significant.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> tensor(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
    const Tolerances& tol = {}) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > tol.max_dim || cols > tol.max_dim) {
    std::ostringstream msg;
    msg << "tensor: result dimension " << rows << "x" << cols
        << " exceeds the configured maximum " << tol.max_dim;
    throw CapacityError(msg.str());
  }
  return Eigen::kroneckerProduct(a.derived().eval(), b.derived().eval()).eval();
}

/// ‖U*U − I‖.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real unitarity_defect(
    const Eigen::MatrixBase<Derived>& u, const Tolerances& tol = {}) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic,
                            Eigen::Dynamic>;
  if (u.rows() != u.cols()) {
    throw ValidationError("unitarity_defect: matrix is not square");
  }
  const Mat g = u.adjoint() * u - Mat::Identity(u.rows(), u.cols());
  return operator_norm(g, tol);
}

/// Square complex matrix whose unitarity defect was certified at construction.
template <typename RealScalar>
class Unitary {
 public:
  using Matrix = MatrixC<RealScalar>;

  Unitary() : m_(Matrix::Identity(1, 1)), defect_(0) {}

  /// Throws ValidationError when the defect exceeds `tol.validation`.
  static Unitary validated(Matrix m, const Tolerances& tol = {}) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
      throw ValidationError("unitary: matrix must be square and non-empty");
    }
    const RealScalar d = unitarity_defect(m, tol);
    if (!(d <= RealScalar(tol.validation))) {
      std::ostringstream msg;
      msg << "unitary: defect " << d << " exceeds tolerance " << tol.validation;
      throw ValidationError(msg.str());
    }
    return Unitary(std::move(m), d);
  }

  static Unitary identity(Eigen::Index dim) {
    return Unitary(Matrix::Identity(dim, dim), 0);
  }

  const Matrix& matrix() const { return m_; }
  RealScalar defect() const { return defect_; }
  Eigen::Index dim() const { return m_.rows(); }

  Unitary adjoint() const { return Unitary(m_.adjoint(), defect_); }
  Unitary scaled(std::complex<RealScalar> phase) const {
    return Unitary(phase * m_, defect_);
  }

  friend Unitary operator*(const Unitary& a, const Unitary& b) {
    Matrix p = a.m_ * b.m_;
    const RealScalar d = unitarity_defect(p);
    return Unitary(std::move(p), d);
  }

 private:
  Unitary(Matrix m, RealScalar defect) : m_(std::move(m)), defect_(defect) {}

  Matrix m_;
  RealScalar defect_;
};

using UnitaryMatrix = Unitary<double>;

inline UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b,
                            const Tolerances& tol = {}) {
  return UnitaryMatrix::validated(tensor(a.matrix(), b.matrix(), tol), tol);
}

/// Minimiser of ‖e^{iψ}U − I‖ over the phase ψ.
struct PhaseAlignment {
  double psi = 0;    // in (−π, π]
  double delta = 0;  // minimal value of the norm
};

/// Sorted eigenphases in (−π, π]. The spectrum is cross-checked against u;
/// a failed check throws NumericError.
std::vector<double> eigenphases(const UnitaryMatrix& u, const Tolerances& tol = {});

/// Minimal enclosing arc of the eigenphases: ψ recentres the arc at 0 and
/// δ = max_j |e^{i(φ_j+ψ)} − 1|.
PhaseAlignment phase_align_to_identity(const UnitaryMatrix& u,
                                       const Tolerances& tol = {});

/// Phase φ = arg u(0,0) when ‖u − e^{iφ}I‖ ≤ tol.
std::optional<double> is_scalar_multiple_of_identity(const ComplexMatrix& u,
                                                     double tol);

/// e^{−iφ*}u for the eigenphase φ* of smallest modulus (ties toward φ > 0).
UnitaryMatrix rotate_to_contain_one(const UnitaryMatrix& u,
                                    const Tolerances& tol = {});

/// Pads a level-`from` element of F_n to level `to` (x ↦ x ⊗ I).
ComplexMatrix embed_level(const ComplexMatrix& x, int n, int from, int to);

/// Unit-norm entrywise comparison helper: max_ij |a_ij − b_ij|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace cuntz
