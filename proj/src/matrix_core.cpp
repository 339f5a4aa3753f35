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

#include "cuntz/matrix_core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cuntz {

namespace {

// Phases this close to −π are reported as +π so that −1 has a single label.
constexpr double kBranchSnap = 1e-12;

double canonical_phase(cplx z) {
  double p = wrap_phase(std::arg(z));
  if (p < -kPi + kBranchSnap) p = kPi;
  return p;
}

}  // namespace

std::vector<double> eigenphases(const UnitaryMatrix& u, const Tolerances& tol) {
  if (!(u.defect() <= tol.validation)) {
    throw ValidationError("eigenphases: input is not unitary within tolerance");
  }
  const ComplexMatrix& m = u.matrix();
  const Eigen::Index dim = m.rows();
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigenphases: Schur decomposition failed");
  }
  const ComplexVector lambda = solver.eigenvalues();

  std::vector<double> phases;
  phases.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index j = 0; j < dim; ++j) phases.push_back(canonical_phase(lambda(j)));
  std::sort(phases.begin(), phases.end());

  // Spectrum check: Cayley–Hamilton product for small dims, smallest
  // singular value of u − λI otherwise.
  const double bound = std::max(tol.validation, 1e-9) * std::pow(2.0, double(dim));
  if (dim <= 4) {
    ComplexMatrix prod = ComplexMatrix::Identity(dim, dim);
    for (double p : phases) {
      prod = prod * (m - std::polar(1.0, p) * ComplexMatrix::Identity(dim, dim));
    }
    const double r = operator_norm(prod, tol);
    if (r > bound) {
      std::ostringstream msg;
      msg << "eigenphases: characteristic residual " << r << " too large";
      throw NumericError(msg.str());
    }
  } else {
    for (double p : phases) {
      const ComplexMatrix shifted =
          m - std::polar(1.0, p) * ComplexMatrix::Identity(dim, dim);
      Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
      const double smin = svd.singularValues().minCoeff();
      if (smin > bound) {
        std::ostringstream msg;
        msg << "eigenphases: phase " << p << " is not in the spectrum (residual "
            << smin << ")";
        throw NumericError(msg.str());
      }
    }
  }
  return phases;
}

PhaseAlignment phase_align_to_identity(const UnitaryMatrix& u,
                                       const Tolerances& tol) {
  const std::vector<double> phases = eigenphases(u, tol);
  const std::size_t m = phases.size();

  // The complement of the largest gap between consecutive phases is the
  // smallest arc containing the spectrum.
  std::size_t gap_at = m - 1;
  double gap = phases.front() + 2.0 * kPi - phases.back();
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double g = phases[j + 1] - phases[j];
    if (g > gap + 1e-12) {
      gap = g;
      gap_at = j;
    }
  }
  const double start = phases[(gap_at + 1) % m];
  const double width = 2.0 * kPi - gap;
  const double mid = start + 0.5 * width;

  PhaseAlignment out;
  out.psi = wrap_phase(-mid);
  if (out.psi < -kPi + kBranchSnap) out.psi = kPi;
  double delta = 0;
  for (double p : phases) {
    delta = std::max(delta, std::abs(std::polar(1.0, p + out.psi) - 1.0));
  }
  out.delta = delta;
  return out;
}

std::optional<double> is_scalar_multiple_of_identity(const ComplexMatrix& u,
                                                     double tol) {
  if (u.rows() == 0 || u.rows() != u.cols()) return std::nullopt;
  const double phi = std::arg(u(0, 0));
  const ComplexMatrix r =
      u - std::polar(1.0, phi) * ComplexMatrix::Identity(u.rows(), u.cols());
  if (operator_norm(r) <= tol) return phi;
  return std::nullopt;
}

UnitaryMatrix rotate_to_contain_one(const UnitaryMatrix& u, const Tolerances& tol) {
  const std::vector<double> phases = eigenphases(u, tol);
  double best = phases.front();
  for (double p : phases) {
    const double a = std::abs(p), b = std::abs(best);
    if (a < b - 1e-15 || (std::abs(a - b) <= 1e-15 && p > best)) best = p;
  }
  return u.scaled(std::polar(1.0, -best));
}

ComplexMatrix embed_level(const ComplexMatrix& x, int n, int from, int to) {
  if (to < from) throw DomainError("embed_level: target level below source level");
  if (to == from) return x;
  const Eigen::Index r = ipow(n, to - from);
  return Eigen::kroneckerProduct(x, ComplexMatrix::Identity(r, r)).eval();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace cuntz
