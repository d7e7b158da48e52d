// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsv/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rmsv/errors.hpp"

namespace rmsv {

Subspace::Subspace(DenseMatrix basis) : basis_(std::move(basis)) {
  if (basis_.cols() > basis_.rows()) {
    throw DimensionError("Subspace: dimension " + std::to_string(basis_.cols()) +
                         " exceeds ambient dimension " + std::to_string(basis_.rows()));
  }
  const DenseMatrix gram = basis_.transposed() * basis_;
  const double dev = max_abs_diff(gram, DenseMatrix::identity(basis_.cols()));
  if (dev > 1e-10) {
    std::ostringstream msg;
    msg << "Subspace: basis columns are not orthonormal (max |QᵀQ - I| = " << dev << ")";
    throw std::invalid_argument(msg.str());
  }
}

Vector Subspace::project(std::span<const double> x) const {
  return basis_ * std::span<const double>(transpose_times(basis_, x));
}

Projector projector(const Subspace& s, ProjectorSide side) {
  const DenseMatrix& q = s.basis();
  DenseMatrix p = q * q.transposed();
  if (side == ProjectorSide::onto) return Projector{std::move(p), s.dim()};
  return Projector{DenseMatrix::identity(s.ambient_dim()) - p, s.ambient_dim() - s.dim()};
}

double dist_to_subspace(std::span<const double> z, const Subspace& s,
                        std::span<const double> shift) {
  if (z.size() != s.ambient_dim() || shift.size() != s.ambient_dim()) {
    throw DimensionError("dist_to_subspace: vectors must have length " +
                         std::to_string(s.ambient_dim()));
  }
  Vector w = subtract(z, shift);
  const Vector pw = s.project(w);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= pw[i];
  return norm2(w);
}

double dist_to_subspace(std::span<const double> z, const Subspace& s) {
  const Vector zero(z.size(), 0.0);
  return dist_to_subspace(z, s, zero);
}

double condition_number(const DenseMatrix& a) {
  const Vector sv = singular_values(a);
  if (sv.back() == 0.0) return std::numeric_limits<double>::infinity();
  return sv.front() / sv.back();
}

namespace {

struct LuFactors {
  DenseMatrix lu;
  std::vector<std::size_t> perm;
};

LuFactors lu_factor(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  LuFactors f{a, std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  DenseMatrix& lu = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    const double d = lu(k, k);
    if (d == 0.0) continue;  // guarded by the condition check upstream
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu(i, k) / d;
      lu(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
    }
  }
  return f;
}

Vector lu_solve(const LuFactors& f, std::span<const double> b) {
  const std::size_t n = f.lu.rows();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

// LU solve plus up to two rounds of iterative refinement when the residual
// exceeds the postcondition.
Vector refined_solve(const DenseMatrix& a, const LuFactors& f, std::span<const double> b) {
  Vector x = lu_solve(f, b);
  const double target = 1e-10 * std::max(1.0, norm2(b));
  for (int round = 0; round < 2; ++round) {
    const Vector ax = a * std::span<const double>(x);
    const Vector r = subtract(b, ax);
    if (norm2(r) <= target) break;
    const Vector dx = lu_solve(f, r);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  }
  return x;
}

void require_solvable(const DenseMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("solve: matrix must be square, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  const double cond = condition_number(a);
  if (!(cond <= kConditionLimit)) {
    std::ostringstream msg;
    msg << "solve: matrix is singular or ill-conditioned (condition estimate " << cond
        << " > " << kConditionLimit << ")";
    throw IllConditionedError(msg.str(), cond);
  }
}

}  // namespace

Vector solve(const DenseMatrix& a, std::span<const double> b) {
  require_solvable(a);
  if (b.size() != a.rows()) throw DimensionError("solve: right-hand side length mismatch");
  return refined_solve(a, lu_factor(a), b);
}

DenseMatrix solve(const DenseMatrix& a, const DenseMatrix& b) {
  require_solvable(a);
  if (b.rows() != a.rows()) throw DimensionError("solve: right-hand side row count mismatch");
  const LuFactors f = lu_factor(a);
  DenseMatrix x(a.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const Vector bj = b.column(j);
    x.set_column(j, refined_solve(a, f, bj));
  }
  return x;
}

MatrixNorms matrix_norms(const DenseMatrix& a) {
  const double op = singular_values(a).front();
  const double hs = frobenius_norm(a);
  const double stable = op == 0.0 ? 0.0 : (hs * hs) / (op * op);
  return MatrixNorms{op, hs, stable};
}

double restricted_min_sv(const DenseMatrix& a, const Subspace& s) {
  if (a.rows() != a.cols() || a.cols() != s.ambient_dim()) {
    throw DimensionError("restricted_min_sv: need square matrix of order " +
                         std::to_string(s.ambient_dim()));
  }
  return singular_values(a * s.basis()).back();
}

}  // namespace rmsv
