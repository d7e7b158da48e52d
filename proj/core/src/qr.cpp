// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rmsv/errors.hpp"
#include "rmsv/linalg.hpp"

namespace rmsv {

namespace {

double column_norm(const DenseMatrix& a, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

QrResult householder_qr(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) {
    throw DimensionError("householder_qr expects rows >= cols, got " + std::to_string(m) + "x" +
                         std::to_string(n));
  }

  // Column-major working copy; reflector k is stored in work[k][k..m).
  std::vector<std::vector<double>> work(n, std::vector<double>(m));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) work[j][i] = a(i, j);
  }
  std::vector<double> beta(n, 0.0);
  DenseMatrix r(n, n);

  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double>& x = work[k];
    double sigma = 0.0;
    for (std::size_t i = k; i < m; ++i) sigma += x[i] * x[i];
    const double alpha = std::sqrt(sigma);
    if (alpha == 0.0) {
      for (std::size_t j = k + 1; j < n; ++j) r(k, j) = work[j][k];
      continue;
    }
    // v = x - (-sign(x_k)·alpha)·e_k keeps cancellation away
    const double diag = x[k] >= 0.0 ? -alpha : alpha;
    x[k] -= diag;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) vnorm2 += x[i] * x[i];
    beta[k] = 2.0 / vnorm2;
    r(k, k) = diag;
    for (std::size_t j = k + 1; j < n; ++j) {
      std::vector<double>& y = work[j];
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += x[i] * y[i];
      s *= beta[k];
      for (std::size_t i = k; i < m; ++i) y[i] -= s * x[i];
      r(k, j) = y[k];
    }
  }

  // Q = H_0 H_1 ... H_{n-1} applied to the first n columns of the identity.
  DenseMatrix q(m, n);
  std::vector<double> col(m);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    for (std::size_t k = std::min(j + 1, n); k-- > 0;) {
      if (beta[k] == 0.0) continue;
      const std::vector<double>& v = work[k];
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i] * col[i];
      s *= beta[k];
      for (std::size_t i = k; i < m; ++i) col[i] -= s * v[i];
    }
    q.set_column(j, col);
  }

  // Normalize to a non-negative diagonal of R.
  for (std::size_t k = 0; k < n; ++k) {
    if (r(k, k) < 0.0) {
      for (std::size_t j = k; j < n; ++j) r(k, j) = -r(k, j);
      for (std::size_t i = 0; i < m; ++i) q(i, k) = -q(i, k);
    }
  }
  return QrResult{std::move(q), std::move(r)};
}

Subspace orthonormal_basis(const DenseMatrix& columns) {
  double scale = 0.0;
  for (std::size_t j = 0; j < columns.cols(); ++j) scale = std::max(scale, column_norm(columns, j));
  if (columns.rows() < columns.cols()) {
    throw RankDeficientError("orthonormal_basis: " + std::to_string(columns.cols()) +
                                 " columns in dimension " + std::to_string(columns.rows()),
                             columns.rows());
  }
  QrResult qr = householder_qr(columns);
  const double tol = kRankTolerance * scale;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < columns.cols(); ++k) {
    if (qr.r(k, k) > tol) ++rank;
  }
  if (scale == 0.0) rank = 0;
  if (rank < columns.cols()) {
    throw RankDeficientError("orthonormal_basis: numerical rank " + std::to_string(rank) + " < " +
                                 std::to_string(columns.cols()) + " columns",
                             rank);
  }
  return Subspace(std::move(qr.q));
}

}  // namespace rmsv
