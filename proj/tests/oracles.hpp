// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0
//
// Reference computations for tests. They share no code with the library:
// plain loops over std::vector<std::vector<double>>, chosen for being easy
// to check by eye rather than fast or stable.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rmsv/dense_matrix.hpp"

namespace oracle {

using Mat = std::vector<std::vector<double>>;

inline Mat to_mat(const rmsv::DenseMatrix& a) {
  Mat m(a.rows(), std::vector<double>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  return m;
}

inline Mat gram(const Mat& a) {
  const std::size_t r = a.size(), c = a[0].size();
  Mat g(c, std::vector<double>(c, 0.0));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t k = 0; k < r; ++k) g[i][j] += a[k][i] * a[k][j];
  return g;
}

/// Eigenvalues of a symmetric matrix by cyclic two-sided Jacobi rotations,
/// sorted non-increasing.
inline std::vector<double> symmetric_eigenvalues(Mat a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

/// Singular values as square roots of the eigenvalues of AᵀA (or AAᵀ when
/// wide), clamped at zero.
inline std::vector<double> singular_values(const rmsv::DenseMatrix& a) {
  Mat m = to_mat(a);
  if (a.rows() < a.cols()) m = to_mat(a.transposed());
  std::vector<double> ev = symmetric_eigenvalues(gram(m));
  for (double& e : ev) e = std::sqrt(std::max(e, 0.0));
  return ev;
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
inline Mat inverse(Mat a) {
  const std::size_t n = a.size();
  Mat inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) throw std::runtime_error("oracle::inverse: singular");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const double d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// Residual of least squares min_x ‖cols·x - z‖ via the normal equations.
inline double ls_distance(const rmsv::DenseMatrix& cols, const std::vector<double>& z) {
  const Mat a = to_mat(cols);
  const Mat g = gram(a);
  const std::size_t k = cols.cols();
  std::vector<double> rhs(k, 0.0);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < a.size(); ++i) rhs[j] += a[i][j] * z[i];
  const Mat gi = inverse(g);
  std::vector<double> x(k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) x[i] += gi[i][j] * rhs[j];
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double r = z[i];
    for (std::size_t j = 0; j < k; ++j) r -= a[i][j] * x[j];
    s += r * r;
  }
  return std::sqrt(s);
}

/// Modified Gram-Schmidt orthonormalization of the columns.
inline Mat orthonormalize(const rmsv::DenseMatrix& cols) {
  const std::size_t n = cols.rows(), k = cols.cols();
  Mat q(k, std::vector<double>(n));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) q[j][i] = cols(i, j);
    for (std::size_t p = 0; p < j; ++p) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += q[p][i] * q[j][i];
      for (std::size_t i = 0; i < n; ++i) q[j][i] -= d * q[p][i];
    }
    double nrm = 0.0;
    for (double v : q[j]) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (double& v : q[j]) v /= nrm;
  }
  return q;  // q[j] is the j-th basis vector
}

/// Small deterministic generator for hand-rolled property tests
/// (xorshift64*, unrelated to the library's seeding).
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed * 2685821657736338717ull + 1) {}
  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 2685821657736338717ull;
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double normal() {
    const double u = 1.0 - uniform(), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
  }
  std::size_t size(std::size_t lo, std::size_t hi) { return lo + next() % (hi - lo + 1); }
  rmsv::DenseMatrix matrix(std::size_t r, std::size_t c) {
    rmsv::DenseMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = normal();
    return m;
  }
  std::vector<double> vec(std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = normal();
    return v;
  }

 private:
  std::uint64_t state_;
};

/// Runs `body` on `cases` independently seeded generators.
inline void for_all(int cases, std::uint64_t seed, const std::function<void(Gen&, int)>& body) {
  for (int c = 0; c < cases; ++c) {
    Gen g(seed + static_cast<std::uint64_t>(c) * 7919);
    body(g, c);
  }
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
