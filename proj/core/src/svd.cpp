// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "rmsv/errors.hpp"
#include "rmsv/linalg.hpp"

namespace rmsv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Column-major scratch storage; columns are contiguous.
struct ColMajor {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> d;

  ColMajor() = default;
  ColMajor(std::size_t r, std::size_t c) : rows(r), cols(c), d(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return d[j * rows + i]; }
  double operator()(std::size_t i, std::size_t j) const { return d[j * rows + i]; }
  double* col(std::size_t j) { return d.data() + j * rows; }
  const double* col(std::size_t j) const { return d.data() + j * rows; }

  static ColMajor from(const DenseMatrix& a, bool transpose) {
    ColMajor m(transpose ? a.cols() : a.rows(), transpose ? a.rows() : a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (transpose) {
          m(j, i) = a(i, j);
        } else {
          m(i, j) = a(i, j);
        }
      }
    }
    return m;
  }

  static ColMajor identity(std::size_t n) {
    ColMajor m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  DenseMatrix to_dense() const {
    DenseMatrix out(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t i = 0; i < rows; ++i) out(i, j) = (*this)(i, j);
    }
    return out;
  }
};

/// Result of a decomposition of a tall matrix (rows >= cols).
struct TallSvd {
  std::vector<double> s;
  ColMajor u;  // rows × cols
  ColMajor v;  // cols × cols
};

[[noreturn]] void throw_no_convergence(const char* method, std::size_t rows, std::size_t cols,
                                       std::size_t iterations, double residual) {
  std::ostringstream msg;
  msg << "svd(" << method << "): no convergence for " << rows << "x" << cols << " matrix after "
      << iterations << " iterations (residual " << residual << ")";
  throw NumericalError(msg.str());
}

// Replaces column k of u by a unit vector orthogonal to the columns in `filled`.
void complete_column(ColMajor& u, std::size_t k, const std::vector<std::size_t>& filled) {
  const std::size_t m = u.rows;
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<double> w(m, 0.0);
    w[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t f : filled) {
        const double* q = u.col(f);
        double c = 0.0;
        for (std::size_t i = 0; i < m; ++i) c += q[i] * w[i];
        for (std::size_t i = 0; i < m; ++i) w[i] -= c * q[i];
      }
    }
    double nrm = 0.0;
    for (double x : w) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm > 0.5) {
      double* dst = u.col(k);
      for (std::size_t i = 0; i < m; ++i) dst[i] = w[i] / nrm;
      return;
    }
  }
}

// One-sided cyclic Jacobi on a tall column-major matrix. Rotations act on
// column pairs until every pair is orthogonal relative to its own norms.
TallSvd jacobi_tall(ColMajor w, bool want_vectors) {
  const std::size_t m = w.rows;
  const std::size_t n = w.cols;
  ColMajor v = want_vectors ? ColMajor::identity(n) : ColMajor();
  const double tol = std::max<double>(static_cast<double>(m), 1.0) * kEps;
  const std::size_t max_sweeps = 100 * std::max<std::size_t>(n, 1);

  std::vector<double> sq(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double* c = w.col(j);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += c[i] * c[i];
    sq[j] = s;
  }

  bool converged = n < 2;
  double worst = 0.0;
  for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double* cp = w.col(p);
        double* cq = w.col(q);
        double alpha = 0.0;
        double beta = 0.0;
        double gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += cp[i] * cp[i];
          beta += cq[i] * cq[i];
          gamma += cp[i] * cq[i];
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        const double off = std::abs(gamma) / std::sqrt(alpha * beta);
        worst = std::max(worst, off);
        if (off <= tol) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double a = cp[i];
          const double b = cq[i];
          cp[i] = c * a - s * b;
          cq[i] = s * a + c * b;
        }
        if (want_vectors) {
          double* vp = v.col(p);
          double* vq = v.col(q);
          for (std::size_t i = 0; i < n; ++i) {
            const double a = vp[i];
            const double b = vq[i];
            vp[i] = c * a - s * b;
            vq[i] = s * a + c * b;
          }
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) throw_no_convergence("jacobi", m, n, max_sweeps, worst);

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double* c = w.col(j);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += c[i] * c[i];
    sv[j] = std::sqrt(s);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sv[a] > sv[b]; });

  TallSvd out;
  out.s.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.s[k] = sv[order[k]];
  if (!want_vectors) return out;

  out.u = ColMajor(m, n);
  out.v = ColMajor(n, n);
  std::vector<std::size_t> filled;
  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    std::copy_n(v.col(src), n, out.v.col(k));
    if (out.s[k] > 0.0) {
      const double* c = w.col(src);
      double* dst = out.u.col(k);
      for (std::size_t i = 0; i < m; ++i) dst[i] = c[i] / out.s[k];
      filled.push_back(k);
    } else {
      missing.push_back(k);
    }
  }
  for (std::size_t k : missing) {
    complete_column(out.u, k, filled);
    filled.push_back(k);
  }
  return out;
}

// Golub-Kahan-Reinsch: Householder bidiagonalization followed by implicit
// zero-shift-aware QR iterations on the bidiagonal (LINPACK dsvdc lineage).
TallSvd golub_kahan_tall(ColMajor a, bool want_vectors) {
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  const bool wantu = want_vectors;
  const bool wantv = want_vectors;
  const std::size_t nu = std::min(m, n);

  std::vector<double> s(std::min(m + 1, n), 0.0);
  std::vector<double> e(n, 0.0);
  std::vector<double> work(m, 0.0);
  ColMajor u = wantu ? ColMajor(m, nu) : ColMajor();
  ColMajor v = wantv ? ColMajor(n, n) : ColMajor();

  const std::size_t nct = std::min(m - 1, n);
  const std::size_t nrt = static_cast<std::size_t>(
      std::max<long>(0, std::min<long>(static_cast<long>(n) - 2, static_cast<long>(m))));

  for (std::size_t k = 0; k < std::max(nct, nrt); ++k) {
    if (k < nct) {
      double* ak = a.col(k);
      s[k] = 0.0;
      for (std::size_t i = k; i < m; ++i) s[k] = std::hypot(s[k], ak[i]);
      if (s[k] != 0.0) {
        if (ak[k] < 0.0) s[k] = -s[k];
        for (std::size_t i = k; i < m; ++i) ak[i] /= s[k];
        ak[k] += 1.0;
      }
      s[k] = -s[k];
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (k < nct && s[k] != 0.0) {
        const double* ak = a.col(k);
        double* aj = a.col(j);
        double t = 0.0;
        for (std::size_t i = k; i < m; ++i) t += ak[i] * aj[i];
        t = -t / ak[k];
        for (std::size_t i = k; i < m; ++i) aj[i] += t * ak[i];
      }
      e[j] = a(k, j);
    }
    if (wantu && k < nct) {
      for (std::size_t i = k; i < m; ++i) u(i, k) = a(i, k);
    }
    if (k < nrt) {
      e[k] = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) e[k] = std::hypot(e[k], e[i]);
      if (e[k] != 0.0) {
        if (e[k + 1] < 0.0) e[k] = -e[k];
        for (std::size_t i = k + 1; i < n; ++i) e[i] /= e[k];
        e[k + 1] += 1.0;
      }
      e[k] = -e[k];
      if (k + 1 < m && e[k] != 0.0) {
        for (std::size_t i = k + 1; i < m; ++i) work[i] = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) {
          const double* aj = a.col(j);
          for (std::size_t i = k + 1; i < m; ++i) work[i] += e[j] * aj[i];
        }
        for (std::size_t j = k + 1; j < n; ++j) {
          const double t = -e[j] / e[k + 1];
          double* aj = a.col(j);
          for (std::size_t i = k + 1; i < m; ++i) aj[i] += t * work[i];
        }
      }
      if (wantv) {
        for (std::size_t i = k + 1; i < n; ++i) v(i, k) = e[i];
      }
    }
  }

  // Final bidiagonal of order p.
  std::size_t p = std::min(n, m + 1);
  if (nct < n) s[nct] = a(nct, nct);
  if (m < p) s[p - 1] = 0.0;
  if (nrt + 1 < p) e[nrt] = a(nrt, p - 1);
  e[p - 1] = 0.0;

  if (wantu) {
    for (std::size_t j = nct; j < nu; ++j) {
      for (std::size_t i = 0; i < m; ++i) u(i, j) = 0.0;
      u(j, j) = 1.0;
    }
    for (std::size_t kk = nct; kk-- > 0;) {
      double* uk = u.col(kk);
      if (s[kk] != 0.0) {
        for (std::size_t j = kk + 1; j < nu; ++j) {
          double* uj = u.col(j);
          double t = 0.0;
          for (std::size_t i = kk; i < m; ++i) t += uk[i] * uj[i];
          t = -t / uk[kk];
          for (std::size_t i = kk; i < m; ++i) uj[i] += t * uk[i];
        }
        for (std::size_t i = kk; i < m; ++i) uk[i] = -uk[i];
        uk[kk] = 1.0 + uk[kk];
        for (std::size_t i = 0; i + 1 < kk; ++i) uk[i] = 0.0;
      } else {
        for (std::size_t i = 0; i < m; ++i) uk[i] = 0.0;
        uk[kk] = 1.0;
      }
    }
  }

  if (wantv) {
    for (std::size_t kk = n; kk-- > 0;) {
      if (kk < nrt && e[kk] != 0.0) {
        const double* vk = v.col(kk);
        for (std::size_t j = kk + 1; j < nu; ++j) {
          double* vj = v.col(j);
          double t = 0.0;
          for (std::size_t i = kk + 1; i < n; ++i) t += vk[i] * vj[i];
          t = -t / vk[kk + 1];
          for (std::size_t i = kk + 1; i < n; ++i) vj[i] += t * vk[i];
        }
      }
      double* vk = v.col(kk);
      for (std::size_t i = 0; i < n; ++i) vk[i] = 0.0;
      vk[kk] = 1.0;
    }
  }

  auto rotate_cols = [](ColMajor& mat, std::size_t c1, std::size_t c2, double cs, double sn) {
    double* x = mat.col(c1);
    double* y = mat.col(c2);
    for (std::size_t i = 0; i < mat.rows; ++i) {
      const double t = cs * x[i] + sn * y[i];
      y[i] = -sn * x[i] + cs * y[i];
      x[i] = t;
    }
  };

  const std::size_t pp = p - 1;
  const double tiny = std::pow(2.0, -966.0);
  const std::size_t max_iterations = 100 * std::max<std::size_t>(n, 1);
  std::size_t total_iterations = 0;

  while (p > 0) {
    // Locate the split point: kase 1 means s[p-1] negligible, 2 means s[k]
    // negligible, 3 a QR step, 4 convergence of s[p-1].
    long k = static_cast<long>(p) - 2;
    for (; k >= 0; --k) {
      if (std::abs(e[k]) <= tiny + kEps * (std::abs(s[k]) + std::abs(s[k + 1]))) {
        e[k] = 0.0;
        break;
      }
    }
    int kase = 0;
    if (k == static_cast<long>(p) - 2) {
      kase = 4;
    } else {
      long ks = static_cast<long>(p) - 1;
      for (; ks > k; --ks) {
        const double t = (ks != static_cast<long>(p) ? std::abs(e[ks]) : 0.0) +
                         (ks != k + 1 ? std::abs(e[ks - 1]) : 0.0);
        if (std::abs(s[ks]) <= tiny + kEps * t) {
          s[ks] = 0.0;
          break;
        }
      }
      if (ks == k) {
        kase = 3;
      } else if (ks == static_cast<long>(p) - 1) {
        kase = 1;
      } else {
        kase = 2;
        k = ks;
      }
    }
    ++k;
    const std::size_t ku = static_cast<std::size_t>(k);

    switch (kase) {
      case 1: {
        double f = e[p - 2];
        e[p - 2] = 0.0;
        for (std::size_t j = p - 1; j-- > ku;) {
          double t = std::hypot(s[j], f);
          const double cs = s[j] / t;
          const double sn = f / t;
          s[j] = t;
          if (j != ku) {
            f = -sn * e[j - 1];
            e[j - 1] = cs * e[j - 1];
          }
          if (wantv) rotate_cols(v, j, p - 1, cs, sn);
        }
        break;
      }
      case 2: {
        double f = e[ku - 1];
        e[ku - 1] = 0.0;
        for (std::size_t j = ku; j < p; ++j) {
          double t = std::hypot(s[j], f);
          const double cs = s[j] / t;
          const double sn = f / t;
          s[j] = t;
          f = -sn * e[j];
          e[j] = cs * e[j];
          if (wantu) rotate_cols(u, j, ku - 1, cs, sn);
        }
        break;
      }
      case 3: {
        if (++total_iterations > max_iterations) {
          double residual = 0.0;
          for (std::size_t j = 0; j + 1 < p; ++j) residual = std::max(residual, std::abs(e[j]));
          throw_no_convergence("golub-kahan", m, n, max_iterations, residual);
        }
        const double scale =
            std::max({std::abs(s[p - 1]), std::abs(s[p - 2]), std::abs(e[p - 2]),
                      std::abs(s[ku]), std::abs(e[ku])});
        const double sp = s[p - 1] / scale;
        const double spm1 = s[p - 2] / scale;
        const double epm1 = e[p - 2] / scale;
        const double sk = s[ku] / scale;
        const double ek = e[ku] / scale;
        const double b = ((spm1 + sp) * (spm1 - sp) + epm1 * epm1) / 2.0;
        const double c = (sp * epm1) * (sp * epm1);
        double shift = 0.0;
        if (b != 0.0 || c != 0.0) {
          shift = std::sqrt(b * b + c);
          if (b < 0.0) shift = -shift;
          shift = c / (b + shift);
        }
        double f = (sk + sp) * (sk - sp) + shift;
        double g = sk * ek;

        for (std::size_t j = ku; j + 1 < p; ++j) {
          double t = std::hypot(f, g);
          double cs = f / t;
          double sn = g / t;
          if (j != ku) e[j - 1] = t;
          f = cs * s[j] + sn * e[j];
          e[j] = cs * e[j] - sn * s[j];
          g = sn * s[j + 1];
          s[j + 1] = cs * s[j + 1];
          if (wantv) rotate_cols(v, j, j + 1, cs, sn);
          t = std::hypot(f, g);
          cs = f / t;
          sn = g / t;
          s[j] = t;
          f = cs * e[j] + sn * s[j + 1];
          s[j + 1] = -sn * e[j] + cs * s[j + 1];
          g = sn * e[j + 1];
          e[j + 1] = cs * e[j + 1];
          if (wantu && j + 1 < m) rotate_cols(u, j, j + 1, cs, sn);
        }
        e[p - 2] = f;
        break;
      }
      case 4: {
        if (s[ku] <= 0.0) {
          s[ku] = (s[ku] < 0.0 ? -s[ku] : 0.0);
          if (wantv) {
            double* vk = v.col(ku);
            for (std::size_t i = 0; i <= pp; ++i) vk[i] = -vk[i];
          }
        }
        std::size_t kk = ku;
        while (kk < pp) {
          if (s[kk] >= s[kk + 1]) break;
          std::swap(s[kk], s[kk + 1]);
          if (wantv && kk + 1 < n) std::swap_ranges(v.col(kk), v.col(kk) + n, v.col(kk + 1));
          if (wantu && kk + 1 < m) std::swap_ranges(u.col(kk), u.col(kk) + m, u.col(kk + 1));
          ++kk;
        }
        --p;
        break;
      }
      default:
        break;
    }
  }

  TallSvd out;
  out.s.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(nu));
  if (want_vectors) {
    out.u = std::move(u);
    out.v = std::move(v);
  }
  return out;
}

TallSvd decompose(const DenseMatrix& a, SvdMethod method, bool want_vectors, bool& transposed) {
  transposed = a.rows() < a.cols();
  ColMajor work = ColMajor::from(a, transposed);
  const std::size_t r = std::min(a.rows(), a.cols());
  if (method == SvdMethod::automatic) {
    method = r <= kJacobiCrossover ? SvdMethod::jacobi : SvdMethod::golub_kahan;
  }
  if (method == SvdMethod::jacobi) return jacobi_tall(std::move(work), want_vectors);
  if (work.rows == 1) {
    // single entry: the bidiagonal pass needs at least two rows
    return jacobi_tall(std::move(work), want_vectors);
  }
  return golub_kahan_tall(std::move(work), want_vectors);
}

}  // namespace

SvdResult svd(const DenseMatrix& a, SvdMethod method) {
  bool transposed = false;
  TallSvd t = decompose(a, method, true, transposed);
  DenseMatrix u = t.u.to_dense();
  DenseMatrix v = t.v.to_dense();
  if (transposed) std::swap(u, v);
  return SvdResult{std::move(u), std::move(t.s), std::move(v)};
}

Vector singular_values(const DenseMatrix& a, SvdMethod method) {
  bool transposed = false;
  return decompose(a, method, false, transposed).s;
}

}  // namespace rmsv
