// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsv/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmsv/errors.hpp"

namespace rmsv {

namespace {

void require_positive(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("DenseMatrix: dimensions must be positive, got " + std::to_string(rows) +
                         "x" + std::to_string(cols));
  }
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  require_positive(rows, cols);
  data_.assign(rows * cols, 0.0);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require_positive(rows, cols);
  if (data_.size() != rows * cols) {
    throw DimensionError("DenseMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(data_.size()));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw std::invalid_argument("DenseMatrix: non-finite entry");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("DenseMatrix::from_rows: ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return DenseMatrix(r, c, std::move(entries));
}

DenseMatrix DenseMatrix::from_columns(const std::vector<Vector>& columns) {
  if (columns.empty()) throw DimensionError("DenseMatrix::from_columns: no columns");
  DenseMatrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

std::span<const double> DenseMatrix::row(std::size_t i) const {
  return std::span<const double>(data_).subspan(i * cols_, cols_);
}

Vector DenseMatrix::column(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void DenseMatrix::set_column(std::size_t j, std::span<const double> values) {
  if (values.size() != rows_ || j >= cols_) {
    throw DimensionError("DenseMatrix::set_column: bad column index or length");
  }
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

DenseMatrix DenseMatrix::column_block(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > cols_) {
    throw DimensionError("DenseMatrix::column_block: range [" + std::to_string(first) + ", " +
                         std::to_string(first + count) + ") outside " + std::to_string(cols_) +
                         " columns");
  }
  DenseMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_ + first), count,
                out.data_.begin() + static_cast<std::ptrdiff_t>(i * count));
  }
  return out;
}

DenseMatrix DenseMatrix::without_column(std::size_t skip) const {
  if (cols_ < 2 || skip >= cols_) throw DimensionError("DenseMatrix::without_column: bad index");
  DenseMatrix out(rows_, cols_ - 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0, k = 0; j < cols_; ++j) {
      if (j != skip) out(i, k++) = (*this)(i, j);
    }
  }
  return out;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector product: length mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "matrix sum");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  }
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "matrix difference");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  }
  return c;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  }
  return c;
}

Vector transpose_times(const DenseMatrix& a, std::span<const double> x) {
  if (a.rows() != x.size()) throw DimensionError("transpose_times: length mismatch");
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double xi = x[i];
    const auto row = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += row[j] * xi;
  }
  return y;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) {
  // scaled accumulation avoids overflow for huge entries
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : x) {
    if (v == 0.0) continue;
    const double av = std::abs(v);
    if (scale < av) {
      ssq = 1.0 + ssq * (scale / av) * (scale / av);
      scale = av;
    } else {
      ssq += (av / scale) * (av / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

Vector subtract(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("subtract: length mismatch");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

double max_abs(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

double frobenius_norm(const DenseMatrix& a) { return norm2(a.entries()); }

}  // namespace rmsv
