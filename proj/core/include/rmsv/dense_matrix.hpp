// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rmsv {

using Vector = std::vector<double>;

/// Real dense matrix, row-major, with strictly positive dimensions and
/// finite entries at construction time.
class DenseMatrix {
 public:
  /// Zero matrix.
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> diag);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  /// Builds a matrix whose j-th column is columns[j].
  static DenseMatrix from_columns(const std::vector<Vector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  std::span<const double> entries() const noexcept { return data_; }
  std::span<const double> row(std::size_t i) const;
  Vector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> values);

  /// Columns [first, first + count).
  DenseMatrix column_block(std::size_t first, std::size_t count) const;
  /// All columns except column `skip`; requires cols() >= 2.
  DenseMatrix without_column(std::size_t skip) const;
  DenseMatrix transposed() const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, std::span<const double> x);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

/// aᵀ·x without forming the transpose.
Vector transpose_times(const DenseMatrix& a, std::span<const double> x);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
Vector subtract(std::span<const double> x, std::span<const double> y);

double max_abs(const DenseMatrix& a);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
/// Square root of the sum of squared entries.
double frobenius_norm(const DenseMatrix& a);

}  // namespace rmsv
