// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>

#include "rmsv/dense_matrix.hpp"

namespace rmsv {

// ---------------------------------------------------------------------------
// Singular value decomposition

enum class SvdMethod {
  automatic,    ///< Jacobi when min(rows, cols) <= 64, Golub-Kahan otherwise
  jacobi,       ///< cyclic one-sided (Hestenes) Jacobi
  golub_kahan,  ///< Householder bidiagonalization + implicit-shift QR
};

/// Thin SVD a = U·diag(s)·Vᵀ with r = min(rows, cols).
struct SvdResult {
  DenseMatrix left_factor;   ///< rows × r, orthonormal columns
  Vector singular_values;    ///< length r, non-increasing, non-negative
  DenseMatrix right_factor;  ///< cols × r, orthonormal columns
};

/// Matrices up to this order use the Jacobi method under SvdMethod::automatic.
inline constexpr std::size_t kJacobiCrossover = 64;

/// Full thin SVD. Throws NumericalError naming the shape and the residual
/// off-diagonal mass when the iteration cap is hit.
SvdResult svd(const DenseMatrix& a, SvdMethod method = SvdMethod::automatic);

/// Singular values only, non-increasing. Skips accumulation of the factors.
Vector singular_values(const DenseMatrix& a, SvdMethod method = SvdMethod::automatic);

// ---------------------------------------------------------------------------
// Householder QR, subspaces and projectors

struct QrResult {
  DenseMatrix q;  ///< rows × cols, orthonormal columns
  DenseMatrix r;  ///< cols × cols, upper triangular with non-negative diagonal
};

/// Thin Householder QR of a matrix with rows >= cols. No rank check.
QrResult householder_qr(const DenseMatrix& a);

/// Relative rank tolerance used by orthonormal_basis.
inline constexpr double kRankTolerance = 1e-10;

/// Linear subspace of R^ambient_dim represented by an orthonormal basis.
class Subspace {
 public:
  /// Takes ownership of `basis`; its columns must be orthonormal within 1e-10.
  explicit Subspace(DenseMatrix basis);

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const DenseMatrix& basis() const noexcept { return basis_; }

  /// Orthogonal projection of x onto the subspace, Q·Qᵀ·x.
  Vector project(std::span<const double> x) const;

 private:
  DenseMatrix basis_;
};

/// Orthonormal basis of the column span. Throws RankDeficientError carrying the
/// numerical rank when some |R_jj| falls below 1e-10 · max column norm.
Subspace orthonormal_basis(const DenseMatrix& columns);

enum class ProjectorSide { onto, complement };

struct Projector {
  DenseMatrix matrix;
  std::size_t rank;
};

/// P = Q·Qᵀ, or I − Q·Qᵀ for the orthogonal complement.
Projector projector(const Subspace& s, ProjectorSide side = ProjectorSide::onto);

/// Euclidean distance from z to the affine subspace s + shift.
double dist_to_subspace(std::span<const double> z, const Subspace& s,
                        std::span<const double> shift);
double dist_to_subspace(std::span<const double> z, const Subspace& s);

// ---------------------------------------------------------------------------
// Linear systems and norms

/// Systems whose condition number exceeds this are rejected by solve().
inline constexpr double kConditionLimit = 1e12;

/// Ratio of extreme singular values; +inf for singular matrices.
double condition_number(const DenseMatrix& a);

/// Solves a·x = b by LU with partial pivoting. Throws IllConditionedError
/// with the condition number when it exceeds kConditionLimit.
Vector solve(const DenseMatrix& a, std::span<const double> b);
/// Column-by-column solve of a·X = B.
DenseMatrix solve(const DenseMatrix& a, const DenseMatrix& b);

struct MatrixNorms {
  double operator_norm;
  double hilbert_schmidt;
  double stable_rank;
};

MatrixNorms matrix_norms(const DenseMatrix& a);

/// min over unit y in s of ‖a·y‖₂, i.e. the smallest singular value of a·basis.
double restricted_min_sv(const DenseMatrix& a, const Subspace& s);

}  // namespace rmsv
