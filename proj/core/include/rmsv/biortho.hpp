// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>

#include "rmsv/dense_matrix.hpp"
#include "rmsv/ensembles.hpp"
#include "rmsv/seeding.hpp"

namespace rmsv {

/// Columns v_k of an invertible matrix and their duals v_k* = (D^-1)ᵀ e_k,
/// so that <v_j, v_k*> = δ_jk.
struct BiorthoSystem {
  DenseMatrix vectors;
  DenseMatrix duals;
};

/// Duals of the columns of a square invertible d. Propagates the
/// IllConditionedError of solve() for singular input.
BiorthoSystem dual_system(const DenseMatrix& d);

/// max_jk |<v_j, v_k*> - δ_jk|.
double gram_deviation(const BiorthoSystem& sys);

/// ‖v_k*‖ against 1 / dist(v_k, span(v_j : j != k)), both computed
/// independently. residual = |lhs · (1/rhs) - 1|.
struct DualNormCheck {
  double lhs;
  double rhs;
  double residual;
};

DualNormCheck dual_norm_identity(const BiorthoSystem& sys, std::size_t k);

/// Distance from v to span of the columns of `others`; ‖v‖ when there are none.
/// Throws RankDeficientError when the spanning columns are degenerate.
double distance_to_span(std::span<const double> v, const DenseMatrix* others);

/// Split of a square A at column l (0-based count of leading columns):
/// H_l is spanned by the trailing n-l columns, Y_k* = P_l X_k* for the
/// trailing indices, and B stacks the Y_k* as rows.
struct ReducedSystem {
  std::size_t split;        ///< l, 1 <= l <= n-1
  DenseMatrix source;       ///< A, n × n
  DenseMatrix y_stars;      ///< n × (n-l), column k-l is Y_k*
  DenseMatrix b_matrix;     ///< (n-l) × n, row k-l is (Y_k*)ᵀ
};

ReducedSystem reduced_system(const DenseMatrix& a, std::size_t l);

struct ReducedResiduals {
  double biorthogonality;  ///< max_{j,k > l} |<X_j, Y_k*> - δ_jk|
  double membership;       ///< max_k ‖P_l Y_k* - Y_k*‖
  double b_rows;           ///< max |B - y_starsᵀ| (exactly zero by construction)
  double y_star_min_sv;    ///< smallest singular value of y_stars (independence)
};

ReducedResiduals reduced_residuals(const ReducedSystem& rs);

/// Both sides of the three exact identities behind the reduced system:
///  chain:  ‖A^-1 P_l^⊥ A_l y‖² = 1 + ‖B A_l y‖²
///  HS:     ‖B‖_HS² = Σ_{k>l} dist(X_k, H_{l,k})^-2
///  op:     ‖B‖ = 1 / s_min(A_{n-l})
struct ReducedIdentities {
  double chain_lhs;
  double chain_rhs;
  double hs_lhs;
  double hs_rhs;
  double op_lhs;
  double op_rhs;

  double chain_residual() const;  ///< |lhs - rhs| / rhs
  double hs_residual() const;
  double op_residual() const;     ///< |op_lhs / op_rhs - 1|
  double max_residual() const;
};

/// y must be a unit vector in R^l (within 1e-12).
ReducedIdentities verify_reduced_identities(const DenseMatrix& a, std::size_t l,
                                            std::span<const double> y);

/// Maximum number of condition-guard resamples before giving up.
inline constexpr int kMaxResamples = 10;

struct LocalityCheck {
  double max_deviation;  ///< max_k ‖Y_k*(A) - Y_k*(A')‖
  int resamples;
};

/// Draws A under `seed`, replaces its first l columns by a draw under
/// `redraw` to form A', and compares the two families Y_k*. Passing
/// redraw == seed reproduces A exactly.
LocalityCheck column_locality_check(const EnsembleSpec& spec, std::size_t l,
                                    const SeedPath& seed, const SeedPath& redraw);
/// Uses seed.with_stream(seed.stream + 1) for the redraw.
LocalityCheck column_locality_check(const EnsembleSpec& spec, std::size_t l,
                                    const SeedPath& seed);

}  // namespace rmsv
