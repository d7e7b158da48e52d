// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "../oracles.hpp"
#include "rmsv/biortho.hpp"
#include "rmsv/errors.hpp"
#include "rmsv/linalg.hpp"

namespace rmsv {
namespace {

DenseMatrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  oracle::Gen g(seed);
  return householder_qr(g.matrix(n, n)).q;
}

Vector unit(oracle::Gen& g, std::size_t l) {
  Vector y = g.vec(l);
  const double nrm = norm2(y);
  for (double& v : y) v /= nrm;
  return y;
}

// --- dual systems ------------------------------------------------------------

TEST(DualSystem, IdentityIsSelfDual) {
  const BiorthoSystem s = dual_system(DenseMatrix::identity(4));
  EXPECT_EQ(s.duals, DenseMatrix::identity(4));
}

TEST(DualSystem, DiagonalScaling) {
  const BiorthoSystem s = dual_system(DenseMatrix::diagonal(Vector{2, 4}));
  EXPECT_DOUBLE_EQ(s.duals(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(s.duals(1, 1), 0.25);
  EXPECT_EQ(s.duals(0, 1), 0.0);
}

TEST(DualSystem, RandomMatchesInverseTransposeOracle) {
  oracle::Gen g(4);
  const DenseMatrix d = g.matrix(4, 4);
  const BiorthoSystem s = dual_system(d);
  EXPECT_LE(gram_deviation(s), 1e-10);
  const oracle::Mat inv = oracle::inverse(oracle::to_mat(d));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(s.duals(i, k), inv[k][i], 1e-10 * (1 + std::abs(inv[k][i])));
}

TEST(DualSystem, DualityIsAnInvolution) {
  oracle::for_all(20, 31, [](oracle::Gen& g, int) {
    const std::size_t n = g.size(1, 9);
    const DenseMatrix d = g.matrix(n, n);
    const BiorthoSystem once = dual_system(d);
    const BiorthoSystem twice = dual_system(once.duals);
    EXPECT_LE(max_abs_diff(twice.duals, d), 1e-8 * std::max(1.0, max_abs(d)));
  });
}

TEST(DualSystem, RejectsSingular) {
  EXPECT_THROW((void)dual_system(DenseMatrix::from_rows({{1, 1}, {1, 1}})), IllConditionedError);
  EXPECT_THROW((void)dual_system(DenseMatrix(2, 3)), DimensionError);
}

TEST(DualNormIdentity, OrthogonalSystem) {
  const BiorthoSystem s = dual_system(random_orthogonal(5, 2));
  for (std::size_t k = 0; k < 5; ++k) {
    const DualNormCheck c = dual_norm_identity(s, k);
    EXPECT_NEAR(c.lhs, 1.0, 1e-10);
    EXPECT_NEAR(c.rhs, 1.0, 1e-10);
    EXPECT_LE(c.residual, 1e-10);
  }
}

TEST(DualNormIdentity, Diagonal) {
  const DualNormCheck c = dual_norm_identity(dual_system(DenseMatrix::diagonal(Vector{2, 4})), 0);
  EXPECT_DOUBLE_EQ(c.lhs, 0.5);
  EXPECT_DOUBLE_EQ(1.0 / c.rhs, 2.0);
  EXPECT_LE(c.residual, 1e-12);
}

TEST(DualNormIdentity, RandomSixBySix) {
  oracle::Gen g(6);
  const BiorthoSystem s = dual_system(g.matrix(6, 6));
  for (std::size_t k = 0; k < 6; ++k) EXPECT_LE(dual_norm_identity(s, k).residual, 1e-8);
  EXPECT_THROW((void)dual_norm_identity(s, 6), std::out_of_range);
}

TEST(DualNormIdentity, OneDimensional) {
  const DualNormCheck c = dual_norm_identity(dual_system(DenseMatrix::from_rows({{-4}})), 0);
  EXPECT_DOUBLE_EQ(c.lhs, 0.25);
  EXPECT_DOUBLE_EQ(c.rhs, 0.25);
}

// --- reduced systems -------------------------------------------------------------

TEST(ReducedSystem, OrthogonalMatrixKeepsColumns) {
  const DenseMatrix q = random_orthogonal(6, 9);
  const ReducedSystem rs = reduced_system(q, 1);
  EXPECT_LE(max_abs_diff(rs.y_stars, q.column_block(1, 5)), 1e-12);
  const DenseMatrix bbt = rs.b_matrix * rs.b_matrix.transposed();
  EXPECT_LE(max_abs_diff(bbt, DenseMatrix::identity(5)), 1e-12);
}

TEST(ReducedSystem, RandomEightSplitThree) {
  oracle::Gen g(83);
  const DenseMatrix a = g.matrix(8, 8);
  const ReducedSystem rs = reduced_system(a, 3);
  EXPECT_EQ(rs.y_stars.rows(), 8u);
  EXPECT_EQ(rs.y_stars.cols(), 5u);
  EXPECT_EQ(rs.b_matrix.rows(), 5u);
  // Gram of trailing columns against Y*, evaluated directly
  for (std::size_t j = 3; j < 8; ++j)
    for (std::size_t k = 3; k < 8; ++k)
      EXPECT_NEAR(dot(a.column(j), rs.y_stars.column(k - 3)), j == k ? 1.0 : 0.0, 1e-8);
  const ReducedResiduals r = reduced_residuals(rs);
  EXPECT_LE(r.membership, 1e-8);
  EXPECT_EQ(r.b_rows, 0.0);
  EXPECT_GT(r.y_star_min_sv, 0.0);
}

TEST(ReducedSystem, SmallestNondegenerateCase) {
  oracle::Gen g(2);
  const DenseMatrix a = g.matrix(2, 2);
  const ReducedSystem rs = reduced_system(a, 1);
  EXPECT_NEAR(dot(a.column(1), rs.y_stars.column(0)), 1.0, 1e-8);
}

TEST(ReducedSystem, RejectsBoundarySplits) {
  const DenseMatrix a = DenseMatrix::identity(4);
  EXPECT_THROW((void)reduced_system(a, 0), std::invalid_argument);
  EXPECT_THROW((void)reduced_system(a, 4), std::invalid_argument);
  EXPECT_THROW((void)reduced_system(DenseMatrix(4, 3), 1), DimensionError);
  EXPECT_THROW((void)reduced_system(DenseMatrix::from_rows({{1, 1}, {1, 1}}), 1), IllConditionedError);
}

TEST(ReducedSystem, CompletenessOverRandomSplits) {
  oracle::for_all(40, 123, [](oracle::Gen& g, int) {
    const std::size_t n = g.size(2, 12);
    const std::size_t l = g.size(1, n - 1);
    const ReducedSystem rs = reduced_system(g.matrix(n, n), l);
    EXPECT_EQ(rs.y_stars.cols(), n - l);
    const ReducedResiduals r = reduced_residuals(rs);
    EXPECT_GT(r.y_star_min_sv, 0.0);
    EXPECT_LE(r.biorthogonality, 1e-8);
    EXPECT_LE(r.membership, 1e-8);
  });
}

// --- identities --------------------------------------------------------------------

TEST(ReducedIdentities, OrthogonalChainIsOne) {
  const DenseMatrix q = random_orthogonal(7, 5);
  oracle::Gen g(1);
  const ReducedIdentities ids = verify_reduced_identities(q, 3, unit(g, 3));
  EXPECT_NEAR(ids.chain_lhs, 1.0, 1e-12);
  EXPECT_NEAR(ids.chain_rhs, 1.0, 1e-12);
}

TEST(ReducedIdentities, RandomTenSplitTwo) {
  oracle::Gen g(10);
  const DenseMatrix a = g.matrix(10, 10);
  const ReducedIdentities ids = verify_reduced_identities(a, 2, unit(g, 2));
  EXPECT_LE(std::abs(ids.chain_lhs - ids.chain_rhs), 1e-8 * ids.chain_rhs);
  EXPECT_LE(std::abs(ids.hs_lhs - ids.hs_rhs), 1e-8 * ids.hs_rhs);
  // s_min of the trailing block from the independent eigen oracle
  const double smin = oracle::singular_values(a.column_block(2, 8)).back();
  EXPECT_LE(std::abs(ids.op_lhs * smin - 1.0), 1e-8);
}

TEST(ReducedIdentities, ScaledIdentity) {
  const ReducedIdentities ids = verify_reduced_identities(2.0 * DenseMatrix::identity(4), 1, Vector{1.0});
  EXPECT_DOUBLE_EQ(ids.op_lhs, 0.5);
  EXPECT_DOUBLE_EQ(ids.op_rhs, 0.5);
}

TEST(ReducedIdentities, RejectsBadInputs) {
  const DenseMatrix a = DenseMatrix::identity(4);
  EXPECT_THROW((void)verify_reduced_identities(a, 2, Vector{1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW((void)verify_reduced_identities(a, 2, Vector{1.0}), DimensionError);
  // repeated trailing columns make H_{l,k} degenerate
  DenseMatrix rep = DenseMatrix::from_rows({{1, 0, 1, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1e-14}});
  EXPECT_THROW((void)verify_reduced_identities(rep, 1, Vector{1.0}), std::runtime_error);
}

TEST(ReducedIdentities, HoldAcrossSizesAndSplits) {
  for (std::size_t n : {8u, 16u, 32u}) {
    oracle::for_all(10, n, [n](oracle::Gen& g, int) {
      const DenseMatrix a = g.matrix(n, n);
      for (std::size_t l : {std::size_t{1}, n / 4, n / 2, n - 1}) {
        EXPECT_LE(verify_reduced_identities(a, l, unit(g, l)).max_residual(), 1e-8) << "n=" << n << " l=" << l;
      }
    });
  }
}

TEST(ReducedIdentities, CourantFischerOnInverse) {
  oracle::for_all(30, 404, [](oracle::Gen& g, int) {
    const std::size_t n = g.size(3, 12);
    const std::size_t l = g.size(1, n - 1);
    const DenseMatrix a = g.matrix(n, n);
    const Subspace h_l = orthonormal_basis(a.column_block(l, n - l));
    const Projector perp = projector(h_l, ProjectorSide::complement);
    const Subspace e2 = orthonormal_basis(perp.matrix * a.column_block(0, l));
    const DenseMatrix a_inv = solve(a, DenseMatrix::identity(n));
    const std::vector<double> s = oracle::singular_values(a);
    EXPECT_LE(restricted_min_sv(a_inv, e2), (1.0 / s[n - l]) * (1 + 1e-8));
  });
}

// --- locality ---------------------------------------------------------------------

EnsembleSpec square(std::size_t n) {
  EnsembleSpec s;
  s.rows = s.cols = n;
  return s;
}

TEST(ColumnLocality, TrailingDualsIgnoreLeadingColumns) {
  EXPECT_LE(column_locality_check(square(8), 2, SeedPath{5, 0, 0, 0}).max_deviation, 1e-8);
  EXPECT_LE(column_locality_check(square(8), 7, SeedPath{5, 1, 0, 0}).max_deviation, 1e-8);
}

TEST(ColumnLocality, IdenticalRedrawIsExact) {
  const SeedPath s{5, 0, 0, 0};
  EXPECT_EQ(column_locality_check(square(8), 2, s, s).max_deviation, 0.0);
}

TEST(ColumnLocality, RademacherResamplesSingularDraws) {
  EnsembleSpec s = square(12);
  s.dist = EntryDistribution::rademacher();
  int resampled = 0;
  for (std::uint64_t t = 0; t < 40; ++t) {
    const LocalityCheck c = column_locality_check(s, 1, SeedPath{1, t, 0, 0});
    EXPECT_LE(c.max_deviation, 1e-8);
    resampled += c.resamples;
  }
  EXPECT_GT(resampled, 0);  // small sign matrices are singular with non-negligible probability
  EXPECT_THROW((void)column_locality_check(square(4), 4, SeedPath{}), std::invalid_argument);
}

}  // namespace
}  // namespace rmsv
