// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "rmsv/experiments.hpp"

namespace rmsv {
namespace {

DenseMatrix coordinate_projector(std::size_t n, std::size_t d) {
  DenseMatrix p(n, n);
  for (std::size_t i = 0; i < d; ++i) p(i, i) = 1.0;
  return p;
}

TEST(Probe, ModeNamesRoundTrip) {
  for (ProbeMode m : {ProbeMode::sum, ProbeMode::projection, ProbeMode::anisotropic, ProbeMode::vector_norm,
                      ProbeMode::product_norm}) {
    EXPECT_EQ(parse_probe_mode(to_string(m)), m);
  }
  EXPECT_THROW((void)parse_probe_mode("median"), std::invalid_argument);
}

TEST(Probe, SumOfSingleRademacherCoefficient) {
  ProbeConfig c;
  c.mode = ProbeMode::sum;
  c.dist = EntryDistribution::rademacher();
  c.coefficients = {1.0, 0.0, 0.0};
  c.t = 0.5;
  c.trials = 4000;
  const ProbeReport r = concentration_probe(c);
  EXPECT_NEAR(r.estimate.point, 0.5, 0.03);
}

TEST(Probe, VectorNormConcentratesAroundHilbertSchmidt) {
  ProbeConfig c;
  c.mode = ProbeMode::vector_norm;
  c.matrix = DenseMatrix::identity(100);
  c.t = 3.0;
  c.trials = 1000;
  const ProbeReport r = concentration_probe(c);
  EXPECT_LE(r.estimate.point, 0.01);  // chi distribution with 100 degrees of freedom
  EXPECT_EQ(r.quantile_levels.size(), r.quantiles.size());
}

TEST(Probe, CoordinateProjectionSmallBall) {
  ProbeConfig c;
  c.mode = ProbeMode::projection;
  c.matrix = coordinate_projector(10, 4);
  c.t = 0.1;
  c.trials = 10000;
  const ProbeReport r = concentration_probe(c);
  EXPECT_EQ(r.estimate.l, 4u);
  EXPECT_DOUBLE_EQ(r.radius, 0.2);
  EXPECT_LE(r.estimate.point, 1e-3);
}

TEST(Probe, AnisotropicRadiusUsesHilbertSchmidt) {
  ProbeConfig c;
  c.mode = ProbeMode::anisotropic;
  c.matrix = DenseMatrix::diagonal(Vector{2, 1, 1, 1});
  c.t = 0.5;
  c.trials = 500;
  const ProbeReport r = concentration_probe(c);
  EXPECT_DOUBLE_EQ(r.radius, 0.5 * std::sqrt(7.0));
  EXPECT_GT(r.estimate.successes, 0u);
}

TEST(Probe, ProductNormExceedanceVanishesForLargeMultipliers) {
  ProbeConfig c;
  c.mode = ProbeMode::product_norm;
  c.matrix = DenseMatrix::identity(20);
  c.product_cols = 5;
  c.s = 3.0;
  c.t = 3.0;
  c.trials = 200;
  const ProbeReport r = concentration_probe(c);
  EXPECT_EQ(r.estimate.successes, 0u);
  for (std::size_t i = 1; i < r.quantiles.size(); ++i) EXPECT_GE(r.quantiles[i], r.quantiles[i - 1]);
}

TEST(Probe, ParameterMismatchesAreRejected) {
  ProbeConfig c;
  c.mode = ProbeMode::sum;
  EXPECT_THROW((void)concentration_probe(c), std::invalid_argument);
  c.coefficients = {1.0, 1.0};
  EXPECT_THROW((void)concentration_probe(c), std::invalid_argument);
  c.coefficients = {1.0};
  c.matrix = DenseMatrix::identity(1);
  EXPECT_THROW((void)concentration_probe(c), std::invalid_argument);

  ProbeConfig p;
  p.mode = ProbeMode::projection;
  EXPECT_THROW((void)concentration_probe(p), std::invalid_argument);
  p.matrix = DenseMatrix::from_rows({{1, 1}, {0, 0}});
  EXPECT_THROW((void)concentration_probe(p), std::invalid_argument);

  ProbeConfig q;
  q.mode = ProbeMode::product_norm;
  q.matrix = DenseMatrix::identity(3);
  q.s = 0.5;
  EXPECT_THROW((void)concentration_probe(q), std::invalid_argument);
}

TEST(Probe, IndependentOfWorkerCount) {
  ProbeConfig c;
  c.mode = ProbeMode::anisotropic;
  c.matrix = DenseMatrix::identity(3);
  c.t = 0.4;
  c.trials = 300;
  const ProbeReport a = concentration_probe(c, Executor(1));
  const ProbeReport b = concentration_probe(c, Executor(3));
  EXPECT_EQ(a.estimate.successes, b.estimate.successes);
  EXPECT_EQ(a.quantiles, b.quantiles);
}

}  // namespace
}  // namespace rmsv
