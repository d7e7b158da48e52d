// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "rmsv/nets.hpp"

namespace rmsv {
namespace {

double dist(const Vector& a, const Vector& b) { return norm2(subtract(a, b)); }

// Largest number of points on the unit circle with pairwise distance >= eps:
// neighbours must be at least 2·asin(eps/2) apart in angle.
std::size_t circle_packing_max(double eps) {
  return static_cast<std::size_t>(std::floor(2.0 * M_PI / (2.0 * std::asin(eps / 2.0)) + 1e-12));
}

void expect_separated_unit_points(const EpsNet& net) {
  for (const Vector& p : net.points) {
    ASSERT_EQ(p.size(), net.dim);
    EXPECT_NEAR(norm2(p), 1.0, 1e-12);
  }
  for (std::size_t i = 0; i < net.points.size(); ++i)
    for (std::size_t j = i + 1; j < net.points.size(); ++j)
      EXPECT_GE(dist(net.points[i], net.points[j]), net.eps - 1e-12);
}

TEST(BuildNet, ZeroSphereHasTwoPoints) {
  const EpsNet net = build_net(1, 0.5, SeedPath{1, 0, 0, 0}, 1000);
  ASSERT_EQ(net.points.size(), 2u);
  EXPECT_EQ(std::abs(net.points[0][0]), 1.0);
  EXPECT_EQ(net.points[0][0], -net.points[1][0]);
  EXPECT_LE(2.0, cardinality_bound(1, 0.5));
}

TEST(BuildNet, CircleRespectsPackingOracle) {
  EXPECT_EQ(circle_packing_max(1.0), 6u);
  for (double eps : {0.3, 0.5, 1.0, 1.5}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const EpsNet net = build_net(2, eps, SeedPath{seed, 0, 0, 0}, 20000);
      EXPECT_LE(net.points.size(), circle_packing_max(eps)) << "eps=" << eps;
      EXPECT_LE(static_cast<double>(net.points.size()), cardinality_bound(2, eps));
      expect_separated_unit_points(net);
    }
  }
}

TEST(BuildNet, CertificateRecordsStreak) {
  const EpsNet net = build_net(3, 0.5, SeedPath{3, 0, 0, 0}, 5000);
  EXPECT_EQ(net.rejection_streak, 5000u);
  EXPECT_GE(net.candidates_drawn, net.points.size() + 5000);
  EXPECT_LE(static_cast<double>(net.points.size()), 216.0);
  EXPECT_LE(covering_check(net, 10000, SeedPath{3, 0, 1, 0}), 0.5 + 0.05);
}

TEST(BuildNet, CardinalityAndSeparationProperty) {
  std::uint64_t seed = 0;
  for (std::size_t l = 1; l <= 4; ++l) {
    for (double eps : {0.25, 0.4, 0.5, 0.75, 1.0, 1.6, 2.0}) {
      const EpsNet net = build_net(l, eps, SeedPath{seed++, 0, 0, 0}, 2000);
      EXPECT_LE(static_cast<double>(net.points.size()), cardinality_bound(l, eps)) << l << " " << eps;
      expect_separated_unit_points(net);
    }
  }
}

TEST(BuildNet, Deterministic) {
  const SeedPath s{4, 2, 0, 0};
  EXPECT_EQ(build_net(3, 0.7, s, 3000).points, build_net(3, 0.7, s, 3000).points);
}

TEST(BuildNet, RejectsBadParameters) {
  EXPECT_THROW((void)build_net(2, 0.5, SeedPath{}, 999), std::invalid_argument);
  EXPECT_THROW((void)build_net(0, 0.5, SeedPath{}, 1000), std::invalid_argument);
  EXPECT_THROW((void)build_net(9, 0.5, SeedPath{}, 1000), std::invalid_argument);
  EXPECT_THROW((void)build_net(2, 0.0, SeedPath{}, 1000), std::invalid_argument);
  EXPECT_THROW((void)build_net(2, 2.5, SeedPath{}, 1000), std::invalid_argument);
}

TEST(CardinalityBound, Values) {
  EXPECT_DOUBLE_EQ(cardinality_bound(2, 1.0), 9.0);
  EXPECT_DOUBLE_EQ(cardinality_bound(3, 0.5), 216.0);
  // above eps = 1 the bound switches to (1 + 2/eps)^l, which S^0 still meets
  EXPECT_DOUBLE_EQ(cardinality_bound(1, 2.0), 2.0);
}

TEST(CoveringCheck, ZeroSphereIsCoveredExactly) {
  EpsNet net;
  net.dim = 1;
  net.eps = 0.5;
  net.points = {{1.0}, {-1.0}};
  EXPECT_EQ(covering_check(net, 1000, SeedPath{2, 0, 0, 0}), 0.0);
}

TEST(CoveringCheck, SinglePointLeavesAntipodeUncovered) {
  EpsNet net;
  net.dim = 2;
  net.eps = 0.1;
  net.points = {{1.0, 0.0}};
  const double d = covering_check(net, 1000, SeedPath{2, 0, 0, 0});
  EXPECT_GT(d, 1.99);
  EXPECT_LE(d, 2.0);
}

TEST(CoveringCheck, CircleNetAtEpsOne) {
  const EpsNet net = build_net(2, 1.0, SeedPath{8, 0, 0, 0}, 100000);
  EXPECT_LE(covering_check(net, 10000, SeedPath{8, 0, 1, 0}), 1.0);
  EXPECT_THROW((void)covering_check(net, 999, SeedPath{}), std::invalid_argument);
}

TEST(SampleSphere, UnitNorm) {
  CounterRng rng(SeedPath{1, 0, 0, 0});
  for (std::size_t d = 1; d <= 8; ++d) EXPECT_NEAR(norm2(sample_sphere(rng, d)), 1.0, 1e-14);
}

}  // namespace
}  // namespace rmsv
