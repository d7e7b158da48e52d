// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "rmsv/ensembles.hpp"
#include "rmsv/seeding.hpp"

namespace rmsv {
namespace {

const SeedPath kSeed{2024, 0, 0, 0};

std::vector<EntryDistribution> all_kinds() {
  return {EntryDistribution::gaussian(), EntryDistribution::rademacher(), EntryDistribution::uniform(),
          EntryDistribution::lattice(2), EntryDistribution::lattice(5)};
}

// --- seeding -------------------------------------------------------------------

TEST(Seeding, PathsAreDistinct) {
  std::set<std::uint64_t> keys;
  for (std::uint64_t t = 0; t < 50; ++t)
    for (std::uint64_t s = 0; s < 4; ++s)
      for (std::uint64_t a = 0; a < 3; ++a) keys.insert(SeedPath{7, t, s, a}.key());
  EXPECT_EQ(keys.size(), 50u * 4u * 3u);
  EXPECT_NE((SeedPath{1, 0, 0, 0}.key()), (SeedPath{2, 0, 0, 0}.key()));
}

TEST(Seeding, PathHelpers) {
  const SeedPath p{9, 3, 2, 1};
  EXPECT_EQ(p.with_trial(5), (SeedPath{9, 5, 2, 0}));
  EXPECT_EQ(p.with_stream(4), (SeedPath{9, 3, 4, 1}));
  EXPECT_EQ(p.next_attempt(), (SeedPath{9, 3, 2, 2}));
}

TEST(Seeding, UnitConversionsStayInRange) {
  EXPECT_EQ(to_unit(0), 0.0);
  EXPECT_LT(to_unit(~0ull), 1.0);
  EXPECT_GT(to_unit_open_low(0), 0.0);
  EXPECT_EQ(to_unit_open_low(~0ull), 1.0);
}

TEST(Seeding, CounterRngIsReproducible) {
  CounterRng a(kSeed), b(kSeed);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_EQ(a.draws(), 100u);
  double mean = 0.0;
  CounterRng c(kSeed.with_stream(3));
  for (int i = 0; i < 100000; ++i) mean += c.uniform();
  EXPECT_NEAR(mean / 100000, 0.5, 0.005);
}

// --- distributions -------------------------------------------------------------

TEST(EntryDistribution, ClosedFormMoments) {
  for (const auto& d : all_kinds()) {
    EXPECT_EQ(d.mean(), 0.0) << to_string(d);
    EXPECT_NEAR(d.variance(), 1.0, 1e-15) << to_string(d);
  }
  EXPECT_THROW(EntryDistribution::lattice(1), std::invalid_argument);
}

TEST(EntryDistribution, NamesRoundTrip) {
  for (const auto& d : all_kinds()) EXPECT_EQ(parse_distribution(to_string(d)), d);
  EXPECT_EQ(to_string(EntryDistribution::lattice(7)), "lattice:7");
  EXPECT_THROW(parse_distribution("cauchy"), std::invalid_argument);
  EXPECT_THROW(parse_distribution("lattice:1"), std::invalid_argument);
  EXPECT_THROW(parse_distribution("lattice:x"), std::invalid_argument);
}

TEST(EntryDistribution, SupportOfDiscreteKinds) {
  const DenseMatrix r = sample_matrix(EntryDistribution::rademacher(), 20, 20, kSeed);
  for (double x : r.entries()) EXPECT_TRUE(x == 1.0 || x == -1.0);
  const double h = std::sqrt(12.0 / 8.0);  // lattice:3 spacing
  const DenseMatrix l = sample_matrix(EntryDistribution::lattice(3), 20, 20, kSeed);
  for (double x : l.entries()) EXPECT_TRUE(x == -h || x == 0.0 || x == h) << x;
  const DenseMatrix u = sample_matrix(EntryDistribution::uniform(), 20, 20, kSeed);
  for (double x : u.entries()) EXPECT_LE(std::abs(x), std::sqrt(3.0));
}

TEST(EnsembleSpec, Validation) {
  EnsembleSpec s;
  s.rows = 4;
  s.cols = 4;
  EXPECT_NO_THROW(s.validate());
  s.cols = 5;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.cols = 3;
  s.psi2_bound = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.psi2_bound = 2.0;
  s.conc_scale = -1.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

// --- sampling --------------------------------------------------------------------

TEST(SampleMatrix, DeterministicPerPath) {
  EnsembleSpec s;
  s.rows = 9;
  s.cols = 7;
  for (const auto& d : all_kinds()) {
    s.dist = d;
    EXPECT_EQ(sample_matrix(s, kSeed), sample_matrix(s, kSeed));
    EXPECT_NE(sample_matrix(s, kSeed), sample_matrix(s, kSeed.with_trial(1)));
  }
}

TEST(SampleMatrix, EntryDependsOnlyOnIndex) {
  // a sub-block of a bigger draw equals the smaller draw
  const auto dist = EntryDistribution::gaussian();
  const DenseMatrix big = sample_matrix(dist, 10, 10, kSeed);
  const DenseMatrix small = sample_matrix(dist, 4, 3, kSeed);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(big(i, j), small(i, j));
  EXPECT_EQ(big(5, 6), sample_entry(dist, kSeed, 5, 6));
}

TEST(SampleMatrix, GaussianMomentsAtOneMillion) {
  const DenseMatrix a = sample_matrix(EntryDistribution::gaussian(), 1000, 1000, kSeed);
  double mean = 0.0;
  for (double x : a.entries()) mean += x;
  mean /= 1e6;
  double var = 0.0;
  for (double x : a.entries()) var += (x - mean) * (x - mean);
  var /= 1e6 - 1;
  EXPECT_NEAR(mean, 0.0, 3e-3);
  EXPECT_NEAR(var, 1.0, 5e-3);
}

TEST(SampleVector, MatchesFirstColumnStream) {
  const auto v = sample_vector(EntryDistribution::rademacher(), 50, kSeed);
  EXPECT_EQ(v.size(), 50u);
  EXPECT_EQ(v, sample_vector(EntryDistribution::rademacher(), 50, kSeed));
}

// --- psi2 ----------------------------------------------------------------------

TEST(Psi2, RademacherAnalytic) {
  // exp(1/lambda^2) = 2
  EXPECT_NEAR(psi2_estimate(EntryDistribution::rademacher(), 10000, kSeed), 1.2011224087864498,
              0.02 * 1.2011224087864498);
}

TEST(Psi2, GaussianAnalytic) {
  // (1 - 2/lambda^2)^(-1/2) = 2
  EXPECT_NEAR(psi2_estimate(EntryDistribution::gaussian(), 1000000, kSeed), 1.632993161855452,
              0.03 * 1.632993161855452);
}

TEST(Psi2, Homogeneous) {
  std::vector<double> z = sample_vector(EntryDistribution::uniform(), 20000, kSeed);
  const double base = psi_norm(z);
  for (double& x : z) x *= 2.0;
  EXPECT_NEAR(psi_norm(z), 2.0 * base, 0.02 * 2.0 * base);
}

TEST(Psi2, RejectsSmallSamplesAndUnboundedMoments) {
  EXPECT_THROW((void)psi2_estimate(EntryDistribution::gaussian(), 9999, kSeed), std::invalid_argument);
  std::vector<double> heavy(10000, 0.0);
  heavy[0] = 1e5;
  EXPECT_THROW((void)psi_norm(heavy), std::runtime_error);
}

// --- Levy concentration -----------------------------------------------------------

TEST(Levy, RademacherHalf) {
  EXPECT_NEAR(levy_concentration(EntryDistribution::rademacher(), 0.5, 1000000, kSeed), 0.5, 0.01);
}

TEST(Levy, GaussianSmallWindow) {
  // sup_u P(|Z - u| <= 0.1) = erf(0.1 / sqrt 2)
  EXPECT_NEAR(levy_concentration(EntryDistribution::gaussian(), 0.1, 1000000, kSeed), 0.07965567455405796,
              0.01);
}

TEST(Levy, FullCaptureAndBounds) {
  EXPECT_EQ(levy_concentration(EntryDistribution::uniform(), 2.0, 10000, kSeed), 1.0);
  EXPECT_EQ(levy_concentration(std::vector<double>{1, 2, 3, 10}, 4.5), 1.0);
  EXPECT_DOUBLE_EQ(levy_concentration(std::vector<double>{1, 2, 3, 10}, 1.0), 0.75);
  EXPECT_THROW((void)levy_concentration(EntryDistribution::gaussian(), 0.1, 100, kSeed), std::invalid_argument);
}

TEST(Levy, MonotoneAndSubadditiveOnFixedSample) {
  for (const auto& d : all_kinds()) {
    std::vector<double> z = sample_vector(d, 20000, kSeed);
    std::sort(z.begin(), z.end());
    double prev = 0.0;
    for (double t = 0.0; t <= 3.0; t += 0.05) {
      const double l = levy_concentration_sorted(z, t);
      EXPECT_GE(l, prev);
      EXPECT_LE(l, 1.0);
      prev = l;
      for (int m = 2; m <= 4; ++m) {
        EXPECT_LE(levy_concentration_sorted(z, m * t), m * l + 2.0 / 20000) << to_string(d) << " t=" << t;
      }
    }
  }
}

// --- assumption validation -----------------------------------------------------------

TEST(ValidateAssumption, GaussianPassesEverything) {
  EnsembleSpec s;
  s.rows = s.cols = 8;
  s.conc_level = 0.8;
  const AssumptionReport r = validate_assumption(s, 1.0, 1000000, kSeed);
  EXPECT_TRUE(r.mean_ok);
  EXPECT_TRUE(r.var_ok);
  EXPECT_TRUE(r.psi2_ok);
  EXPECT_TRUE(r.conc_ok);
  ASSERT_TRUE(r.witness_s.has_value());
  EXPECT_LE(*r.witness_s, 1.0);
}

TEST(ValidateAssumption, RademacherHasNoSmallBallWitness) {
  EnsembleSpec s;
  s.dist = EntryDistribution::rademacher();
  s.rows = s.cols = 8;
  s.conc_level = 1.0;
  const AssumptionReport r = validate_assumption(s, 0.1, 100000, kSeed);
  EXPECT_FALSE(r.conc_ok);
  EXPECT_FALSE(r.witness_s.has_value());
  EXPECT_TRUE(r.psi2_ok);
}

TEST(ValidateAssumption, FlagsUndersizedPsi2Bound) {
  EnsembleSpec s;
  s.rows = s.cols = 8;
  s.psi2_bound = 1.0;
  EXPECT_FALSE(validate_assumption(s, 1.0, 100000, kSeed).psi2_ok);
  EXPECT_THROW((void)validate_assumption(s, 0.0, 100000, kSeed), std::invalid_argument);
}

}  // namespace
}  // namespace rmsv
