// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rmsv/dense_matrix.hpp"
#include "rmsv/seeding.hpp"

namespace rmsv {

/// Maximal eps-separated subset of the unit sphere S^{dim-1} built greedily.
/// Maximality makes it an eps-net; the certificate is the rejection streak
/// that ended construction.
struct EpsNet {
  std::size_t dim = 1;
  double eps = 1.0;
  std::vector<Vector> points;
  std::uint64_t rejection_streak = 0;  ///< consecutive rejected candidates at exit
  std::uint64_t candidates_drawn = 0;
};

/// Volumetric cardinality bound: (3/eps)^dim for eps <= 1 and (1 + 2/eps)^dim
/// above, where (3/eps)^dim no longer dominates the packing count.
double cardinality_bound(std::size_t dim, double eps);

/// Uniform point on S^{dim-1}: a normalized gaussian vector.
Vector sample_sphere(CounterRng& rng, std::size_t dim);

/// Greedy construction: draw uniform sphere points, keep those at distance
/// >= eps from every kept point, stop after `budget` consecutive rejections.
/// Requires 1 <= dim <= 8, 0 < eps <= 2 and budget >= 1000.
EpsNet build_net(std::size_t dim, double eps, const SeedPath& seed, std::uint64_t budget);

/// Largest distance from any of n_probes uniform sphere points to its nearest
/// net point. A value <= eps certifies the net on the sample. n_probes >= 1000.
double covering_check(const EpsNet& net, std::size_t n_probes, const SeedPath& seed);

}  // namespace rmsv
