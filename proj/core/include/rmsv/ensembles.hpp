// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "rmsv/dense_matrix.hpp"
#include "rmsv/seeding.hpp"

namespace rmsv {

/// Entry law of an i.i.d. ensemble. Every kind is centered with unit variance.
struct EntryDistribution {
  enum class Kind { gaussian, rademacher, uniform, lattice };

  Kind kind = Kind::gaussian;
  int atoms = 0;  ///< lattice only: number of equally spaced atoms, >= 2

  static EntryDistribution gaussian() { return {Kind::gaussian, 0}; }
  static EntryDistribution rademacher() { return {Kind::rademacher, 0}; }
  /// Uniform on [-sqrt(3), sqrt(3)].
  static EntryDistribution uniform() { return {Kind::uniform, 0}; }
  /// Uniform on m centered atoms spaced sqrt(12 / (m^2 - 1)) apart.
  static EntryDistribution lattice(int m);

  /// Closed-form first and second moments.
  double mean() const;
  double variance() const;

  /// Draw from two independent 64-bit words.
  double sample(std::uint64_t bits1, std::uint64_t bits2) const;

  bool operator==(const EntryDistribution&) const = default;
};

/// Accepts "gaussian", "rademacher", "uniform" and "lattice:m".
/// Throws std::invalid_argument on anything else.
EntryDistribution parse_distribution(std::string_view name);
std::string to_string(const EntryDistribution& dist);

/// Shape plus the sub-gaussian and small-ball parameters of an ensemble.
struct EnsembleSpec {
  EntryDistribution dist;
  std::size_t rows = 1;     ///< n
  std::size_t cols = 1;     ///< m, with n >= m >= 1
  double psi2_bound = 2.0;  ///< K
  double conc_scale = 0.0;  ///< s (0 disables the small-ball assertion)
  double conc_level = 0.0;  ///< p

  bool square() const noexcept { return rows == cols; }
  /// Throws std::invalid_argument naming the violated invariant.
  void validate() const;

  bool operator==(const EnsembleSpec&) const = default;
};

/// Value of entry (i, j) under `seed`.
double sample_entry(const EntryDistribution& dist, const SeedPath& seed, std::size_t i,
                    std::size_t j);

/// rows × cols matrix whose (i, j) entry depends only on (seed, i, j).
DenseMatrix sample_matrix(const EntryDistribution& dist, std::size_t rows, std::size_t cols,
                          const SeedPath& seed);
DenseMatrix sample_matrix(const EnsembleSpec& spec, const SeedPath& seed);

/// Vector of n i.i.d. draws (element i depends only on (seed, i)).
Vector sample_vector(const EntryDistribution& dist, std::size_t n, const SeedPath& seed);

// ---------------------------------------------------------------------------
// Estimators

/// Empirical psi_theta norm of a sample: the smallest lambda in [1e-3, 1e3]
/// with mean(exp((|z|/lambda)^theta)) <= 2, by 60 bisection steps on log
/// lambda. Throws NumericalError when even lambda = 1e3 fails.
double psi_norm(std::span<const double> sample, double theta = 2.0);

/// psi_norm of n_samples draws of `dist`; n_samples must be >= 1e4.
double psi2_estimate(const EntryDistribution& dist, std::size_t n_samples, const SeedPath& seed,
                     double theta = 2.0);

/// Best-center fraction of a sorted sample inside a window of width 2t.
double levy_concentration_sorted(std::span<const double> sorted, double t);
/// Same on an unsorted sample (sorted internally).
double levy_concentration(std::span<const double> sample, double t);
/// Sliding-window estimate of sup_u P(|Z - u| <= t) from n_samples draws.
double levy_concentration(const EntryDistribution& dist, double t, std::size_t n_samples,
                          const SeedPath& seed);

struct AssumptionReport {
  bool mean_ok = false;
  bool var_ok = false;
  bool psi2_ok = false;
  bool conc_ok = false;
  double sample_mean = 0.0;
  double sample_variance = 0.0;
  double psi2 = 0.0;
  std::optional<double> witness_s;  ///< largest grid s with L(s) <= p·s
};

/// Empirical check of the ensemble hypotheses: mean and variance inside 3σ
/// bands, psi2 estimate <= 1.1·K, and some s on the grid s0·2^-i (i < 20)
/// with levy_concentration(s) <= p·s. Failures are report fields, not errors.
AssumptionReport validate_assumption(const EnsembleSpec& spec, double s0, std::size_t n_samples,
                                     const SeedPath& seed);

}  // namespace rmsv
