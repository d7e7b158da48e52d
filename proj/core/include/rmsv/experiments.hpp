// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmsv/dense_matrix.hpp"
#include "rmsv/ensembles.hpp"
#include "rmsv/parallel.hpp"
#include "rmsv/seeding.hpp"

namespace rmsv {

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  EnsembleSpec spec;
  std::vector<std::size_t> l_values;
  std::vector<double> t_values;
  std::vector<double> eps_values;
  std::size_t trials = 100;
  std::uint64_t master_seed = 0;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;

  /// trials >= 1, a valid spec and every l in [1, cols].
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Empirical probability of one event with its exact 95% interval.
/// `n`, `l` and `t` label the cell; their meaning is per experiment
/// (for the rectangular toolbox checks n is the row count and l the column
/// count or subspace codimension, and t carries eps).
struct TailEstimate {
  std::size_t n = 0;
  std::size_t l = 0;
  double t = 0.0;
  std::size_t successes = 0;
  std::size_t trials = 0;
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::size_t resamples = 0;
};

TailEstimate make_estimate(std::size_t n, std::size_t l, double t, std::size_t successes,
                           std::size_t trials, std::size_t resamples);

/// Square draw whose condition number is at most kConditionLimit, found by
/// bumping the attempt counter of the seed; more than 10 resamples throws.
struct GuardedDraw {
  DenseMatrix matrix;
  Vector singular_values;  ///< non-increasing
  std::size_t resamples = 0;
};

GuardedDraw draw_invertible(const EnsembleSpec& spec, const SeedPath& seed);

// ---------------------------------------------------------------------------
// Scaling of the l-th smallest singular value

struct ScalingRow {
  std::size_t l = 0;
  std::size_t trials = 0;
  double median_sv = 0.0;
  double ratio = 0.0;  ///< median_sv·sqrt(n)/l
  double q25 = 0.0;
  double q75 = 0.0;
};

struct ScalingReport {
  std::size_t n = 0;
  std::vector<ScalingRow> rows;
  double loglog_slope = 0.0;
  double loglog_intercept = 0.0;
  std::size_t resamples = 0;
};

/// One SVD per trial; rows follow cfg.l_values. The fit uses every row.
ScalingReport scaling_experiment(const ExperimentConfig& cfg, const Executor& exec = Executor{});

// ---------------------------------------------------------------------------
// Tails

struct TailReport {
  std::vector<TailEstimate> estimates;
  /// Negated slope of log(point) against t·l over cells with >= 5 successes;
  /// absent when fewer than two cells qualify.
  std::optional<double> fitted_c2;
};

std::optional<double> fit_tail_constant(const std::vector<TailEstimate>& estimates);

/// P(s_{n+1-l}(A) > c1·t·l/sqrt(n)) for each t in cfg.t_values, which must be
/// increasing and > 1. All t share the same draws.
TailReport tail_experiment(const ExperimentConfig& cfg, std::size_t l, double c1,
                           const Executor& exec = Executor{});

struct SandwichEstimate {
  double c_low = 0.0;
  double c_high = 0.0;
  TailEstimate estimate;  ///< t is unused and left at 0
};

/// P(c_low·l/sqrt(n) <= s_{n+1-l}(A) <= c_high·l/sqrt(n)). c_high may be
/// infinite; c_low >= c_high throws.
SandwichEstimate sandwich_experiment(const ExperimentConfig& cfg, std::size_t l, double c_low,
                                     double c_high, const Executor& exec = Executor{});

/// For an N × n spec: P(s_n(G) <= eps·(sqrt(N) - sqrt(n-1))) for each eps in
/// cfg.eps_values, on shared draws.
std::vector<TailEstimate> minsv_lowerbound_experiment(const ExperimentConfig& cfg,
                                                      const Executor& exec = Executor{});

struct DistanceReport {
  std::vector<TailEstimate> estimates;  ///< P(dist(Z, H + v) < eps·sqrt(m))
  double median_ratio = 0.0;            ///< median of dist/sqrt(m)
  std::size_t resamples = 0;
};

/// Z in R^N and N-m spanning vectors drawn from cfg.spec.dist; N = spec.rows.
/// `shift` is v (empty means 0). Rank-deficient spans are redrawn up to 10
/// times per trial.
DistanceReport distance_experiment(const ExperimentConfig& cfg, std::size_t m,
                                   const Vector& shift, const Executor& exec = Executor{});

// ---------------------------------------------------------------------------
// Rectangular matrices through square augmentation

/// [A | C] with k = rows - cols fresh i.i.d. columns C drawn under `seed`.
/// A is copied bit-exactly into the leading columns.
DenseMatrix rectangular_augmentation(const DenseMatrix& a, const EntryDistribution& dist,
                                     const SeedPath& seed);

struct RectangularReport {
  std::size_t k = 0;
  std::vector<TailEstimate> estimates;  ///< for A, per t
  std::vector<TailEstimate> augmented;  ///< same events for J
  double max_interlacing_violation = 0.0;  ///< max_j s_j(A) - s_j(J), clamped at 0
};

/// For an n × (n-k) spec and l in [k+1, n]: tail estimates of
/// s_{n+1-l} for A and for its augmentation J, plus the interlacing check.
RectangularReport rectangular_experiment(const ExperimentConfig& cfg, std::size_t l, double c1,
                                         const Executor& exec = Executor{});

// ---------------------------------------------------------------------------
// Identity suite for the biorthogonal constructions

struct IdentityRow {
  std::size_t n = 0;
  std::size_t l = 0;
  std::size_t trials = 0;
  double gram = 0.0;        ///< max |<v_j, v_k*> - δ_jk|
  double dual_norm = 0.0;   ///< max dual-norm identity residual
  double biorthogonality = 0.0;
  double membership = 0.0;
  double chain = 0.0;
  double hilbert_schmidt = 0.0;
  double operator_norm = 0.0;
  std::size_t resamples = 0;

  double max_residual() const;
};

/// Square spec of size n; one row per l in cfg.l_values, each over cfg.trials
/// draws with a random unit y in R^l.
std::vector<IdentityRow> identity_suite(const ExperimentConfig& cfg,
                                        const Executor& exec = Executor{});

// ---------------------------------------------------------------------------
// Concentration probes for the toolbox inequalities

enum class ProbeMode { sum, projection, anisotropic, vector_norm, product_norm };

ProbeMode parse_probe_mode(std::string_view name);
std::string to_string(ProbeMode mode);

struct ProbeConfig {
  ProbeMode mode = ProbeMode::sum;
  EntryDistribution dist;
  Vector coefficients;                 ///< sum: unit-norm a
  std::optional<DenseMatrix> matrix;   ///< projection: P; other vector modes: D
  std::size_t product_cols = 1;        ///< product_norm: k, G is N × k
  double t = 0.1;
  double s = 1.0;                      ///< product_norm only
  std::size_t trials = 1000;
  std::uint64_t master_seed = 0;
};

struct ProbeReport {
  ProbeMode mode = ProbeMode::sum;
  /// sum, projection, anisotropic: best-center capture fraction at `radius`;
  /// for vector modes this is a lower bound on the supremum over centers.
  /// vector_norm: P(|‖DZ‖ - ‖D‖_HS| > t). product_norm: P(‖DG‖ > radius).
  TailEstimate estimate;
  double radius = 0.0;
  std::vector<double> quantile_levels;
  std::vector<double> quantiles;  ///< of the per-trial statistic
};

/// Number of sampled candidate centers used by the vector-valued modes.
inline constexpr std::size_t kProbeCenters = 100;

ProbeReport concentration_probe(const ProbeConfig& cfg, const Executor& exec = Executor{});

}  // namespace rmsv
