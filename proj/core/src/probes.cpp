// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rmsv/errors.hpp"
#include "rmsv/experiments.hpp"
#include "rmsv/linalg.hpp"
#include "rmsv/statistics.hpp"

namespace rmsv {

namespace {

constexpr std::uint64_t kSampleStream = 0;
constexpr std::uint64_t kCenterStream = 1;

const std::vector<double> kQuantileLevels = {0.01, 0.25, 0.5, 0.75, 0.99};

[[noreturn]] void mismatch(ProbeMode mode, const std::string& what) {
  throw std::invalid_argument("concentration_probe(" + to_string(mode) + "): " + what);
}

const DenseMatrix& require_matrix(const ProbeConfig& cfg) {
  if (!cfg.matrix) mismatch(cfg.mode, "needs a fixed matrix");
  if (!cfg.coefficients.empty()) mismatch(cfg.mode, "coefficients apply to sum mode only");
  return *cfg.matrix;
}

SeedPath sample_seed(const ProbeConfig& cfg, std::size_t i) {
  return SeedPath{cfg.master_seed, i, kSampleStream, 0};
}

std::vector<double> quantiles_of(std::span<const double> stat) {
  std::vector<double> out;
  for (double q : kQuantileLevels) out.push_back(quantile(stat, q));
  return out;
}

// Best capture count of the ball of `radius` over the origin and
// kProbeCenters - 1 sampled centers D·Z' drawn from an independent stream.
std::size_t best_center_count(const ProbeConfig& cfg, const DenseMatrix& d,
                              const std::vector<Vector>& images, double radius) {
  std::vector<Vector> centers;
  centers.emplace_back(d.rows(), 0.0);
  for (std::size_t c = 1; c < kProbeCenters; ++c) {
    centers.push_back(d * sample_vector(cfg.dist, d.cols(), SeedPath{cfg.master_seed, c, kCenterStream, 0}));
  }
  const double r2 = radius * radius;
  std::size_t best = 0;
  for (const Vector& u : centers) {
    std::size_t count = 0;
    for (const Vector& x : images) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - u[i]) * (x[i] - u[i]);
      if (s <= r2) ++count;
    }
    best = std::max(best, count);
  }
  return best;
}

ProbeReport sum_probe(const ProbeConfig& cfg, const Executor& exec) {
  if (cfg.matrix) mismatch(cfg.mode, "takes coefficients, not a matrix");
  if (cfg.coefficients.empty()) mismatch(cfg.mode, "needs coefficients");
  double sq = 0.0;
  for (double a : cfg.coefficients) sq += a * a;
  if (std::abs(sq - 1.0) > 1e-12) mismatch(cfg.mode, "coefficients must satisfy sum a_i^2 = 1");
  if (!(cfg.t >= 0.0)) mismatch(cfg.mode, "t must be >= 0");

  const std::size_t n = cfg.coefficients.size();
  const auto sums = exec.map_trials(cfg.trials, [&](std::size_t i) {
    return dot(cfg.coefficients, sample_vector(cfg.dist, n, sample_seed(cfg, i)));
  });
  std::vector<double> sorted = sums;
  std::sort(sorted.begin(), sorted.end());
  const double fraction = levy_concentration_sorted(sorted, cfg.t);
  const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(cfg.trials)));

  ProbeReport report;
  report.mode = cfg.mode;
  report.radius = cfg.t;
  report.estimate = make_estimate(n, 1, cfg.t, count, cfg.trials, 0);
  report.quantile_levels = kQuantileLevels;
  report.quantiles = quantiles_of(sums);
  return report;
}

ProbeReport ball_probe(const ProbeConfig& cfg, const Executor& exec) {
  const DenseMatrix& d = require_matrix(cfg);
  if (!(cfg.t >= 0.0)) mismatch(cfg.mode, "t must be >= 0");
  std::size_t label = d.rows();
  double radius = 0.0;
  if (cfg.mode == ProbeMode::projection) {
    if (d.rows() != d.cols()) mismatch(cfg.mode, "projector must be square");
    if (max_abs_diff(d, d.transposed()) > 1e-10 || max_abs_diff(d * d, d) > 1e-10) {
      mismatch(cfg.mode, "matrix is not an orthogonal projector");
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < d.rows(); ++i) trace += d(i, i);
    label = static_cast<std::size_t>(std::llround(trace));
    if (label == 0) mismatch(cfg.mode, "projector rank must be >= 1");
    radius = cfg.t * std::sqrt(static_cast<double>(label));
  } else {
    radius = cfg.t * matrix_norms(d).hilbert_schmidt;
  }

  const auto images = exec.map_trials(cfg.trials, [&](std::size_t i) {
    return d * sample_vector(cfg.dist, d.cols(), sample_seed(cfg, i));
  });
  const std::size_t best = best_center_count(cfg, d, images, radius);
  std::vector<double> norms;
  for (const Vector& x : images) norms.push_back(norm2(x));

  ProbeReport report;
  report.mode = cfg.mode;
  report.radius = radius;
  report.estimate = make_estimate(d.cols(), label, cfg.t, best, cfg.trials, 0);
  report.quantile_levels = kQuantileLevels;
  report.quantiles = quantiles_of(norms);
  return report;
}

ProbeReport vector_norm_probe(const ProbeConfig& cfg, const Executor& exec) {
  const DenseMatrix& d = require_matrix(cfg);
  if (!(cfg.t >= 0.0)) mismatch(cfg.mode, "t must be >= 0");
  const double m = matrix_norms(d).hilbert_schmidt;
  const auto deviations = exec.map_trials(cfg.trials, [&](std::size_t i) {
    return std::abs(norm2(d * sample_vector(cfg.dist, d.cols(), sample_seed(cfg, i))) - m);
  });
  const auto count = static_cast<std::size_t>(
      std::count_if(deviations.begin(), deviations.end(), [&](double x) { return x > cfg.t; }));

  ProbeReport report;
  report.mode = cfg.mode;
  report.radius = cfg.t;
  report.estimate = make_estimate(d.cols(), d.rows(), cfg.t, count, cfg.trials, 0);
  report.quantile_levels = kQuantileLevels;
  report.quantiles = quantiles_of(deviations);
  return report;
}

ProbeReport product_norm_probe(const ProbeConfig& cfg, const Executor& exec) {
  const DenseMatrix& d = require_matrix(cfg);
  if (!(cfg.s >= 1.0 && cfg.t >= 1.0)) mismatch(cfg.mode, "needs s >= 1 and t >= 1");
  if (cfg.product_cols < 1) mismatch(cfg.mode, "G needs at least one column");
  const MatrixNorms dn = matrix_norms(d);
  const double threshold = cfg.s * dn.hilbert_schmidt +
                           cfg.t * std::sqrt(static_cast<double>(cfg.product_cols)) * dn.operator_norm;
  const auto norms = exec.map_trials(cfg.trials, [&](std::size_t i) {
    const DenseMatrix g = sample_matrix(cfg.dist, d.cols(), cfg.product_cols, sample_seed(cfg, i));
    return singular_values(d * g).front();
  });
  const auto count = static_cast<std::size_t>(
      std::count_if(norms.begin(), norms.end(), [&](double x) { return x > threshold; }));

  ProbeReport report;
  report.mode = cfg.mode;
  report.radius = threshold;
  report.estimate = make_estimate(d.cols(), cfg.product_cols, cfg.t, count, cfg.trials, 0);
  report.quantile_levels = kQuantileLevels;
  report.quantiles = quantiles_of(norms);
  return report;
}

}  // namespace

ProbeMode parse_probe_mode(std::string_view name) {
  if (name == "sum") return ProbeMode::sum;
  if (name == "projection") return ProbeMode::projection;
  if (name == "anisotropic") return ProbeMode::anisotropic;
  if (name == "vector_norm") return ProbeMode::vector_norm;
  if (name == "product_norm") return ProbeMode::product_norm;
  throw std::invalid_argument("unknown probe mode '" + std::string(name) + "'");
}

std::string to_string(ProbeMode mode) {
  switch (mode) {
    case ProbeMode::sum: return "sum";
    case ProbeMode::projection: return "projection";
    case ProbeMode::anisotropic: return "anisotropic";
    case ProbeMode::vector_norm: return "vector_norm";
    case ProbeMode::product_norm: return "product_norm";
  }
  return "unknown";
}

ProbeReport concentration_probe(const ProbeConfig& cfg, const Executor& exec) {
  if (cfg.trials < 1) throw std::invalid_argument("concentration_probe: trials must be >= 1");
  switch (cfg.mode) {
    case ProbeMode::sum: return sum_probe(cfg, exec);
    case ProbeMode::projection:
    case ProbeMode::anisotropic: return ball_probe(cfg, exec);
    case ProbeMode::vector_norm: return vector_norm_probe(cfg, exec);
    case ProbeMode::product_norm: return product_norm_probe(cfg, exec);
  }
  throw std::invalid_argument("concentration_probe: unknown mode");
}

}  // namespace rmsv
