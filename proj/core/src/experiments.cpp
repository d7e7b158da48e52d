// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rmsv/biortho.hpp"
#include "rmsv/errors.hpp"
#include "rmsv/linalg.hpp"
#include "rmsv/nets.hpp"
#include "rmsv/statistics.hpp"

namespace rmsv {

namespace {

constexpr std::uint64_t kMatrixStream = 0;

SeedPath trial_seed(const ExperimentConfig& cfg, std::size_t trial) {
  return SeedPath{cfg.master_seed, trial, kMatrixStream, 0};
}

void require_square(const ExperimentConfig& cfg, const char* who) {
  if (!cfg.spec.square()) {
    throw std::invalid_argument(std::string(who) + ": ensemble must be square");
  }
}

void require_split(std::size_t l, std::size_t lo, std::size_t hi, const char* who) {
  if (l < lo || l > hi) {
    throw std::invalid_argument(std::string(who) + ": l = " + std::to_string(l) + " outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

void require_tail_thresholds(const std::vector<double>& t_values, const char* who) {
  if (t_values.empty()) throw std::invalid_argument(std::string(who) + ": t_values is empty");
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (!(t_values[i] > 1.0) || !std::isfinite(t_values[i])) {
      throw std::invalid_argument(std::string(who) + ": every t must be finite and > 1");
    }
    if (i > 0 && !(t_values[i] > t_values[i - 1])) {
      throw std::invalid_argument(std::string(who) + ": t_values must be increasing");
    }
  }
}

void require_eps(const std::vector<double>& eps_values, const char* who) {
  if (eps_values.empty()) throw std::invalid_argument(std::string(who) + ": eps_values is empty");
  for (double e : eps_values) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw std::invalid_argument(std::string(who) + ": every eps must be finite and >= 0");
    }
  }
}

// Counts of `event(trial, cell)` over trials, one count per cell.
template <typename Trial, typename Event>
std::vector<std::size_t> count_events(const std::vector<Trial>& trials, std::size_t cells,
                                      Event&& event) {
  std::vector<std::size_t> counts(cells, 0);
  for (const Trial& tr : trials) {
    for (std::size_t c = 0; c < cells; ++c) {
      if (event(tr, c)) ++counts[c];
    }
  }
  return counts;
}

struct SpectrumTrial {
  Vector values;
  std::size_t resamples;
};

std::size_t total_resamples(const std::vector<SpectrumTrial>& trials) {
  std::size_t r = 0;
  for (const auto& t : trials) r += t.resamples;
  return r;
}

std::vector<SpectrumTrial> square_spectra(const ExperimentConfig& cfg, const Executor& exec) {
  return exec.map_trials(cfg.trials, [&](std::size_t i) {
    GuardedDraw d = draw_invertible(cfg.spec, trial_seed(cfg, i));
    return SpectrumTrial{std::move(d.singular_values), d.resamples};
  });
}

// s_{n+1-l} sits at 0-based position n-l of a non-increasing spectrum.
double lth_smallest(const Vector& values, std::size_t n, std::size_t l) { return values[n - l]; }

}  // namespace

void ExperimentConfig::validate() const {
  spec.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  for (std::size_t l : l_values) require_split(l, 1, spec.cols, "l_values");
}

TailEstimate make_estimate(std::size_t n, std::size_t l, double t, std::size_t successes,
                           std::size_t trials, std::size_t resamples) {
  const Interval ci = clopper_pearson(successes, trials);
  TailEstimate e;
  e.n = n;
  e.l = l;
  e.t = t;
  e.successes = successes;
  e.trials = trials;
  e.point = static_cast<double>(successes) / static_cast<double>(trials);
  e.ci_low = std::min(ci.low, e.point);
  e.ci_high = std::max(ci.high, e.point);
  e.resamples = resamples;
  return e;
}

GuardedDraw draw_invertible(const EnsembleSpec& spec, const SeedPath& seed) {
  if (!spec.square()) throw DimensionError("draw_invertible: ensemble must be square");
  SeedPath path = seed;
  for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
    DenseMatrix a = sample_matrix(spec, path);
    Vector s = singular_values(a);
    const double smin = s.back();
    if (smin > 0.0 && s.front() / smin <= kConditionLimit) {
      return GuardedDraw{std::move(a), std::move(s), static_cast<std::size_t>(attempt)};
    }
    path = path.next_attempt();
  }
  throw NumericalError("draw_invertible: more than 10 condition-guard resamples for trial " +
                       std::to_string(seed.trial));
}

// ---------------------------------------------------------------------------

ScalingReport scaling_experiment(const ExperimentConfig& cfg, const Executor& exec) {
  cfg.validate();
  require_square(cfg, "scaling_experiment");
  if (cfg.l_values.empty()) throw std::invalid_argument("scaling_experiment: l_values is empty");
  const std::size_t n = cfg.spec.rows;
  const auto spectra = square_spectra(cfg, exec);

  ScalingReport report;
  report.n = n;
  report.resamples = total_resamples(spectra);
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> log_l, log_median;
  for (std::size_t l : cfg.l_values) {
    std::vector<double> sample;
    sample.reserve(spectra.size());
    for (const auto& tr : spectra) sample.push_back(lth_smallest(tr.values, n, l));
    ScalingRow row;
    row.l = l;
    row.trials = cfg.trials;
    row.median_sv = median(sample);
    row.ratio = row.median_sv * root_n / static_cast<double>(l);
    row.q25 = quantile(sample, 0.25);
    row.q75 = quantile(sample, 0.75);
    report.rows.push_back(row);
    if (row.median_sv > 0.0) {
      log_l.push_back(std::log(static_cast<double>(l)));
      log_median.push_back(std::log(row.median_sv));
    }
  }
  report.loglog_slope = std::numeric_limits<double>::quiet_NaN();
  report.loglog_intercept = std::numeric_limits<double>::quiet_NaN();
  if (log_l.size() >= 2 && std::adjacent_find(log_l.begin(), log_l.end(), std::not_equal_to<>()) !=
                               log_l.end()) {
    const LineFit fit = least_squares_line(log_l, log_median);
    report.loglog_slope = fit.slope;
    report.loglog_intercept = fit.intercept;
  }
  return report;
}

// ---------------------------------------------------------------------------

std::optional<double> fit_tail_constant(const std::vector<TailEstimate>& estimates) {
  std::vector<double> x, y;
  for (const auto& e : estimates) {
    if (e.successes >= 5) {
      x.push_back(e.t * static_cast<double>(e.l));
      y.push_back(std::log(e.point));
    }
  }
  if (x.size() < 2) return std::nullopt;
  return -least_squares_line(x, y).slope;
}

TailReport tail_experiment(const ExperimentConfig& cfg, std::size_t l, double c1,
                           const Executor& exec) {
  cfg.validate();
  require_square(cfg, "tail_experiment");
  require_split(l, 1, cfg.spec.rows, "tail_experiment");
  require_tail_thresholds(cfg.t_values, "tail_experiment");
  if (!(c1 > 0.0)) throw std::invalid_argument("tail_experiment: c1 must be positive");
  const std::size_t n = cfg.spec.rows;
  const double scale = c1 * static_cast<double>(l) / std::sqrt(static_cast<double>(n));
  const auto spectra = square_spectra(cfg, exec);
  const auto counts = count_events(spectra, cfg.t_values.size(), [&](const SpectrumTrial& tr, std::size_t c) {
    return lth_smallest(tr.values, n, l) > cfg.t_values[c] * scale;
  });
  TailReport report;
  const std::size_t resamples = total_resamples(spectra);
  for (std::size_t c = 0; c < counts.size(); ++c) {
    report.estimates.push_back(make_estimate(n, l, cfg.t_values[c], counts[c], cfg.trials, resamples));
  }
  report.fitted_c2 = fit_tail_constant(report.estimates);
  return report;
}

SandwichEstimate sandwich_experiment(const ExperimentConfig& cfg, std::size_t l, double c_low,
                                     double c_high, const Executor& exec) {
  cfg.validate();
  require_square(cfg, "sandwich_experiment");
  require_split(l, 1, cfg.spec.rows, "sandwich_experiment");
  if (!(c_low >= 0.0) || std::isnan(c_high) || !(c_low < c_high)) {
    throw std::invalid_argument("sandwich_experiment: need 0 <= c_low < c_high");
  }
  const std::size_t n = cfg.spec.rows;
  const double unit = static_cast<double>(l) / std::sqrt(static_cast<double>(n));
  const auto spectra = square_spectra(cfg, exec);
  const auto counts = count_events(spectra, 1, [&](const SpectrumTrial& tr, std::size_t) {
    const double s = lth_smallest(tr.values, n, l);
    return c_low * unit <= s && (std::isinf(c_high) || s <= c_high * unit);
  });
  return SandwichEstimate{c_low, c_high,
                          make_estimate(n, l, 0.0, counts[0], cfg.trials, total_resamples(spectra))};
}

std::vector<TailEstimate> minsv_lowerbound_experiment(const ExperimentConfig& cfg,
                                                      const Executor& exec) {
  cfg.validate();
  require_eps(cfg.eps_values, "minsv_lowerbound_experiment");
  const std::size_t big_n = cfg.spec.rows;
  const std::size_t n = cfg.spec.cols;
  const double gap = std::sqrt(static_cast<double>(big_n)) - std::sqrt(static_cast<double>(n - 1));
  const auto smallest = exec.map_trials(cfg.trials, [&](std::size_t i) {
    return singular_values(sample_matrix(cfg.spec, trial_seed(cfg, i))).back();
  });
  const auto counts = count_events(smallest, cfg.eps_values.size(), [&](double s, std::size_t c) {
    return s <= cfg.eps_values[c] * gap;
  });
  std::vector<TailEstimate> out;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    out.push_back(make_estimate(big_n, n, cfg.eps_values[c], counts[c], cfg.trials, 0));
  }
  return out;
}

DistanceReport distance_experiment(const ExperimentConfig& cfg, std::size_t m, const Vector& shift,
                                   const Executor& exec) {
  cfg.validate();
  require_eps(cfg.eps_values, "distance_experiment");
  const std::size_t big_n = cfg.spec.rows;
  if (m == 0 || m >= big_n) throw std::invalid_argument("distance_experiment: need 0 < m < N");
  if (!shift.empty() && shift.size() != big_n) {
    throw DimensionError("distance_experiment: shift must have N entries");
  }
  const Vector v = shift.empty() ? Vector(big_n, 0.0) : shift;

  struct DistanceTrial {
    double dist;
    std::size_t resamples;
  };
  const auto trials = exec.map_trials(cfg.trials, [&](std::size_t i) {
    const SeedPath base = trial_seed(cfg, i);
    const Vector z = sample_vector(cfg.spec.dist, big_n, base.with_stream(1));
    SeedPath span_seed = base.with_stream(2);
    for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
      try {
        const Subspace h = orthonormal_basis(sample_matrix(cfg.spec.dist, big_n, big_n - m, span_seed));
        return DistanceTrial{dist_to_subspace(z, h, v), static_cast<std::size_t>(attempt)};
      } catch (const RankDeficientError&) {
        span_seed = span_seed.next_attempt();
      }
    }
    throw NumericalError("distance_experiment: spanning vectors rank deficient after 10 resamples");
  });

  const double root_m = std::sqrt(static_cast<double>(m));
  DistanceReport report;
  std::vector<double> ratios;
  for (const auto& t : trials) {
    ratios.push_back(t.dist / root_m);
    report.resamples += t.resamples;
  }
  report.median_ratio = median(ratios);
  const auto counts = count_events(trials, cfg.eps_values.size(), [&](const DistanceTrial& t, std::size_t c) {
    return t.dist < cfg.eps_values[c] * root_m;
  });
  for (std::size_t c = 0; c < counts.size(); ++c) {
    report.estimates.push_back(
        make_estimate(big_n, m, cfg.eps_values[c], counts[c], cfg.trials, report.resamples));
  }
  return report;
}

// ---------------------------------------------------------------------------

DenseMatrix rectangular_augmentation(const DenseMatrix& a, const EntryDistribution& dist,
                                     const SeedPath& seed) {
  if (a.cols() > a.rows()) {
    throw DimensionError("rectangular_augmentation: expected n × (n-k) with k >= 0, got " +
                         std::to_string(a.rows()) + " × " + std::to_string(a.cols()));
  }
  const std::size_t n = a.rows();
  const std::size_t k = n - a.cols();
  if (k == 0) return a;
  const DenseMatrix fresh = sample_matrix(dist, n, k, seed);
  DenseMatrix j(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) j(r, c) = a(r, c);
    for (std::size_t c = 0; c < k; ++c) j(r, a.cols() + c) = fresh(r, c);
  }
  return j;
}

RectangularReport rectangular_experiment(const ExperimentConfig& cfg, std::size_t l, double c1,
                                         const Executor& exec) {
  cfg.spec.validate();
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::size_t n = cfg.spec.rows;
  const std::size_t k = n - cfg.spec.cols;
  require_split(l, k + 1, n, "rectangular_experiment");
  require_tail_thresholds(cfg.t_values, "rectangular_experiment");
  if (!(c1 > 0.0)) throw std::invalid_argument("rectangular_experiment: c1 must be positive");

  struct PairTrial {
    double s_a;
    double s_j;
    double violation;
  };
  const auto trials = exec.map_trials(cfg.trials, [&](std::size_t i) {
    const SeedPath base = trial_seed(cfg, i);
    const DenseMatrix a = sample_matrix(cfg.spec, base);
    const DenseMatrix j = rectangular_augmentation(a, cfg.spec.dist, base.with_stream(1));
    const Vector sa = singular_values(a);
    const Vector sj = singular_values(j);
    double violation = 0.0;
    for (std::size_t q = 0; q < sa.size(); ++q) violation = std::max(violation, sa[q] - sj[q]);
    return PairTrial{sa[n - l], sj[n - l], violation};
  });

  RectangularReport report;
  report.k = k;
  const double scale = c1 * static_cast<double>(l) / std::sqrt(static_cast<double>(n));
  for (const auto& t : trials) {
    report.max_interlacing_violation = std::max(report.max_interlacing_violation, t.violation);
  }
  const auto counts_a = count_events(trials, cfg.t_values.size(), [&](const PairTrial& t, std::size_t c) {
    return t.s_a > cfg.t_values[c] * scale;
  });
  const auto counts_j = count_events(trials, cfg.t_values.size(), [&](const PairTrial& t, std::size_t c) {
    return t.s_j > cfg.t_values[c] * scale;
  });
  for (std::size_t c = 0; c < cfg.t_values.size(); ++c) {
    report.estimates.push_back(make_estimate(n, l, cfg.t_values[c], counts_a[c], cfg.trials, 0));
    report.augmented.push_back(make_estimate(n, l, cfg.t_values[c], counts_j[c], cfg.trials, 0));
  }
  return report;
}

// ---------------------------------------------------------------------------

double IdentityRow::max_residual() const {
  return std::max({gram, dual_norm, biorthogonality, membership, chain, hilbert_schmidt,
                   operator_norm});
}

std::vector<IdentityRow> identity_suite(const ExperimentConfig& cfg, const Executor& exec) {
  cfg.validate();
  require_square(cfg, "identity_suite");
  const std::size_t n = cfg.spec.rows;
  if (n < 2) throw std::invalid_argument("identity_suite: n must be >= 2");
  if (cfg.l_values.empty()) throw std::invalid_argument("identity_suite: l_values is empty");
  for (std::size_t l : cfg.l_values) require_split(l, 1, n - 1, "identity_suite");

  const auto trials = exec.map_trials(cfg.trials, [&](std::size_t i) {
    const SeedPath seed = trial_seed(cfg, i);
    const GuardedDraw draw = draw_invertible(cfg.spec, seed);
    const BiorthoSystem sys = dual_system(draw.matrix);
    IdentityRow shared;
    shared.gram = gram_deviation(sys);
    for (std::size_t k = 0; k < n; ++k) {
      shared.dual_norm = std::max(shared.dual_norm, dual_norm_identity(sys, k).residual);
    }
    shared.resamples = draw.resamples;
    std::vector<IdentityRow> rows;
    for (std::size_t l : cfg.l_values) {
      IdentityRow row = shared;
      CounterRng rng(seed.with_stream(1000 + l));
      const Vector y = sample_sphere(rng, l);
      const ReducedResiduals rr = reduced_residuals(reduced_system(draw.matrix, l));
      const ReducedIdentities ids = verify_reduced_identities(draw.matrix, l, y);
      row.biorthogonality = rr.biorthogonality;
      row.membership = rr.membership;
      row.chain = ids.chain_residual();
      row.hilbert_schmidt = ids.hs_residual();
      row.operator_norm = ids.op_residual();
      rows.push_back(row);
    }
    return rows;
  });

  std::vector<IdentityRow> out;
  for (std::size_t c = 0; c < cfg.l_values.size(); ++c) {
    IdentityRow agg;
    agg.n = n;
    agg.l = cfg.l_values[c];
    agg.trials = cfg.trials;
    for (const auto& per_trial : trials) {
      const IdentityRow& r = per_trial[c];
      agg.gram = std::max(agg.gram, r.gram);
      agg.dual_norm = std::max(agg.dual_norm, r.dual_norm);
      agg.biorthogonality = std::max(agg.biorthogonality, r.biorthogonality);
      agg.membership = std::max(agg.membership, r.membership);
      agg.chain = std::max(agg.chain, r.chain);
      agg.hilbert_schmidt = std::max(agg.hilbert_schmidt, r.hilbert_schmidt);
      agg.operator_norm = std::max(agg.operator_norm, r.operator_norm);
      agg.resamples += r.resamples;
    }
    out.push_back(agg);
  }
  return out;
}

}  // namespace rmsv
