// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsv/ensembles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rmsv/errors.hpp"

namespace rmsv {

namespace {

constexpr std::size_t kMinSamples = 10'000;

void require_samples(std::size_t n, const char* who) {
  if (n < kMinSamples) {
    throw std::invalid_argument(std::string(who) + ": need at least 10000 samples, got " +
                                std::to_string(n));
  }
}

Vector draw_sample(const EntryDistribution& dist, std::size_t n, const SeedPath& seed) {
  return sample_vector(dist, n, seed);
}

}  // namespace

EntryDistribution EntryDistribution::lattice(int m) {
  if (m < 2) throw std::invalid_argument("lattice distribution needs at least 2 atoms");
  return {Kind::lattice, m};
}

double EntryDistribution::mean() const {
  // every kind is symmetric about zero
  return 0.0;
}

double EntryDistribution::variance() const {
  switch (kind) {
    case Kind::gaussian:
      return 1.0;
    case Kind::rademacher:
      return 0.5 * (1.0 * 1.0) + 0.5 * (-1.0 * -1.0);
    case Kind::uniform: {
      const double a = std::sqrt(3.0);
      return a * a / 3.0;
    }
    case Kind::lattice: {
      const double m = atoms;
      const double spacing = std::sqrt(12.0 / (m * m - 1.0));
      return spacing * spacing * (m * m - 1.0) / 12.0;
    }
  }
  return 1.0;
}

double EntryDistribution::sample(std::uint64_t bits1, std::uint64_t bits2) const {
  switch (kind) {
    case Kind::gaussian:
      return box_muller(bits1, bits2);
    case Kind::rademacher:
      return (bits1 >> 63) != 0 ? 1.0 : -1.0;
    case Kind::uniform:
      return (2.0 * to_unit(bits1) - 1.0) * std::sqrt(3.0);
    case Kind::lattice: {
      const double m = atoms;
      const auto idx = std::min<std::uint64_t>(
          static_cast<std::uint64_t>(to_unit(bits1) * m), static_cast<std::uint64_t>(atoms - 1));
      const double spacing = std::sqrt(12.0 / (m * m - 1.0));
      return (static_cast<double>(idx) - 0.5 * (m - 1.0)) * spacing;
    }
  }
  return 0.0;
}

EntryDistribution parse_distribution(std::string_view name) {
  if (name == "gaussian") return EntryDistribution::gaussian();
  if (name == "rademacher") return EntryDistribution::rademacher();
  if (name == "uniform") return EntryDistribution::uniform();
  if (name.starts_with("lattice:")) {
    const std::string_view digits = name.substr(8);
    int m = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || m < 2) {
      throw std::invalid_argument("bad lattice atom count in '" + std::string(name) + "'");
    }
    return EntryDistribution::lattice(m);
  }
  throw std::invalid_argument("unknown distribution kind '" + std::string(name) +
                              "' (expected gaussian, rademacher, uniform or lattice:m)");
}

std::string to_string(const EntryDistribution& dist) {
  switch (dist.kind) {
    case EntryDistribution::Kind::gaussian:
      return "gaussian";
    case EntryDistribution::Kind::rademacher:
      return "rademacher";
    case EntryDistribution::Kind::uniform:
      return "uniform";
    case EntryDistribution::Kind::lattice:
      return "lattice:" + std::to_string(dist.atoms);
  }
  return "unknown";
}

void EnsembleSpec::validate() const {
  if (cols < 1 || rows < cols) {
    throw std::invalid_argument("ensemble shape must satisfy n >= m >= 1, got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (!(psi2_bound > 0.0)) throw std::invalid_argument("psi2 bound K must be positive");
  if (!(conc_scale >= 0.0) || !(conc_level >= 0.0)) {
    throw std::invalid_argument("concentration scale s and level p must be non-negative");
  }
  if (dist.kind == EntryDistribution::Kind::lattice && dist.atoms < 2) {
    throw std::invalid_argument("lattice distribution needs at least 2 atoms");
  }
}

double sample_entry(const EntryDistribution& dist, const SeedPath& seed, std::size_t i,
                    std::size_t j) {
  const std::uint64_t key = seed.key();
  return dist.sample(bits_at(key, i, j, 0), bits_at(key, i, j, 1));
}

DenseMatrix sample_matrix(const EntryDistribution& dist, std::size_t rows, std::size_t cols,
                          const SeedPath& seed) {
  const std::uint64_t key = seed.key();
  std::vector<double> entries(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      entries[i * cols + j] = dist.sample(bits_at(key, i, j, 0), bits_at(key, i, j, 1));
    }
  }
  return DenseMatrix(rows, cols, std::move(entries));
}

DenseMatrix sample_matrix(const EnsembleSpec& spec, const SeedPath& seed) {
  spec.validate();
  return sample_matrix(spec.dist, spec.rows, spec.cols, seed);
}

Vector sample_vector(const EntryDistribution& dist, std::size_t n, const SeedPath& seed) {
  const std::uint64_t key = seed.key();
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = dist.sample(bits_at(key, i, 0, 0), bits_at(key, i, 0, 1));
  }
  return out;
}

double psi_norm(std::span<const double> sample, double theta) {
  if (sample.empty()) throw std::invalid_argument("psi_norm: empty sample");
  if (!(theta > 0.0)) throw std::invalid_argument("psi_norm: theta must be positive");
  auto mean_moment = [&](double lambda) {
    double s = 0.0;
    if (theta == 2.0) {
      for (double z : sample) s += std::exp((z / lambda) * (z / lambda));
    } else {
      for (double z : sample) s += std::exp(std::pow(std::abs(z) / lambda, theta));
    }
    return s / static_cast<double>(sample.size());
  };
  double lo = 1e-3;
  double hi = 1e3;
  if (mean_moment(hi) > 2.0) {
    throw NumericalError(
        "psi_norm: empirical moment stays above 2 for lambda up to 1e3; the sample looks "
        "heavier-tailed than psi_theta, try a smaller theta (e.g. psi_1)");
  }
  if (mean_moment(lo) <= 2.0) return lo;
  for (int it = 0; it < 60; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mean_moment(mid) <= 2.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double psi2_estimate(const EntryDistribution& dist, std::size_t n_samples, const SeedPath& seed,
                     double theta) {
  require_samples(n_samples, "psi2_estimate");
  const Vector sample = draw_sample(dist, n_samples, seed);
  return psi_norm(sample, theta);
}

double levy_concentration_sorted(std::span<const double> sorted, double t) {
  if (sorted.empty()) throw std::invalid_argument("levy_concentration: empty sample");
  if (!(t >= 0.0)) throw std::invalid_argument("levy_concentration: t must be non-negative");
  const double width = 2.0 * t;
  std::size_t best = 0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < sorted.size(); ++lo) {
    if (hi < lo) hi = lo;
    while (hi < sorted.size() && sorted[hi] - sorted[lo] <= width) ++hi;
    best = std::max(best, hi - lo);
  }
  return static_cast<double>(best) / static_cast<double>(sorted.size());
}

double levy_concentration(std::span<const double> sample, double t) {
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  return levy_concentration_sorted(sorted, t);
}

double levy_concentration(const EntryDistribution& dist, double t, std::size_t n_samples,
                          const SeedPath& seed) {
  require_samples(n_samples, "levy_concentration");
  return levy_concentration(draw_sample(dist, n_samples, seed), t);
}

AssumptionReport validate_assumption(const EnsembleSpec& spec, double s0, std::size_t n_samples,
                                     const SeedPath& seed) {
  spec.validate();
  if (!(s0 > 0.0)) throw std::invalid_argument("validate_assumption: s0 must be positive");
  require_samples(n_samples, "validate_assumption");

  Vector sample = draw_sample(spec.dist, n_samples, seed);
  const double n = static_cast<double>(n_samples);

  AssumptionReport report;
  double sum = 0.0;
  for (double z : sample) sum += z;
  report.sample_mean = sum / n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double z : sample) {
    const double d = z - report.sample_mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  report.sample_variance = m2 / (n - 1.0);
  const double fourth = m4 / n;

  // 3σ bands around the target moments 0 and 1
  report.mean_ok = std::abs(report.sample_mean) <= 3.0 * std::sqrt(1.0 / n);
  const double var_sd = std::sqrt(std::max(fourth - 1.0, 0.0) / n);
  report.var_ok = std::abs(report.sample_variance - 1.0) <= 3.0 * var_sd + 1.0 / n;

  report.psi2 = psi_norm(sample, 2.0);
  report.psi2_ok = report.psi2 <= 1.1 * spec.psi2_bound;

  std::sort(sample.begin(), sample.end());
  for (int i = 0; i < 20; ++i) {
    const double s = s0 * std::ldexp(1.0, -i);
    if (levy_concentration_sorted(sample, s) <= spec.conc_level * s) {
      report.witness_s = s;
      break;
    }
  }
  report.conc_ok = report.witness_s.has_value();
  return report;
}

}  // namespace rmsv
