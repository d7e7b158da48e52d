// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsv/statistics.hpp"

#include <algorithm>
#include <boost/math/distributions/beta.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rmsv {

Interval clopper_pearson(std::size_t successes, std::size_t trials, double alpha) {
  if (trials == 0) throw std::invalid_argument("clopper_pearson: trials must be positive");
  if (successes > trials) throw std::invalid_argument("clopper_pearson: successes exceed trials");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("clopper_pearson: alpha must be in (0, 1)");
  const auto x = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  Interval ci{0.0, 1.0};
  if (successes > 0) {
    ci.low = boost::math::quantile(boost::math::beta_distribution<double>(x, n - x + 1.0), alpha / 2.0);
  }
  if (successes < trials) {
    ci.high =
        boost::math::quantile(boost::math::beta_distribution<double>(x + 1.0, n - x), 1.0 - alpha / 2.0);
  }
  return ci;
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q must be in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("least_squares_line: need two or more paired points");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares_line: x values are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace rmsv
