// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>

namespace rmsv {

struct Interval {
  double low;
  double high;
};

/// Exact two-sided binomial interval at level 1 - alpha.
/// Requires trials >= 1 and successes <= trials.
Interval clopper_pearson(std::size_t successes, std::size_t trials, double alpha = 0.05);

/// Linear-interpolation sample quantile (R type 7); q in [0, 1], non-empty input.
double quantile(std::span<const double> values, double q);
double median(std::span<const double> values);

struct LineFit {
  double slope;
  double intercept;
};

/// Ordinary least squares y = slope·x + intercept; needs two distinct x.
LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

}  // namespace rmsv
