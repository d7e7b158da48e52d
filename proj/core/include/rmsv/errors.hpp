// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rmsv {

/// Shapes of the operands do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method ran out of iterations.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Columns are linearly dependent up to the rank tolerance.
class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(const std::string& what, std::size_t numerical_rank)
      : std::runtime_error(what), numerical_rank_(numerical_rank) {}

  std::size_t numerical_rank() const noexcept { return numerical_rank_; }

 private:
  std::size_t numerical_rank_;
};

/// A linear system is singular or too ill-conditioned to solve reliably.
class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}

  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace rmsv
