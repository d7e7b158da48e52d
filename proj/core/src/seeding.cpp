// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsv/seeding.hpp"

#include <cmath>
#include <numbers>

namespace rmsv {

double box_muller(std::uint64_t bits1, std::uint64_t bits2) noexcept {
  const double u1 = to_unit_open_low(bits1);
  const double u2 = to_unit(bits2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rmsv
