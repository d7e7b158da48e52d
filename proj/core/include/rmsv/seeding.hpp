// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace rmsv {

/// SplitMix64 output function: a bijective 64-bit avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Folds one more coordinate into a hash state.
constexpr std::uint64_t fold64(std::uint64_t state, std::uint64_t value) noexcept {
  return mix64(state ^ mix64(value + 0x9e3779b97f4a7c15ull));
}

/// Coordinates of a random stream: (master seed, trial, stream tag, attempt).
/// Every value drawn under a path is a pure function of the path and of the
/// element indices, so trials can run in any order on any number of workers.
struct SeedPath {
  std::uint64_t master_seed = 0;
  std::uint64_t trial = 0;
  std::uint64_t stream = 0;   ///< distinguishes independent objects within a trial
  std::uint64_t attempt = 0;  ///< bumped when a draw is rejected and resampled

  SeedPath with_trial(std::uint64_t t) const noexcept { return {master_seed, t, stream, 0}; }
  SeedPath with_stream(std::uint64_t s) const noexcept { return {master_seed, trial, s, attempt}; }
  SeedPath next_attempt() const noexcept { return {master_seed, trial, stream, attempt + 1}; }

  std::uint64_t key() const noexcept {
    std::uint64_t h = mix64(master_seed ^ 0x6a09e667f3bcc909ull);
    h = fold64(h, trial);
    h = fold64(h, stream);
    return fold64(h, attempt);
  }

  bool operator==(const SeedPath&) const = default;
};

/// 64 random bits at element (i, j), slot `slot`, of the stream with `key`.
constexpr std::uint64_t bits_at(std::uint64_t key, std::uint64_t i, std::uint64_t j,
                                std::uint64_t slot) noexcept {
  return fold64(fold64(fold64(key, i), j), slot);
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1].
constexpr double to_unit_open_low(std::uint64_t bits) noexcept {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal via the Box-Muller cosine branch from two bit words.
double box_muller(std::uint64_t bits1, std::uint64_t bits2) noexcept;

/// Sequential counter-based generator over one key, for code that consumes
/// a variable number of draws (sphere sampling, rejection loops).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}
  explicit CounterRng(const SeedPath& path) noexcept : key_(path.key()) {}

  std::uint64_t next() noexcept { return fold64(key_, counter_++); }
  double uniform() noexcept { return to_unit(next()); }
  double gaussian() noexcept {
    const std::uint64_t a = next();
    return box_muller(a, next());
  }
  std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rmsv
