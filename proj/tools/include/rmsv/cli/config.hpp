// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rmsv/experiments.hpp"

namespace rmsv::cli {

/// gaussian, 64 × 64, 100 trials, seed 0, lists empty (subcommand defaults).
inline ExperimentConfig default_experiment() {
  ExperimentConfig e;
  e.spec.rows = 64;
  e.spec.cols = 64;
  return e;
}

/// Everything a subcommand needs. `experiment` holds the fields shared by
/// all experiments; the rest are per-subcommand knobs with documented
/// defaults.
struct RunConfig {
  ExperimentConfig experiment = default_experiment();
  std::size_t workers = 1;
  double tolerance = 1e-8;

  double c1 = 1.0;        // tail, rectangular
  double c_low = 0.05;    // sandwich
  double c_high = 20.0;   // sandwich; "inf" accepted
  std::size_t distance_m = 16;
  double distance_shift = 0.0;  // v = shift·(1, ..., 1)/sqrt(N)
  std::size_t augment_k = 0;    // rectangular: A is n × (n-k)
  std::size_t net_budget = 100000;
  std::size_t net_probes = 10000;
  ProbeMode probe_mode = ProbeMode::sum;
  std::size_t probe_dim = 100;
  std::size_t probe_rank = 4;
  std::string probe_matrix = "identity";  // identity | coordinate | gaussian
  double probe_s = 1.0;
  double probe_t = 0.1;
  double validate_s0 = 1.0;
  std::size_t validate_samples = 1000000;

  bool operator==(const RunConfig&) const = default;
};

/// Parse failure located at a key and line (line 0 means a flag).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, std::size_t line, const std::string& message);
  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

/// Line-oriented sectioned key-value text:
///
///   # comment
///   [ensemble]
///   kind = gaussian
///   n = 64
///   [run]
///   trials = 10
///   seed = 1
///   l = 1, 2, 4
///
/// Keys before the first header may use the qualified form `section.key`,
/// any [run] key unqualified, or the shorthands `ensemble` (ensemble.kind)
/// and `n` (ensemble.n). Unknown sections or keys are rejected.
RunConfig parse_config(std::string_view text);

/// Applies one `section.key = value` assignment to cfg; `line` is only used
/// for error reporting.
void apply_setting(RunConfig& cfg, std::string_view qualified_key, std::string_view value,
                   std::size_t line);

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);

/// Canonical form without the keys that do not affect results (workers and
/// the output path), so it can be embedded in reports that must not depend
/// on them.
std::string emit_config_deterministic(const RunConfig& cfg);

/// Checks cross-field invariants (spec shape, l range, ...).
void validate(const RunConfig& cfg);

}  // namespace rmsv::cli
