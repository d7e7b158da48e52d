// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rmsv/cli/config.hpp"
#include "rmsv/cli/report.hpp"

namespace rmsv::cli {

enum class Subcommand {
  verify,
  scaling,
  tail,
  sandwich,
  minsv,
  distance,
  probe,
  net,
  validate_ensemble,
  rectangular,
};

Subcommand parse_subcommand(std::string_view name);
std::string_view to_string(Subcommand cmd);

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;

/// Largest tolerated s_j(A) - s_j(J) in the augmentation check.
inline constexpr double kInterlacingSlack = 1e-9;

struct RunManifest {
  std::string subcommand;
  std::string version;
  std::uint64_t master_seed = 0;
  std::string config;  ///< canonical config text, including scheduling keys
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;
  std::size_t resamples = 0;
  int exit_code = kExitOk;
  std::vector<std::string> failures;  ///< one line per failed assertion
};

std::string tool_version();

/// Runs the subcommand and returns its report without writing anything.
/// `manifest` receives resample counts and assertion failures.
/// Config problems throw ConfigError or std::invalid_argument.
Report build_report(Subcommand cmd, const RunConfig& cfg, RunManifest& manifest);

/// build_report plus output: the report goes to cfg.experiment.output_path
/// (or `out` when the path is empty) and, for file output, a sidecar
/// `<path>.manifest.json` records timing and the file list.
RunManifest run(Subcommand cmd, const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Full command line entry point; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rmsv::cli
