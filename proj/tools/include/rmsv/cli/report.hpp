// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rmsv/experiments.hpp"

namespace rmsv::cli {

using Cell = std::variant<std::uint64_t, double, std::string, bool>;

/// A flat table plus report-level fields. CSV carries the table only; JSON
/// carries {"records": [...], <extras>..., "manifest": {...}}.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> records;
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();
  nlohmann::ordered_json manifest = nlohmann::ordered_json::object();
};

std::string render_csv(const Report& report);
std::string render_json(const Report& report);
std::string render(const Report& report, OutputFormat format);

/// Writes to a sibling temporary file and renames it over `path`, so a
/// failed run never leaves a partial file. Throws std::runtime_error when
/// the directory is not writable.
void write_atomically(const std::filesystem::path& path, const std::string& content);

void emit_report(const Report& report, OutputFormat format, const std::filesystem::path& path);

// Column sets shared by the subcommands.
extern const std::vector<std::string> kScalingColumns;
extern const std::vector<std::string> kTailColumns;

std::vector<Cell> tail_record(const TailEstimate& e);

}  // namespace rmsv::cli
