// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "rmsv/experiments.hpp"

namespace rmsv::cli {

/// Shortest text that parses back to the same double; "inf", "-inf", "nan"
/// for non-finite values.
std::string format_real(double x);

OutputFormat parse_format(std::string_view name);
std::string_view to_string(OutputFormat format);

}  // namespace rmsv::cli
