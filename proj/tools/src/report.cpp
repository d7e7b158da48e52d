// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsv/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "rmsv/cli/format.hpp"

namespace rmsv::cli {

const std::vector<std::string> kScalingColumns = {"n", "l", "trials", "median_sv", "ratio", "q25", "q75"};
const std::vector<std::string> kTailColumns = {"n",      "l",      "t",       "successes", "trials",
                                               "point",  "ci_low", "ci_high", "resamples"};

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("format must be csv or json, got '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

namespace {

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string quoted = "\"";
      for (char ch : v) {
        if (ch == '"') quoted += '"';
        quoted += ch;
      }
      return quoted + '"';
    }
  };
  return std::visit(Visitor{}, c);
}

// Non-finite reals become the same strings CSV uses; JSON has no literal for them.
nlohmann::ordered_json json_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c); d != nullptr && !std::isfinite(*d)) {
    return format_real(*d);
  }
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

}  // namespace

std::string render_csv(const Report& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += report.columns[i];
  }
  out += '\n';
  for (const auto& rec : report.records) {
    if (rec.size() != report.columns.size()) throw std::logic_error("render_csv: ragged record");
    for (std::size_t i = 0; i < rec.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_cell(rec[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Report& report) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& rec : report.records) {
    if (rec.size() != report.columns.size()) throw std::logic_error("render_json: ragged record");
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < rec.size(); ++i) obj[report.columns[i]] = json_cell(rec[i]);
    doc["records"].push_back(std::move(obj));
  }
  for (const auto& [key, value] : report.extras.items()) doc[key] = value;
  doc["manifest"] = report.manifest;
  return doc.dump(2) + "\n";
}

std::string render(const Report& report, OutputFormat format) {
  return format == OutputFormat::csv ? render_csv(report) : render_json(report);
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                             ec.message());
  }
}

void emit_report(const Report& report, OutputFormat format, const std::filesystem::path& path) {
  write_atomically(path, render(report, format));
}

std::vector<Cell> tail_record(const TailEstimate& e) {
  return {std::uint64_t{e.n},         std::uint64_t{e.l}, e.t,       std::uint64_t{e.successes},
          std::uint64_t{e.trials},    e.point,            e.ci_low,  e.ci_high,
          std::uint64_t{e.resamples}};
}

}  // namespace rmsv::cli
