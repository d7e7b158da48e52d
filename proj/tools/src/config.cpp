// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsv/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "rmsv/cli/format.hpp"

namespace rmsv::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  while (true) {
    const auto comma = value.find(',');
    items.push_back(trim(value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return items;
}

template <typename T>
T parse_integer(std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw std::invalid_argument("expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

double parse_real(std::string_view v) {
  if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty() || std::isnan(out)) {
    throw std::invalid_argument("expected a real number, got '" + std::string(v) + "'");
  }
  return out;
}

std::size_t parse_count(std::string_view v) { return parse_integer<std::size_t>(v); }

std::size_t parse_positive(std::string_view v) {
  const std::size_t n = parse_count(v);
  if (n == 0) throw std::invalid_argument("must be >= 1");
  return n;
}

double parse_nonnegative(std::string_view v) {
  const double x = parse_real(v);
  if (!(x >= 0.0)) throw std::invalid_argument("must be >= 0");
  return x;
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view v, Parse&& parse) {
  std::vector<T> out;
  if (trim(v).empty()) return out;
  for (std::string_view item : split_list(v)) out.push_back(parse(item));
  return out;
}

template <typename T, typename Show>
std::string show_list(const std::vector<T>& values, Show&& show) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += show(values[i]);
  }
  return out;
}

std::string show_size(std::size_t v) { return std::to_string(v); }

struct Field {
  std::string_view section;
  std::string_view key;
  bool run_local;  // excluded from the deterministic echo
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"ensemble", "kind", false,
       [](RunConfig& c, std::string_view v) { c.experiment.spec.dist = parse_distribution(v); },
       [](const RunConfig& c) { return to_string(c.experiment.spec.dist); }},
      {"ensemble", "n", false,
       [](RunConfig& c, std::string_view v) { c.experiment.spec.rows = parse_positive(v); },
       [](const RunConfig& c) { return show_size(c.experiment.spec.rows); }},
      {"ensemble", "cols", false,
       [](RunConfig& c, std::string_view v) { c.experiment.spec.cols = parse_positive(v); },
       [](const RunConfig& c) { return show_size(c.experiment.spec.cols); }},
      {"ensemble", "psi2_bound", false,
       [](RunConfig& c, std::string_view v) { c.experiment.spec.psi2_bound = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.experiment.spec.psi2_bound); }},
      {"ensemble", "conc_scale", false,
       [](RunConfig& c, std::string_view v) { c.experiment.spec.conc_scale = parse_nonnegative(v); },
       [](const RunConfig& c) { return format_real(c.experiment.spec.conc_scale); }},
      {"ensemble", "conc_level", false,
       [](RunConfig& c, std::string_view v) { c.experiment.spec.conc_level = parse_nonnegative(v); },
       [](const RunConfig& c) { return format_real(c.experiment.spec.conc_level); }},

      {"run", "trials", false,
       [](RunConfig& c, std::string_view v) { c.experiment.trials = parse_positive(v); },
       [](const RunConfig& c) { return show_size(c.experiment.trials); }},
      {"run", "seed", false,
       [](RunConfig& c, std::string_view v) { c.experiment.master_seed = parse_integer<std::uint64_t>(v); },
       [](const RunConfig& c) { return std::to_string(c.experiment.master_seed); }},
      {"run", "workers", true,
       [](RunConfig& c, std::string_view v) { c.workers = parse_positive(v); },
       [](const RunConfig& c) { return show_size(c.workers); }},
      {"run", "l", false,
       [](RunConfig& c, std::string_view v) { c.experiment.l_values = parse_list<std::size_t>(v, parse_positive); },
       [](const RunConfig& c) { return show_list(c.experiment.l_values, show_size); }},
      {"run", "t", false,
       [](RunConfig& c, std::string_view v) { c.experiment.t_values = parse_list<double>(v, parse_real); },
       [](const RunConfig& c) { return show_list(c.experiment.t_values, format_real); }},
      {"run", "eps", false,
       [](RunConfig& c, std::string_view v) { c.experiment.eps_values = parse_list<double>(v, parse_nonnegative); },
       [](const RunConfig& c) { return show_list(c.experiment.eps_values, format_real); }},
      {"run", "tolerance", false,
       [](RunConfig& c, std::string_view v) {
         c.tolerance = parse_real(v);
         if (!(c.tolerance > 0.0)) throw std::invalid_argument("must be > 0");
       },
       [](const RunConfig& c) { return format_real(c.tolerance); }},
      {"run", "out", true,
       [](RunConfig& c, std::string_view v) { c.experiment.output_path = std::string(v); },
       [](const RunConfig& c) { return c.experiment.output_path; }},
      {"run", "format", false,
       [](RunConfig& c, std::string_view v) { c.experiment.format = parse_format(v); },
       [](const RunConfig& c) { return std::string(to_string(c.experiment.format)); }},

      {"tail", "c1", false,
       [](RunConfig& c, std::string_view v) {
         c.c1 = parse_real(v);
         if (!(c.c1 > 0.0) || std::isinf(c.c1)) throw std::invalid_argument("must be finite and > 0");
       },
       [](const RunConfig& c) { return format_real(c.c1); }},
      {"sandwich", "c_low", false,
       [](RunConfig& c, std::string_view v) { c.c_low = parse_nonnegative(v); },
       [](const RunConfig& c) { return format_real(c.c_low); }},
      {"sandwich", "c_high", false,
       [](RunConfig& c, std::string_view v) { c.c_high = parse_nonnegative(v); },
       [](const RunConfig& c) { return format_real(c.c_high); }},
      {"distance", "m", false,
       [](RunConfig& c, std::string_view v) { c.distance_m = parse_positive(v); },
       [](const RunConfig& c) { return show_size(c.distance_m); }},
      {"distance", "shift", false,
       [](RunConfig& c, std::string_view v) { c.distance_shift = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.distance_shift); }},
      {"rectangular", "k", false,
       [](RunConfig& c, std::string_view v) { c.augment_k = parse_count(v); },
       [](const RunConfig& c) { return show_size(c.augment_k); }},
      {"net", "budget", false,
       [](RunConfig& c, std::string_view v) { c.net_budget = parse_positive(v); },
       [](const RunConfig& c) { return show_size(c.net_budget); }},
      {"net", "probes", false,
       [](RunConfig& c, std::string_view v) { c.net_probes = parse_positive(v); },
       [](const RunConfig& c) { return show_size(c.net_probes); }},
      {"probe", "mode", false,
       [](RunConfig& c, std::string_view v) { c.probe_mode = parse_probe_mode(v); },
       [](const RunConfig& c) { return to_string(c.probe_mode); }},
      {"probe", "dim", false,
       [](RunConfig& c, std::string_view v) { c.probe_dim = parse_positive(v); },
       [](const RunConfig& c) { return show_size(c.probe_dim); }},
      {"probe", "rank", false,
       [](RunConfig& c, std::string_view v) { c.probe_rank = parse_positive(v); },
       [](const RunConfig& c) { return show_size(c.probe_rank); }},
      {"probe", "matrix", false,
       [](RunConfig& c, std::string_view v) {
         if (v != "identity" && v != "coordinate" && v != "gaussian") {
           throw std::invalid_argument("expected identity, coordinate or gaussian");
         }
         c.probe_matrix = std::string(v);
       },
       [](const RunConfig& c) { return c.probe_matrix; }},
      {"probe", "s", false,
       [](RunConfig& c, std::string_view v) { c.probe_s = parse_nonnegative(v); },
       [](const RunConfig& c) { return format_real(c.probe_s); }},
      {"probe", "t", false,
       [](RunConfig& c, std::string_view v) { c.probe_t = parse_nonnegative(v); },
       [](const RunConfig& c) { return format_real(c.probe_t); }},
      {"validate", "s0", false,
       [](RunConfig& c, std::string_view v) {
         c.validate_s0 = parse_real(v);
         if (!(c.validate_s0 > 0.0)) throw std::invalid_argument("must be > 0");
       },
       [](const RunConfig& c) { return format_real(c.validate_s0); }},
      {"validate", "samples", false,
       [](RunConfig& c, std::string_view v) { c.validate_samples = parse_positive(v); },
       [](const RunConfig& c) { return show_size(c.validate_samples); }},
  };
  return table;
}

const Field* find_field(std::string_view section, std::string_view key) {
  for (const Field& f : fields()) {
    if (f.section == section && f.key == key) return &f;
  }
  return nullptr;
}

std::string emit(const RunConfig& cfg, bool include_local) {
  std::ostringstream out;
  std::string_view section;
  for (const Field& f : fields()) {
    if (f.run_local && !include_local) continue;
    if (f.section != section) {
      if (!section.empty()) out << '\n';
      section = f.section;
      out << '[' << section << "]\n";
    }
    out << f.key << " = " << f.get(cfg) << '\n';
  }
  return out.str();
}

}  // namespace

ConfigError::ConfigError(std::string key, std::size_t line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : "key '" + key + "': ") + message),
      key_(std::move(key)),
      line_(line) {}

void apply_setting(RunConfig& cfg, std::string_view qualified_key, std::string_view value,
                   std::size_t line) {
  const auto dot = qualified_key.find('.');
  const Field* f = nullptr;
  if (dot != std::string_view::npos) {
    f = find_field(qualified_key.substr(0, dot), qualified_key.substr(dot + 1));
  }
  if (f == nullptr) throw ConfigError(std::string(qualified_key), line, "unknown key");
  try {
    f->set(cfg, value);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string(qualified_key), line, e.what());
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  bool cols_given = false;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("", line_no, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      bool known = false;
      for (const Field& f : fields()) known = known || f.section == section;
      if (!known) throw ConfigError(section, line_no, "unknown section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) throw ConfigError("", line_no, "empty key");

    std::string qualified;
    if (!section.empty()) {
      qualified = section + "." + key;
    } else if (key.find('.') != std::string::npos) {
      qualified = key;
    } else if (key == "ensemble") {
      qualified = "ensemble.kind";
    } else if (key == "n") {
      qualified = "ensemble.n";
    } else {
      qualified = "run." + key;
    }
    if (qualified == "ensemble.cols") cols_given = true;
    apply_setting(cfg, qualified, value, line_no);
  }
  if (!cols_given) cfg.experiment.spec.cols = cfg.experiment.spec.rows;
  return cfg;
}

std::string emit_config(const RunConfig& cfg) { return emit(cfg, true); }

std::string emit_config_deterministic(const RunConfig& cfg) { return emit(cfg, false); }

void validate(const RunConfig& cfg) {
  try {
    cfg.experiment.spec.validate();
  } catch (const std::exception& e) {
    throw ConfigError("ensemble", 0, e.what());
  }
  for (std::size_t l : cfg.experiment.l_values) {
    if (l > cfg.experiment.spec.rows) {
      throw ConfigError("run.l", 0, "l = " + std::to_string(l) + " exceeds n = " +
                                        std::to_string(cfg.experiment.spec.rows));
    }
  }
  if (!(cfg.c_low < cfg.c_high)) throw ConfigError("sandwich.c_low", 0, "c_low must be < c_high");
}

}  // namespace rmsv::cli
