// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsv/cli/run.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "rmsv/cli/format.hpp"
#include "rmsv/errors.hpp"
#include "rmsv/linalg.hpp"
#include "rmsv/nets.hpp"

#ifndef RMSV_VERSION
#define RMSV_VERSION "0.0.0"
#endif

namespace rmsv::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::pair<Subcommand, std::string_view> kNames[] = {
    {Subcommand::verify, "verify"},
    {Subcommand::scaling, "scaling"},
    {Subcommand::tail, "tail"},
    {Subcommand::sandwich, "sandwich"},
    {Subcommand::minsv, "minsv"},
    {Subcommand::distance, "distance"},
    {Subcommand::probe, "probe"},
    {Subcommand::net, "net"},
    {Subcommand::validate_ensemble, "validate-ensemble"},
    {Subcommand::rectangular, "rectangular"},
};

Json real_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <typename T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? std::move(fallback) : given;
}

std::size_t clamp_l(std::size_t l, std::size_t n) { return std::clamp<std::size_t>(l, 1, n); }

ExperimentConfig square_experiment(const RunConfig& cfg, std::string_view who) {
  ExperimentConfig e = cfg.experiment;
  if (!e.spec.square()) {
    throw ConfigError("ensemble.cols", 0, std::string(who) + " needs a square ensemble (cols = n)");
  }
  return e;
}

// --- per-subcommand reports ------------------------------------------------

Report verify_report(const RunConfig& cfg, const Executor& exec, RunManifest& manifest) {
  ExperimentConfig e = square_experiment(cfg, "verify");
  const std::size_t n = e.spec.rows;
  if (n < 2) throw ConfigError("ensemble.n", 0, "verify needs n >= 2");
  if (e.l_values.empty()) {
    std::set<std::size_t> ls{1, n / 4, n / 2, n - 1};
    ls.erase(0);
    e.l_values.assign(ls.begin(), ls.end());
  }
  const auto rows = identity_suite(e, exec);

  Report r;
  r.columns = {"n", "l", "trials", "gram", "dual_norm", "biorthogonality", "membership",
               "chain", "hilbert_schmidt", "operator_norm", "resamples"};
  for (const IdentityRow& row : rows) {
    r.records.push_back({std::uint64_t{row.n}, std::uint64_t{row.l}, std::uint64_t{row.trials},
                         row.gram, row.dual_norm, row.biorthogonality, row.membership, row.chain,
                         row.hilbert_schmidt, row.operator_norm, std::uint64_t{row.resamples}});
    manifest.resamples += row.resamples;
    if (!(row.max_residual() <= cfg.tolerance)) {
      manifest.failures.push_back("verify: n = " + std::to_string(n) + ", l = " + std::to_string(row.l) +
                                  ": max residual " + format_real(row.max_residual()) +
                                  " above tolerance " + format_real(cfg.tolerance));
    }
  }
  r.extras["tolerance"] = cfg.tolerance;
  return r;
}

Report scaling_report(const RunConfig& cfg, const Executor& exec, RunManifest& manifest) {
  ExperimentConfig e = square_experiment(cfg, "scaling");
  if (e.l_values.empty()) {
    for (std::size_t l = 1; l <= e.spec.rows; l *= 2) e.l_values.push_back(l);
  }
  const ScalingReport rep = scaling_experiment(e, exec);
  Report r;
  r.columns = kScalingColumns;
  for (const ScalingRow& row : rep.rows) {
    r.records.push_back({std::uint64_t{rep.n}, std::uint64_t{row.l}, std::uint64_t{row.trials},
                         row.median_sv, row.ratio, row.q25, row.q75});
  }
  r.extras["loglog_slope"] = real_or_null(rep.loglog_slope);
  r.extras["loglog_intercept"] = real_or_null(rep.loglog_intercept);
  r.extras["resamples"] = rep.resamples;
  manifest.resamples += rep.resamples;
  return r;
}

Report tail_report(const RunConfig& cfg, const Executor& exec, RunManifest& manifest) {
  ExperimentConfig e = square_experiment(cfg, "tail");
  const std::size_t n = e.spec.rows;
  e.t_values = or_default(e.t_values, {2.0, 3.0, 4.0, 5.0, 6.0});
  const auto ls = or_default(e.l_values, {clamp_l(4, n)});
  Report r;
  r.columns = kTailColumns;
  Json fits = Json::array();
  for (std::size_t l : ls) {
    const TailReport rep = tail_experiment(e, l, cfg.c1, exec);
    for (const TailEstimate& est : rep.estimates) r.records.push_back(tail_record(est));
    fits.push_back({{"l", l}, {"fitted_c2", rep.fitted_c2 ? Json(*rep.fitted_c2) : Json(nullptr)}});
    if (!rep.estimates.empty()) manifest.resamples += rep.estimates.front().resamples;
  }
  r.extras["c1"] = cfg.c1;
  r.extras["fits"] = std::move(fits);
  return r;
}

Report sandwich_report(const RunConfig& cfg, const Executor& exec, RunManifest& manifest) {
  ExperimentConfig e = square_experiment(cfg, "sandwich");
  const auto ls = or_default(e.l_values, {clamp_l(8, e.spec.rows)});
  Report r;
  r.columns = {"n", "l", "c_low", "c_high", "successes", "trials", "point", "ci_low", "ci_high", "resamples"};
  for (std::size_t l : ls) {
    const SandwichEstimate s = sandwich_experiment(e, l, cfg.c_low, cfg.c_high, exec);
    const TailEstimate& t = s.estimate;
    r.records.push_back({std::uint64_t{t.n}, std::uint64_t{t.l}, s.c_low, s.c_high,
                         std::uint64_t{t.successes}, std::uint64_t{t.trials}, t.point, t.ci_low,
                         t.ci_high, std::uint64_t{t.resamples}});
    manifest.resamples += t.resamples;
  }
  return r;
}

Report minsv_report(const RunConfig& cfg, const Executor& exec, RunManifest&) {
  ExperimentConfig e = cfg.experiment;
  e.eps_values = or_default(e.eps_values, {0.0, 0.1, 0.5, 1.0});
  Report r;
  r.columns = kTailColumns;
  for (const TailEstimate& est : minsv_lowerbound_experiment(e, exec)) r.records.push_back(tail_record(est));
  return r;
}

Report distance_report(const RunConfig& cfg, const Executor& exec, RunManifest& manifest) {
  ExperimentConfig e = cfg.experiment;
  e.eps_values = or_default(e.eps_values, {0.0, 0.1, 0.5});
  const std::size_t big_n = e.spec.rows;
  Vector shift;
  if (cfg.distance_shift != 0.0) {
    shift.assign(big_n, cfg.distance_shift / std::sqrt(static_cast<double>(big_n)));
  }
  const DistanceReport rep = distance_experiment(e, cfg.distance_m, shift, exec);
  Report r;
  r.columns = kTailColumns;
  for (const TailEstimate& est : rep.estimates) r.records.push_back(tail_record(est));
  r.extras["median_ratio"] = rep.median_ratio;
  r.extras["shift"] = cfg.distance_shift;
  r.extras["resamples"] = rep.resamples;
  manifest.resamples += rep.resamples;
  return r;
}

Report rectangular_report(const RunConfig& cfg, const Executor& exec, RunManifest& manifest) {
  ExperimentConfig e = cfg.experiment;
  const std::size_t n = e.spec.rows;
  const std::size_t k = cfg.augment_k;
  if (k >= n) throw ConfigError("rectangular.k", 0, "k must be < n");
  e.spec.cols = n - k;
  e.t_values = or_default(e.t_values, {2.0, 3.0, 4.0, 5.0, 6.0});
  const auto ls = or_default(e.l_values, {k + 1});
  e.l_values.clear();

  Report r;
  r.columns = {"n", "k", "l", "t", "matrix", "successes", "trials", "point", "ci_low", "ci_high"};
  double violation = 0.0;
  for (std::size_t l : ls) {
    const RectangularReport rep = rectangular_experiment(e, l, cfg.c1, exec);
    violation = std::max(violation, rep.max_interlacing_violation);
    auto add = [&](const std::vector<TailEstimate>& ests, const char* which) {
      for (const TailEstimate& t : ests) {
        r.records.push_back({std::uint64_t{n}, std::uint64_t{k}, std::uint64_t{l}, t.t, std::string(which),
                             std::uint64_t{t.successes}, std::uint64_t{t.trials}, t.point, t.ci_low,
                             t.ci_high});
      }
    };
    add(rep.estimates, "A");
    add(rep.augmented, "J");
  }
  r.extras["max_interlacing_violation"] = violation;
  if (violation > kInterlacingSlack) {
    manifest.failures.push_back("rectangular: interlacing violated by " + format_real(violation));
  }
  return r;
}

DenseMatrix probe_operator(const RunConfig& cfg) {
  const std::size_t dim = cfg.probe_dim;
  const std::size_t rank = std::min(cfg.probe_rank, dim);
  const SeedPath fixed{cfg.experiment.master_seed, 0, 7, 0};
  if (cfg.probe_mode == ProbeMode::projection) {
    if (cfg.probe_matrix == "identity") return DenseMatrix::identity(dim);
    DenseMatrix basis(dim, rank);
    if (cfg.probe_matrix == "coordinate") {
      for (std::size_t i = 0; i < rank; ++i) basis(i, i) = 1.0;
    } else {
      basis = sample_matrix(EntryDistribution{}, dim, rank, fixed);
    }
    return projector(orthonormal_basis(basis)).matrix;
  }
  if (cfg.probe_matrix == "identity") return DenseMatrix::identity(dim);
  if (cfg.probe_matrix == "coordinate") {
    DenseMatrix d(rank, dim);
    for (std::size_t i = 0; i < rank; ++i) d(i, i) = 1.0;
    return d;
  }
  return (1.0 / std::sqrt(static_cast<double>(dim))) * sample_matrix(EntryDistribution{}, rank, dim, fixed);
}

Report probe_report(const RunConfig& cfg, const Executor& exec, RunManifest&) {
  ProbeConfig p;
  p.mode = cfg.probe_mode;
  p.dist = cfg.experiment.spec.dist;
  p.trials = cfg.experiment.trials;
  p.master_seed = cfg.experiment.master_seed;
  p.t = cfg.probe_t;
  p.s = cfg.probe_s;
  p.product_cols = cfg.probe_rank;
  if (p.mode == ProbeMode::sum) {
    p.coefficients.assign(cfg.probe_dim, 1.0 / std::sqrt(static_cast<double>(cfg.probe_dim)));
  } else {
    p.matrix = probe_operator(cfg);
  }
  const ProbeReport rep = concentration_probe(p, exec);
  const TailEstimate& t = rep.estimate;
  Report r;
  r.columns = {"mode", "n", "l", "t", "radius", "successes", "trials", "point", "ci_low", "ci_high"};
  r.records.push_back({to_string(rep.mode), std::uint64_t{t.n}, std::uint64_t{t.l}, t.t, rep.radius,
                       std::uint64_t{t.successes}, std::uint64_t{t.trials}, t.point, t.ci_low, t.ci_high});
  r.extras["quantile_levels"] = rep.quantile_levels;
  r.extras["quantiles"] = rep.quantiles;
  if (rep.mode == ProbeMode::projection || rep.mode == ProbeMode::anisotropic) {
    r.extras["centers"] = kProbeCenters;
    r.extras["note"] = "best-center estimate over finitely many centers: a lower bound on the supremum";
  }
  return r;
}

Report net_report(const RunConfig& cfg, const Executor&, RunManifest& manifest) {
  const auto ls = or_default(cfg.experiment.l_values, {2});
  const auto epss = or_default(cfg.experiment.eps_values, {0.5});
  const std::size_t width = *std::max_element(ls.begin(), ls.end());
  Report r;
  r.columns = {"l", "eps", "index"};
  for (std::size_t i = 1; i <= width; ++i) r.columns.push_back("x" + std::to_string(i));
  Json nets = Json::array();
  std::uint64_t id = 0;
  for (std::size_t l : ls) {
    for (double eps : epss) {
      const SeedPath seed{cfg.experiment.master_seed, id++, 0, 0};
      const EpsNet net = build_net(l, eps, seed, cfg.net_budget);
      const double cover = covering_check(net, cfg.net_probes, seed.with_stream(1));
      for (std::size_t p = 0; p < net.points.size(); ++p) {
        std::vector<Cell> rec = {std::uint64_t{l}, eps, std::uint64_t{p}};
        for (std::size_t i = 0; i < width; ++i) {
          rec.push_back(i < l ? Cell{net.points[p][i]} : Cell{std::string()});
        }
        r.records.push_back(std::move(rec));
      }
      nets.push_back({{"l", l},
                      {"eps", eps},
                      {"size", net.points.size()},
                      {"cardinality_bound", cardinality_bound(l, eps)},
                      {"rejection_streak", net.rejection_streak},
                      {"candidates", net.candidates_drawn},
                      {"covering", cover},
                      {"covered", cover <= eps}});
      if (cover > eps) {
        // statistical certificate: reported, not an assertion failure
        manifest.failures.push_back("note: net l = " + std::to_string(l) + ", eps = " + format_real(eps) +
                                    " has a probe at distance " + format_real(cover));
      }
    }
  }
  r.extras["nets"] = std::move(nets);
  return r;
}

Report validate_report(const RunConfig& cfg, const Executor&, RunManifest&) {
  const EnsembleSpec& spec = cfg.experiment.spec;
  const AssumptionReport a = validate_assumption(spec, cfg.validate_s0, cfg.validate_samples,
                                                 SeedPath{cfg.experiment.master_seed, 0, 0, 0});
  Report r;
  r.columns = {"kind", "samples", "sample_mean", "sample_variance", "psi2", "psi2_bound",
               "mean_ok", "var_ok", "psi2_ok", "conc_ok", "witness_s"};
  r.records.push_back({to_string(spec.dist), std::uint64_t{cfg.validate_samples}, a.sample_mean,
                       a.sample_variance, a.psi2, spec.psi2_bound, a.mean_ok, a.var_ok, a.psi2_ok,
                       a.conc_ok, a.witness_s.value_or(std::nan(""))});
  return r;
}

}  // namespace

Subcommand parse_subcommand(std::string_view name) {
  for (const auto& [cmd, text] : kNames) {
    if (text == name) return cmd;
  }
  throw ConfigError("subcommand", 0, "unknown subcommand '" + std::string(name) + "'");
}

std::string_view to_string(Subcommand cmd) {
  for (const auto& [c, text] : kNames) {
    if (c == cmd) return text;
  }
  return "unknown";
}

std::string tool_version() { return RMSV_VERSION; }

Report build_report(Subcommand cmd, const RunConfig& cfg, RunManifest& manifest) {
  validate(cfg);
  const Executor exec(cfg.workers);
  Report r;
  switch (cmd) {
    case Subcommand::verify: r = verify_report(cfg, exec, manifest); break;
    case Subcommand::scaling: r = scaling_report(cfg, exec, manifest); break;
    case Subcommand::tail: r = tail_report(cfg, exec, manifest); break;
    case Subcommand::sandwich: r = sandwich_report(cfg, exec, manifest); break;
    case Subcommand::minsv: r = minsv_report(cfg, exec, manifest); break;
    case Subcommand::distance: r = distance_report(cfg, exec, manifest); break;
    case Subcommand::probe: r = probe_report(cfg, exec, manifest); break;
    case Subcommand::net: r = net_report(cfg, exec, manifest); break;
    case Subcommand::validate_ensemble: r = validate_report(cfg, exec, manifest); break;
    case Subcommand::rectangular: r = rectangular_report(cfg, exec, manifest); break;
  }
  r.manifest = Json{{"tool", "rmsv"},
                    {"version", tool_version()},
                    {"subcommand", std::string(to_string(cmd))},
                    {"master_seed", cfg.experiment.master_seed},
                    {"config", emit_config_deterministic(cfg)},
                    {"resamples", manifest.resamples}};
  return r;
}

RunManifest run(Subcommand cmd, const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.subcommand = std::string(to_string(cmd));
  manifest.version = tool_version();
  manifest.master_seed = cfg.experiment.master_seed;
  manifest.config = emit_config(cfg);

  const Report report = build_report(cmd, cfg, manifest);
  bool asserted = false;
  for (const std::string& f : manifest.failures) {
    log << f << '\n';
    asserted = asserted || f.rfind("note:", 0) != 0;
  }
  manifest.exit_code = asserted ? kExitAssertion : kExitOk;

  const std::string& path = cfg.experiment.output_path;
  if (path.empty()) {
    out << render(report, cfg.experiment.format);
  } else {
    emit_report(report, cfg.experiment.format, path);
    manifest.outputs.push_back(path);
  }
  manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!path.empty()) {
    const Json side = {{"tool", "rmsv"},
                       {"version", manifest.version},
                       {"subcommand", manifest.subcommand},
                       {"master_seed", manifest.master_seed},
                       {"config", manifest.config},
                       {"wall_seconds", manifest.wall_seconds},
                       {"outputs", manifest.outputs},
                       {"output_format", std::string(to_string(cfg.experiment.format))},
                       {"resamples", manifest.resamples},
                       {"exit_code", manifest.exit_code},
                       {"failures", manifest.failures}};
    write_atomically(path + ".manifest.json", side.dump(2) + "\n");
  }
  return manifest;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo and identity checks for small singular values of random matrices", "rmsv"};
  app.set_version_flag("--version", tool_version());
  std::string subcommand;
  std::string config_path, seed, trials, n, l, t, ensemble, workers, out_path, format, tolerance;
  std::vector<std::string> settings;
  app.add_option("subcommand", subcommand,
                 "verify | scaling | tail | sandwich | minsv | distance | probe | net | "
                 "validate-ensemble | rectangular")
      ->required();
  app.add_option("--config", config_path, "sectioned key = value config file");
  app.add_option("--seed", seed, "master seed (u64)");
  app.add_option("--trials", trials, "number of trials");
  app.add_option("--n", n, "matrix size n");
  app.add_option("--l", l, "comma-separated l values");
  app.add_option("--t", t, "comma-separated t values");
  app.add_option("--ensemble", ensemble, "gaussian | rademacher | uniform | lattice:m");
  app.add_option("--workers", workers, "worker threads");
  app.add_option("--out", out_path, "output file (stdout when omitted)");
  app.add_option("--format", format, "csv | json");
  app.add_option("--tolerance", tolerance, "identity suite tolerance (default 1e-8)");
  app.add_option("--set", settings, "extra section.key=value assignment (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const Subcommand cmd = parse_subcommand(subcommand);
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("--config", 0, "cannot read " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        cfg = parse_config(buf.str());
      } catch (const ConfigError& e) {
        throw ConfigError(e.key(), e.line(), config_path + ": " + e.what());
      }
    }
    auto flag = [&](const std::string& value, const char* key) {
      if (!value.empty()) apply_setting(cfg, key, value, 0);
    };
    if (!n.empty()) {
      const bool square = cfg.experiment.spec.square();
      apply_setting(cfg, "ensemble.n", n, 0);
      if (square) cfg.experiment.spec.cols = cfg.experiment.spec.rows;
    }
    flag(seed, "run.seed");
    flag(trials, "run.trials");
    flag(l, "run.l");
    flag(t, "run.t");
    flag(ensemble, "ensemble.kind");
    flag(workers, "run.workers");
    flag(out_path, "run.out");
    flag(format, "run.format");
    flag(tolerance, "run.tolerance");
    for (const std::string& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError(s, 0, "--set expects section.key=value");
      apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1), 0);
    }
    const RunManifest m = run(cmd, cfg, out, err);
    return m.exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
}

}  // namespace rmsv::cli
