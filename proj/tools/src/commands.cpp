#include "kdvbbm/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "kdvbbm/cli/io.hpp"
#include "kdvbbm/estimates.hpp"
#include "kdvbbm/illposedness.hpp"
#include "kdvbbm/picard.hpp"
#include "kdvbbm/random_fields.hpp"
#include "kdvbbm/spectral.hpp"
#include "kdvbbm/splitting.hpp"

namespace kdvbbm::cli {

namespace fs = std::filesystem;

bool CommandResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

json CommandResult::summary(const std::string& command) const {
  json list = json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"status", c.passed ? "PASS" : "FAIL"},
                    {"value", c.value},
                    {"limit", c.limit}});
  }
  return {{"command", command},
          {"status", passed() ? "PASS" : "FAIL"},
          {"checks", list},
          {"details", details}};
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"simulate", "energy", "split",
                                              "illpose", "bounds", "picard-compare"};
  return names;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidParameter("slope fit needs two or more matching points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidParameter("slope fit needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

struct Context {
  const json& config;
  fs::path out;
  std::string hash;
  std::ostream& log;
};

json model_json(const ModelParams& p) {
  return {{"gamma1", p.gamma1()}, {"delta1", p.delta1()}, {"gamma2", p.gamma2()},
          {"delta2", p.delta2()}, {"gamma", p.gamma()},   {"hamiltonian", p.hamiltonian()}};
}

void write_metadata(const Context& ctx, const std::string& command, json extra) {
  const ModelParams params = model_from_config(ctx.config);
  json meta{{"command", command},
            {"config_hash", ctx.hash},
            {"build_tag", build_tag()},
            {"seed", ctx.config["seed"]},
            {"model", model_json(params)},
            {"kernel_cross_term_sign", kKernelCrossTermSign},
            {"csv_schema", kCsvSchema},
            {"config", ctx.config}};
  for (auto it = extra.begin(); it != extra.end(); ++it) meta[it.key()] = it.value();
  write_json(ctx.out / "metadata.json", meta);
}

CsvTable trajectory_table(const TrajectoryLedger& ledger) {
  CsvTable table;
  table.columns = {"t", "E"};
  for (const auto& [s, values] : ledger.hs_norms) {
    std::ostringstream name;
    name << "H" << s;
    table.columns.push_back(name.str());
  }
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    std::vector<Cell> row{ledger.times[i], ledger.energy[i]};
    for (const auto& entry : ledger.hs_norms) row.emplace_back(entry.second[i]);
    table.add(std::move(row));
  }
  return table;
}

json grid_json(const PeriodicGrid& g) { return {{"length", g.length()}, {"n", g.size()}}; }

json evolution_json(const EvolutionConfig& cfg) {
  return {{"dt", cfg.dt}, {"t_end", cfg.t_end}, {"dealias", to_string(cfg.dealias)},
          {"record_every", cfg.record_every}};
}

CommandResult simulate(const Context& ctx) {
  const ModelParams params = model_from_config(ctx.config);
  const PeriodicGrid grid = grid_from_config(ctx.config);
  const EvolutionConfig cfg = evolution_from_config(ctx.config);
  const Spectrum eta0 = initial_from_config(ctx.config, grid);
  ctx.log << "simulate: n=" << grid.size() << " steps=" << cfg.steps() << "\n";

  const TrajectoryLedger ledger = evolve(eta0, cfg, params);
  write_csv(ctx.out / "trajectory.csv", trajectory_table(ledger), ctx.hash);
  write_metadata(ctx, "simulate",
                 {{"grid", grid_json(grid)}, {"evolution", evolution_json(cfg)}});

  CommandResult result;
  const double drift = ledger.relative_energy_drift();
  result.details = {{"relative_energy_drift", drift}, {"records", ledger.size()}};
  if (params.hamiltonian()) {
    const double tol = get_number(ctx.config, "energy.drift_tol");
    result.checks.push_back({"energy_drift", drift < tol, drift, tol});
  }
  return result;
}

CommandResult energy_contrast(const Context& ctx) {
  const ModelParams params = model_from_config(ctx.config);
  const double contrast_g1 = get_number(ctx.config, "energy.contrast_gamma1");
  if (!(contrast_g1 > 0.0)) throw ConfigError("energy.contrast_gamma1", "must be > 0");
  const ModelParams contrast = make_params(contrast_g1, params.delta1());
  const PeriodicGrid grid = grid_from_config(ctx.config);
  const EvolutionConfig cfg = evolution_from_config(ctx.config);
  const Spectrum eta0 = initial_from_config(ctx.config, grid);
  ctx.log << "energy: n=" << grid.size() << " steps=" << cfg.steps() << " (two runs)\n";

  const TrajectoryLedger primary = evolve(eta0, cfg, params);
  const TrajectoryLedger secondary = evolve(eta0, cfg, contrast);
  write_csv(ctx.out / "trajectory.csv", trajectory_table(primary), ctx.hash);
  write_csv(ctx.out / "trajectory_contrast.csv", trajectory_table(secondary), ctx.hash);
  write_metadata(ctx, "energy",
                 {{"grid", grid_json(grid)},
                  {"evolution", evolution_json(cfg)},
                  {"contrast_model", model_json(contrast)}});

  CommandResult result;
  const double tol = get_number(ctx.config, "energy.drift_tol");
  const double floor = get_number(ctx.config, "energy.contrast_min");
  const double d1 = primary.relative_energy_drift();
  const double d2 = secondary.relative_energy_drift();
  result.checks.push_back({"energy_drift", params.hamiltonian() && d1 < tol, d1, tol});
  result.checks.push_back({"contrast_drift", !contrast.hamiltonian() && d2 > floor, d2, floor});
  result.details = {{"primary_drift", d1}, {"contrast_drift", d2}};
  return result;
}

CommandResult split(const Context& ctx) {
  const ModelParams params = model_from_config(ctx.config);
  const PeriodicGrid grid = grid_from_config(ctx.config);
  EvolutionConfig cfg = evolution_from_config(ctx.config);
  const Spectrum eta0 = initial_from_config(ctx.config, grid);
  const double s = get_number(ctx.config, "split.s");
  const double horizon = get_number(ctx.config, "split.T");
  const std::vector<double> cutoffs = get_number_list(ctx.config, "split.N");
  GlobalRunOptions options;
  options.step_constant = get_number(ctx.config, "split.step_constant");
  if (!(horizon > 0.0)) throw ConfigError("split.T", "must be > 0");
  if (cutoffs.empty()) throw ConfigError("split.N", "needs at least one cutoff");
  if (!params.hamiltonian()) throw ConfigError("model", "split requires gamma = 7/48");
  if (!(s >= 1.0 && s < 2.0)) throw ConfigError("split.s", "must satisfy 1 <= s < 2");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > 0.0) || cutoffs[i] > grid.max_frequency()) {
      throw ConfigError("split.N[" + std::to_string(i) + "]",
                        "must lie in (0, max grid frequency]");
    }
  }

  CsvTable scaling;
  scaling.columns = {"N", "t0", "steps", "max_h_H2", "max_abs_X", "sup_deviation"};
  std::vector<double> h_max, x_max;
  for (double N : cutoffs) {
    ctx.log << "split: N=" << N << "\n";
    const SplitLedger ledger = run_global(eta0, s, horizon, N, cfg, params, options);
    CsvTable steps;
    steps.columns = {"step", "t", "E_u", "X_k", "h_H1", "h_H2", "u_H2", "v_Hs"};
    double worst_x = 0.0;
    for (const auto& r : ledger.records) {
      steps.add({static_cast<long long>(r.step), r.time, r.energy_u, r.energy_increment,
                 r.h_h1, r.h_h2, r.u_h2, r.v_hs});
      worst_x = std::max(worst_x, std::abs(r.energy_increment));
    }
    CsvTable deviation;
    deviation.columns = {"t", "deviation_H2"};
    for (const auto& c : ledger.checkpoints) deviation.add({c.time, c.deviation});
    std::ostringstream tag;
    tag << N;
    write_csv(ctx.out / ("split_N" + tag.str() + ".csv"), steps, ctx.hash);
    write_csv(ctx.out / ("deviation_N" + tag.str() + ".csv"), deviation, ctx.hash);
    scaling.add({N, ledger.t0, static_cast<long long>(ledger.size()), ledger.max_h_h2(),
                 worst_x, ledger.sup_deviation(horizon)});
    h_max.push_back(ledger.max_h_h2());
    x_max.push_back(worst_x);
  }
  write_csv(ctx.out / "scaling.csv", scaling, ctx.hash);
  write_metadata(ctx, "split",
                 {{"grid", grid_json(grid)}, {"evolution", evolution_json(cfg)}});

  CommandResult result;
  if (cutoffs.size() >= 2) {
    const double slope = loglog_slope(cutoffs, h_max);
    const double tol = get_number(ctx.config, "split.slope_tol");
    result.checks.push_back({"h_H2_slope", std::abs(slope - (s - 3.0)) <= tol, slope, s - 3.0});
    const double C = cutoffs.front() * x_max.front();
    bool ok = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
      const double ratio = x_max[i] / (2.0 * C / cutoffs[i]);
      worst = std::max(worst, ratio);
      ok = ok && ratio <= 1.0;
    }
    result.checks.push_back({"energy_increment_bound", ok, worst, 1.0});
    result.details = {{"h_H2_slope", slope}, {"increment_constant", C}};
  }
  return result;
}

CommandResult illpose(const Context& ctx) {
  const ModelParams params = model_from_config(ctx.config);
  SweepConfig sweep;
  sweep.t = get_number(ctx.config, "illpose.t");
  sweep.s = get_number(ctx.config, "illpose.s");
  sweep.cutoffs = get_number_list(ctx.config, "illpose.N_list");
  sweep.epsilon = get_number(ctx.config, "illpose.epsilon");
  sweep.length = get_number(ctx.config, "illpose.length");
  sweep.dt = get_number(ctx.config, "illpose.dt");
  sweep.alpha = get_number(ctx.config, "illpose.alpha");
  sweep.run_extraction = get_bool(ctx.config, "illpose.extraction");
  sweep.richardson = get_bool(ctx.config, "illpose.richardson");
  sweep.floor_fraction = get_number(ctx.config, "illpose.floor_fraction");
  sweep.workers = static_cast<unsigned>(std::max<std::int64_t>(1, get_integer(ctx.config, "workers")));
  if (!(sweep.t > 0.0)) throw ConfigError("illpose.t", "must be > 0");
  if (sweep.cutoffs.empty()) throw ConfigError("illpose.N_list", "needs at least one N");
  if (!(sweep.epsilon > 0.0)) throw ConfigError("illpose.epsilon", "must be > 0");
  if (!(sweep.length > 0.0)) throw ConfigError("illpose.length", "must be > 0");
  if (!(sweep.dt > 0.0)) throw ConfigError("illpose.dt", "must be > 0");
  if (sweep.alpha < 0.0) throw ConfigError("illpose.alpha", "must be >= 0 (0 selects the default)");
  ctx.log << "illpose: " << sweep.cutoffs.size() << " cutoffs\n";

  const std::vector<SweepRow> rows = illposedness_sweep(params, sweep);
  CsvTable table;
  table.columns = {"N", "alpha", "t", "s", "data_norm", "I2_quad", "I2_extract",
                   "full_solution_norm", "verdict"};
  for (const auto& r : rows) {
    table.add({r.N, r.alpha, r.t, r.s, r.data_norm, r.i2_quadrature, r.i2_extraction,
               r.solution_norm, r.verdict});
  }
  write_csv(ctx.out / "sweep.csv", table, ctx.hash);
  const double C = resonance_constant(params);
  write_metadata(ctx, "illpose",
                 {{"resonance_constant", C},
                  {"alpha", rows.front().alpha},
                  {"epsilon", sweep.epsilon},
                  {"dt", sweep.dt},
                  {"dealias", to_string(Dealias::pad_double)}});

  CommandResult result;
  json errors = json::array();
  for (const auto& r : rows) {
    if (!r.error.empty()) errors.push_back({{"N", r.N}, {"error", r.error}});
  }
  result.checks.push_back({"rows_without_error", errors.empty(),
                           static_cast<double>(errors.size()), 0.0});
  result.details = {{"resonance_constant", C}, {"errors", errors}};
  if (!errors.empty() || rows.size() < 2) return result;

  std::vector<double> N, data, quad, sol;
  for (const auto& r : rows) {
    N.push_back(r.N);
    data.push_back(r.data_norm);
    quad.push_back(r.i2_quadrature);
    sol.push_back(r.solution_norm);
  }
  const double slope = loglog_slope(N, data);
  if (sweep.s < 1.0) {
    result.checks.push_back(
        {"data_norm_slope", std::abs(slope - (sweep.s - 1.0)) <= 0.1, slope, sweep.s - 1.0});
    const double q = *std::min_element(quad.begin(), quad.end()) / quad.front();
    result.checks.push_back({"I2_floor", q >= 0.5, q, 0.5});
    if (sweep.run_extraction) {
      const double f = *std::min_element(sol.begin(), sol.end()) / sol.front();
      result.checks.push_back({"solution_floor", f >= sweep.floor_fraction, f,
                               sweep.floor_fraction});
    }
  } else {
    const double f = *std::min_element(data.begin(), data.end()) / data.front();
    result.checks.push_back({"control_data_norm", f >= 0.5, f, 0.5});
  }
  result.details["data_norm_slope"] = slope;
  return result;
}

CommandResult bounds(const Context& ctx) {
  const ModelParams params = model_from_config(ctx.config);
  const double s = get_number(ctx.config, "bounds.s");
  ProbeOptions options;
  const std::int64_t ensemble = get_integer(ctx.config, "bounds.ensemble");
  if (ensemble < 1) throw ConfigError("bounds.ensemble", "must be >= 1");
  options.ensemble = static_cast<std::size_t>(ensemble);
  options.ladder.clear();
  const std::vector<double> ladder = get_number_list(ctx.config, "bounds.ladder");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const auto n = static_cast<std::int64_t>(ladder[i]);
    if (static_cast<double>(n) != ladder[i] || n < 4 || (n & (n - 1)) != 0) {
      throw ConfigError("bounds.ladder[" + std::to_string(i) + "]",
                        "must be a power of two >= 4");
    }
    options.ladder.push_back(static_cast<std::size_t>(n));
  }
  if (options.ladder.empty()) throw ConfigError("bounds.ladder", "needs at least one size");
  options.length = get_number(ctx.config, "bounds.length");
  options.seed = static_cast<std::uint64_t>(get_integer(ctx.config, "seed"));
  options.allow_out_of_theorem = get_bool(ctx.config, "bounds.allow_out_of_theorem");
  options.growth_factor = get_number(ctx.config, "bounds.growth_factor");
  options.workers = static_cast<unsigned>(std::max<std::int64_t>(1, get_integer(ctx.config, "workers")));
  if (!std::isfinite(s) || s < 0.0) throw ConfigError("bounds.s", "must be >= 0");

  std::vector<Estimate> ids;
  std::vector<std::string> skipped;
  const json& listed = ctx.config["bounds"]["estimates"];
  if (!listed.is_array()) throw ConfigError("bounds.estimates", "expected a list of names");
  if (listed.empty()) {
    for (Estimate id : all_estimates()) {
      if (s >= threshold(id) || options.allow_out_of_theorem) {
        ids.push_back(id);
      } else {
        skipped.push_back(to_string(id));
      }
    }
  } else {
    for (std::size_t i = 0; i < listed.size(); ++i) {
      const std::string field = "bounds.estimates[" + std::to_string(i) + "]";
      if (!listed[i].is_string()) throw ConfigError(field, "expected a name");
      try {
        ids.push_back(estimate_from_string(listed[i].get<std::string>()));
      } catch (const InvalidParameter& e) {
        throw ConfigError(field, e.what());
      }
    }
  }

  CommandResult result;
  CsvTable table;
  table.columns = {"estimate", "s", "n", "max_ratio", "bounded", "out_of_theorem"};
  json reports = json::array();
  for (Estimate id : ids) {
    ctx.log << "bounds: " << to_string(id) << "\n";
    const ProbeReport r = probe_estimate(id, s, params, options);
    for (std::size_t j = 0; j < r.resolutions.size(); ++j) {
      table.add({to_string(id), s, static_cast<long long>(r.resolutions[j]), r.max_ratio[j],
                 static_cast<long long>(r.bounded), static_cast<long long>(r.out_of_theorem)});
    }
    reports.push_back({{"estimate", to_string(id)},
                       {"s", r.s},
                       {"ensemble", r.ensemble},
                       {"resolutions", r.resolutions},
                       {"max_ratio", r.max_ratio},
                       {"seed", r.seed},
                       {"out_of_theorem", r.out_of_theorem},
                       {"worst_growth", r.worst_growth()},
                       {"verdict", r.bounded ? "PASS" : "FAIL"}});
    result.checks.push_back(
        {to_string(id) + "_bounded", r.bounded, r.worst_growth(), options.growth_factor});
  }

  const SymbolBounds sym = probe_symbol_bounds(params);
  const auto sup_json = [](const SymbolSupremum& b) {
    return json{{"value", b.maximum.value},
                {"argmax", std::isfinite(b.maximum.argmax) ? json(b.maximum.argmax) : json("inf")},
                {"limit", b.limit}};
  };
  const json symbols{{"sup_xi_tau", sup_json(sym.xi_tau)},
                     {"sup_xi_psi", sup_json(sym.xi_psi)},
                     {"sup_weighted_psi", sup_json(sym.weighted_psi)}};
  result.checks.push_back({"symbol_suprema_finite",
                           std::isfinite(sym.xi_tau.maximum.value) &&
                               std::isfinite(sym.xi_psi.maximum.value) &&
                               std::isfinite(sym.weighted_psi.maximum.value),
                           sym.weighted_psi.maximum.value, 0.0});
  write_csv(ctx.out / "probes.csv", table, ctx.hash);
  write_json(ctx.out / "probes.json", {{"reports", reports}, {"symbols", symbols},
                                       {"skipped", skipped}});
  write_metadata(ctx, "bounds", {{"ensemble", options.ensemble}, {"ladder", options.ladder},
                                 {"length", options.length}});
  result.details = {{"symbols", symbols}, {"skipped", skipped}};
  return result;
}

CommandResult picard_compare(const Context& ctx) {
  const ModelParams params = model_from_config(ctx.config);
  const PeriodicGrid grid = grid_from_config(ctx.config);
  EvolutionConfig base = evolution_from_config(ctx.config);
  const double c_s = get_number(ctx.config, "picard.c_s");
  const double h1 = get_number(ctx.config, "picard.h1_norm");
  const double fraction = get_number(ctx.config, "picard.fraction");
  if (!(c_s > 0.0)) throw ConfigError("picard.c_s", "must be > 0");
  if (!(h1 > 0.0)) throw ConfigError("picard.h1_norm", "must be > 0");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("picard.fraction", "must lie in (0, 1]");
  const Spectrum eta0 =
      normalized(initial_from_config(ctx.config, grid), SobolevIndex(1.0), h1);

  PicardOptions options;
  const double existence = local_existence_time(eta0, SobolevIndex(1.0), c_s);
  options.horizon = fraction * existence;
  options.mesh = static_cast<int>(get_integer(ctx.config, "picard.mesh"));
  options.tol = get_number(ctx.config, "picard.tol");
  options.max_iter = static_cast<int>(get_integer(ctx.config, "picard.max_iter"));
  options.dealias = base.dealias;
  options.existence_constant = c_s;
  if (options.mesh < 1) throw ConfigError("picard.mesh", "must be >= 1");
  if (!(options.tol > 0.0)) throw ConfigError("picard.tol", "must be > 0");
  ctx.log << "picard-compare: T=" << options.horizon << "\n";
  const PicardResult picard = picard_solve(eta0, options, params);

  EvolutionConfig cfg = base;
  const auto per_interval = static_cast<std::size_t>(std::max(
      picard.mesh == 1 ? 2.0 : 1.0, std::ceil(options.horizon / picard.mesh / base.dt)));
  cfg.dt = options.horizon / static_cast<double>(picard.mesh * per_interval);
  cfg.t_end = options.horizon;
  cfg.record_every = per_interval;
  cfg.store_snapshots = true;
  const TrajectoryLedger ref = evolve(eta0, cfg, params);

  CsvTable table;
  table.columns = {"t", "H1_picard", "H1_evolve", "H1_difference"};
  double worst = 0.0;
  const std::size_t count = std::min(ref.snapshots.size(), picard.ledger.snapshots.size());
  for (std::size_t i = 0; i < count; ++i) {
    const double d = sobolev_norm(ref.snapshots[i] - picard.ledger.snapshots[i], SobolevIndex(1.0));
    worst = std::max(worst, d);
    table.add({picard.ledger.times[i], sobolev_norm(picard.ledger.snapshots[i], SobolevIndex(1.0)),
               sobolev_norm(ref.snapshots[i], SobolevIndex(1.0)), d});
  }
  write_csv(ctx.out / "picard.csv", table, ctx.hash);
  write_metadata(ctx, "picard-compare",
                 {{"grid", grid_json(grid)},
                  {"existence_time", existence},
                  {"horizon", options.horizon},
                  {"mesh", picard.mesh},
                  {"iterations", picard.iterations},
                  {"evolve_dt", cfg.dt},
                  {"dealias", to_string(cfg.dealias)}});

  CommandResult result;
  const double tol = get_number(ctx.config, "picard.agreement_tol");
  result.checks.push_back({"sup_H1_agreement", count == picard.ledger.snapshots.size() && worst < tol,
                           worst, tol});
  result.details = {{"horizon", options.horizon},
                    {"mesh", picard.mesh},
                    {"iterations", picard.iterations},
                    {"defects", picard.defects}};
  return result;
}

}  // namespace

CommandResult run_command(const std::string& name, const json& config, std::ostream& log) {
  const fs::path out = get_string(config, "output");
  const Context ctx{config, out, config_hash(config), log};
  CommandResult result;
  if (name == "simulate") {
    result = simulate(ctx);
  } else if (name == "energy") {
    result = energy_contrast(ctx);
  } else if (name == "split") {
    result = split(ctx);
  } else if (name == "illpose") {
    result = illpose(ctx);
  } else if (name == "bounds") {
    result = bounds(ctx);
  } else if (name == "picard-compare") {
    result = picard_compare(ctx);
  } else {
    throw ConfigError("<command>", "unknown command '" + name + "'");
  }
  write_json(out / "summary.json", result.summary(name));
  return result;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laboratory for the fifth-order KdV-BBM equation", "kdvbbm"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::int64_t seed = 0;
  std::int64_t workers = 0;
  bool print_config = false;

  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--override", overrides, "KEY=VALUE with a dotted key and a JSON value");
    sub->add_flag("--print-config", print_config, "Print the merged configuration and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();

  json config = default_config();
  try {
    if (!config_path.empty()) merge_config(config, load_config_file(config_path));
    for (const auto& o : overrides) apply_override(config, o);
    if (sub->count("--out") > 0) config["output"] = out_dir;
    if (sub->count("--seed") > 0) config["seed"] = seed;
    if (sub->count("--workers") > 0) config["workers"] = workers;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (print_config) {
    out << config.dump(2) << "\n";
    return kExitOk;
  }

  try {
    const CommandResult result = run_command(command, config, err);
    for (const auto& c : result.checks) {
      out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": value=" << c.value
          << " limit=" << c.limit << "\n";
    }
    return result.passed() ? kExitOk : kExitCheckFailed;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidCutoff& e) {
    err << "invalid cutoff: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ResolutionError& e) {
    err << "resolution error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace kdvbbm::cli
