#include "kdvbbm/cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kdvbbm/random_fields.hpp"
#include "kdvbbm/spectral.hpp"

namespace kdvbbm::cli {

ConfigError::ConfigError(std::string field, const std::string& message)
    : Error(field + ": " + message), field_(std::move(field)) {}

json default_config() {
  const double pi = std::numbers::pi;
  return json{
      {"seed", 1},
      {"output", "out"},
      {"workers", 1},
      {"model", {{"gamma1", 1.0 / 12.0}, {"delta1", 1.0 / 12.0}}},
      {"grid", {{"length", 64.0 * pi}, {"n", 2048}}},
      {"evolution",
       {{"dt", 1e-3}, {"t_end", 1.0}, {"dealias", "pad_double"}, {"record_every", 10}}},
      {"initial",
       {{"kind", "bumps"},
        {"norm_s", 2.0},
        {"norm", 1.0},
        {"decay", 3.0},
        {"bumps", 12},
        {"spread", 60.0},
        {"width_lo", 1.0},
        {"width_hi", 4.0}}},
      {"energy", {{"contrast_gamma1", 1.0 / 6.0}, {"drift_tol", 1e-8}, {"contrast_min", 1e-4}}},
      {"split",
       {{"s", 1.5},
        {"N", json::array({8, 16, 32, 64})},
        {"T", 1.0},
        {"step_constant", 1.0},
        {"slope_tol", 0.7}}},
      {"illpose",
       {{"t", 0.5},
        {"s", 0.5},
        {"N_list", json::array({16, 32, 64, 128})},
        {"epsilon", 1e-3},
        {"length", 64.0 * pi},
        {"dt", 1e-3},
        {"alpha", 0.0},
        {"extraction", true},
        {"richardson", true},
        {"floor_fraction", 0.25}}},
      {"bounds",
       {{"s", 1.0},
        {"ensemble", 200},
        {"ladder", json::array({256, 512, 1024, 2048})},
        {"length", 16.0 * pi},
        {"estimates", json::array()},
        {"allow_out_of_theorem", false},
        {"growth_factor", 1.2}}},
      {"picard",
       {{"c_s", 0.1},
        {"h1_norm", 0.5},
        {"fraction", 0.5},
        {"mesh", 16},
        {"tol", 1e-8},
        {"max_iter", 50},
        {"agreement_tol", 1e-6}}},
  };
}

void merge_config(json& base, const json& patch, const std::string& prefix) {
  if (!patch.is_object()) throw ConfigError(prefix.empty() ? "<root>" : prefix, "expected an object");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError(path, "unknown key");
    json& slot = base[it.key()];
    if (slot.is_object()) {
      merge_config(slot, it.value(), path);
    } else {
      slot = it.value();
    }
  }
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
}

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--override", "expected KEY=VALUE, got '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json patch = value;
  std::string rest = key;
  std::vector<std::string> parts;
  for (std::size_t pos; (pos = rest.find('.')) != std::string::npos;) {
    parts.push_back(rest.substr(0, pos));
    rest = rest.substr(pos + 1);
  }
  parts.push_back(rest);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (it->empty()) throw ConfigError(key, "empty path component");
    patch = json{{*it, patch}};
  }
  merge_config(config, patch);
}

std::string config_hash(const json& config) {
  json content = config;
  if (content.is_object()) {
    content.erase("output");
    content.erase("workers");
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : content.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

const json& lookup(const json& config, const std::string& path) {
  const json* node = &config;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string part = path.substr(start, dot - start);
    if (!node->is_object() || !node->contains(part)) throw ConfigError(path, "missing");
    node = &(*node)[part];
    if (dot == std::string::npos) return *node;
    start = dot + 1;
  }
}

}  // namespace

double get_number(const json& config, const std::string& path) {
  const json& v = lookup(config, path);
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& config, const std::string& path) {
  const json& v = lookup(config, path);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == static_cast<double>(static_cast<std::int64_t>(d))) {
      return static_cast<std::int64_t>(d);
    }
  }
  throw ConfigError(path, "expected an integer");
}

bool get_bool(const json& config, const std::string& path) {
  const json& v = lookup(config, path);
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& config, const std::string& path) {
  const json& v = lookup(config, path);
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_number_list(const json& config, const std::string& path) {
  const json& v = lookup(config, path);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(path, "expected a number or a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

ModelParams model_from_config(const json& config) {
  const double g1 = get_number(config, "model.gamma1");
  const double d1 = get_number(config, "model.delta1");
  if (!(g1 > 0.0)) throw ConfigError("model.gamma1", "must be > 0");
  if (!(d1 > 0.0)) throw ConfigError("model.delta1", "must be > 0");
  return make_params(g1, d1);
}

PeriodicGrid grid_from_config(const json& config, const std::string& block) {
  const double length = get_number(config, block + ".length");
  const std::int64_t n = get_integer(config, block + ".n");
  if (!(length > 0.0)) throw ConfigError(block + ".length", "must be > 0");
  if (n < 4 || (n & (n - 1)) != 0) {
    throw ConfigError(block + ".n", "must be a power of two >= 4");
  }
  return PeriodicGrid(length, static_cast<std::size_t>(n));
}

EvolutionConfig evolution_from_config(const json& config) {
  EvolutionConfig cfg;
  cfg.dt = get_number(config, "evolution.dt");
  cfg.t_end = get_number(config, "evolution.t_end");
  const std::int64_t every = get_integer(config, "evolution.record_every");
  if (!(cfg.dt > 0.0)) throw ConfigError("evolution.dt", "must be > 0");
  if (!(cfg.t_end > cfg.dt)) throw ConfigError("evolution.t_end", "must exceed dt");
  if (every < 1) throw ConfigError("evolution.record_every", "must be >= 1");
  cfg.record_every = static_cast<std::size_t>(every);
  try {
    cfg.dealias = dealias_from_string(get_string(config, "evolution.dealias"));
    cfg.validate();
    (void)cfg.steps();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("evolution", e.what());
  }
  return cfg;
}

Spectrum initial_from_config(const json& config, const PeriodicGrid& grid) {
  const std::string kind = get_string(config, "initial.kind");
  const auto seed = static_cast<std::uint64_t>(get_integer(config, "seed"));
  const double norm_s = get_number(config, "initial.norm_s");
  const double norm = get_number(config, "initial.norm");
  if (!(norm > 0.0)) throw ConfigError("initial.norm", "must be > 0");
  Spectrum raw(grid);
  if (kind == "bumps") {
    const std::int64_t bumps = get_integer(config, "initial.bumps");
    if (bumps < 1) throw ConfigError("initial.bumps", "must be >= 1");
    raw = transform(random_bumps(grid, static_cast<int>(bumps),
                                 get_number(config, "initial.spread"),
                                 get_number(config, "initial.width_lo"),
                                 get_number(config, "initial.width_hi"), seed));
  } else if (kind == "gaussian") {
    raw = random_gaussian_spectrum(grid, get_number(config, "initial.decay"),
                                   grid.max_frequency(), seed);
  } else if (kind == "phase") {
    raw = random_phase_spectrum(grid, get_number(config, "initial.decay"),
                                grid.max_frequency(), seed);
  } else {
    throw ConfigError("initial.kind", "expected bumps, gaussian or phase, got '" + kind + "'");
  }
  return normalized(without_nyquist(raw), SobolevIndex(norm_s), norm);
}

}  // namespace kdvbbm::cli
