#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "kdvbbm/dynamics.hpp"
#include "kdvbbm/errors.hpp"
#include "kdvbbm/grid.hpp"
#include "kdvbbm/params.hpp"

namespace kdvbbm::cli {

using json = nlohmann::json;

/// Invalid configuration value; `field` is the dotted path of the entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Annotated configuration document with every key the commands read.
json default_config();

/// Merges `patch` into `base` recursively; keys absent from the defaults are
/// rejected with ConfigError.
void merge_config(json& base, const json& patch, const std::string& prefix = "");

json load_config_file(const std::filesystem::path& path);

/// Applies "a.b.c=VALUE". VALUE is parsed as JSON, falling back to a plain
/// string when it is not valid JSON.
void apply_override(json& config, const std::string& assignment);

/// FNV-1a 64-bit hash of the compact dump, as 16 hex digits. The output
/// directory and worker count are left out since they do not change results.
std::string config_hash(const json& config);

/// Typed access with the dotted path in error messages.
double get_number(const json& config, const std::string& path);
std::int64_t get_integer(const json& config, const std::string& path);
bool get_bool(const json& config, const std::string& path);
std::string get_string(const json& config, const std::string& path);
std::vector<double> get_number_list(const json& config, const std::string& path);

ModelParams model_from_config(const json& config);
PeriodicGrid grid_from_config(const json& config, const std::string& block = "grid");
EvolutionConfig evolution_from_config(const json& config);

/// Initial datum described by the "initial" block on the given grid.
Spectrum initial_from_config(const json& config, const PeriodicGrid& grid);

}  // namespace kdvbbm::cli
