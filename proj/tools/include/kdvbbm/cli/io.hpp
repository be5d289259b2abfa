#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace kdvbbm::cli {

using Cell = std::variant<double, long long, std::string>;

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws ShapeError when the row width does not match the header.
  void add(std::vector<Cell> row);
};

inline constexpr int kCsvSchema = 1;

/// Text of the table: "# schema=1", "# config_hash=<hash>", the header and
/// one line per row. Doubles use %.17g, so output is bit-reproducible.
std::string render_csv(const CsvTable& table, const std::string& hash);

/// Writes through a temporary file in the same directory and renames it over
/// `path`, creating parent directories as needed.
void write_atomic(const std::filesystem::path& path, const std::string& text);
void write_csv(const std::filesystem::path& path, const CsvTable& table,
               const std::string& hash);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

const char* build_tag() noexcept;

}  // namespace kdvbbm::cli
