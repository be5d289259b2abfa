#include "kdvbbm/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kdvbbm/errors.hpp"

#ifndef KDVBBM_BUILD_TAG
#define KDVBBM_BUILD_TAG "kdvbbm-unknown"
#endif

namespace kdvbbm::cli {

void CsvTable::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw ShapeError("CSV row has " + std::to_string(row.size()) + " cells, header has " +
                     std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

namespace {

std::string format_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

}  // namespace

std::string render_csv(const CsvTable& table, const std::string& hash) {
  std::ostringstream os;
  os << "# schema=" << kCsvSchema << "\n# config_hash=" << hash << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << "\n";
  }
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table,
               const std::string& hash) {
  write_atomic(path, render_csv(table, hash));
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  write_atomic(path, doc.dump(2) + "\n");
}

const char* build_tag() noexcept { return KDVBBM_BUILD_TAG; }

}  // namespace kdvbbm::cli
