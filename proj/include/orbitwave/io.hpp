#pragma once

// Table output shared by the CLI: CSV (one header row, %.11e floats, LF) and
// JSON (config + meta + columns + rows), written through a temp file and an
// atomic rename.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>  // vendored nlohmann::json

namespace orbitwave::io {

struct Table {
  std::vector<std::string> columns;
  std::vector<bool> integer_column;  // rendered without exponent; empty = all floats
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table: row width mismatch");
    rows.push_back(std::move(row));
  }
  bool is_integer(std::size_t c) const { return c < integer_column.size() && integer_column[c]; }
};

inline std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (t.is_integer(c)) out += std::to_string(static_cast<long long>(std::llround(row[c])));
      else out += format_float(row[c]);
    }
    out += '\n';
  }
  return out;
}

inline std::string to_json(const Table& t, const nlohmann::ordered_json& config, const nlohmann::ordered_json& meta) {
  nlohmann::ordered_json j;
  j["config"] = config;
  j["meta"] = meta;
  j["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (t.is_integer(c)) r.push_back(static_cast<long long>(std::llround(row[c])));
      else if (std::isfinite(row[c])) r.push_back(row[c]);
      else r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

/// Writes `content` to `path` via a sibling temp file and rename, so readers
/// never observe a partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::random_device rd;
  const auto tmp = fs::path(path.string() + ".tmp-" + std::to_string(rd()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + path.string());
  }
}

}  // namespace orbitwave::io
