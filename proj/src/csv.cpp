// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

#include "ringquench/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ringquench/errors.hpp"

namespace ringquench {

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw ContractError("table " + name + ": row has " + std::to_string(row.size()) + " values for " +
                        std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::vector<double> ResultTable::column(const std::string& col) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] != col) continue;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
  throw ContractError("table " + name + " has no column '" + col + "'");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const ResultTable& table) {
  for (const auto& [k, v] : table.metadata) os << "# " << k << " = " << v << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
    os << '\n';
  }
}

void write_csv_file(const std::string& path, const ResultTable& table) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  write_csv(os, table);
  if (!os) throw ConfigError("write to '" + path + "' failed");
}

ResultTable read_csv(std::istream& is) {
  ResultTable t;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (header) throw ConfigError("metadata after the header row", lineno);
      const auto eq = line.find(" = ");
      if (eq == std::string::npos || eq < 2) throw ConfigError("malformed metadata line", lineno);
      t.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!header) {
      t.columns = cells;
      header = true;
      continue;
    }
    if (cells.size() != t.columns.size()) throw ConfigError("row width differs from header", lineno);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(c.c_str(), &end);
      if (c.empty() || *end != '\0') throw ConfigError("cannot read '" + c + "' as a number", lineno);
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (!header) throw ConfigError("missing header row");
  return t;
}

ResultTable read_csv_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open '" + path + "'");
  ResultTable t = read_csv(is);
  const auto slash = path.find_last_of('/');
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  if (auto dot = stem.rfind(".csv"); dot != std::string::npos) stem.erase(dot);
  t.name = stem;
  return t;
}

}  // namespace ringquench
