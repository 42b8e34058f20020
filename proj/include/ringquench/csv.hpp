// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file csv.hpp
 * @brief Numeric result tables with a '#'-prefixed metadata block.
 *
 *   # key = value
 *   t,J_B,J_B_avg
 *   0,0,0
 *
 * Values are written with 17 significant digits so that reading a file back
 * reproduces every double bit-exactly; nan and inf are written as such.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ringquench {

struct ResultTable {
  std::string name;  ///< file stem
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Throws ContractError if the row width differs from the column count.
  void add_row(std::vector<double> row);
  /// Throws ContractError for an unknown column.
  std::vector<double> column(const std::string& name) const;
};

std::string format_double(double v);

void write_csv(std::ostream& os, const ResultTable& table);
void write_csv_file(const std::string& path, const ResultTable& table);

/// Inverse of write_csv; ConfigError (with line number) on malformed input.
ResultTable read_csv(std::istream& is);
ResultTable read_csv_file(const std::string& path);

}  // namespace ringquench
