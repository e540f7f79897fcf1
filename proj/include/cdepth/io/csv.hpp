// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "cdepth/depth/sample.hpp"

namespace cdepth {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Comma separated, optional double quotes with "" escapes, CRLF tolerated.
CsvTable parse_csv(std::istream& in);
void write_csv(std::ostream& out, const CsvTable& table);
std::string csv_field(const std::string& s);
// %.17g, shortest form kept stable across runs.
std::string format_double(double v);

struct ReadOptions {
  // Header names or 1-based column positions. Empty selects every column
  // other than `id` whose first data value is numeric.
  std::vector<std::string> columns;
  bool log_transform = false;
  // Abort on a non-positive value under log instead of dropping the row.
  bool strict = false;
};

struct ReadResult {
  Sample sample;
  std::vector<std::string> column_names;
  bool has_id = false;
  std::size_t dropped = 0;
  std::vector<std::string> warnings;
  // Non-selected columns, kept for the clustering agreement check.
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> kept_rows;
};

ReadResult read_csv(const std::string& path, const ReadOptions& opts);
ReadResult read_csv(std::istream& in, const ReadOptions& opts);

}  // namespace cdepth
