// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/io/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "cdepth/numerics/errors.hpp"

namespace cdepth {
namespace {

bool parse_number(const std::string& text, double& out) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  if (b == e) return false;
  const char* first = text.data() + b;
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, text.data() + e, out);
  return res.ec == std::errc() && res.ptr == text.data() + e && std::isfinite(out);
}

std::size_t resolve_column(const std::vector<std::string>& header, const std::string& sel) {
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == sel) return j;
  std::size_t pos = 0;
  const auto res = std::from_chars(sel.data(), sel.data() + sel.size(), pos);
  if (res.ec == std::errc() && res.ptr == sel.data() + sel.size() && pos >= 1 && pos <= header.size())
    return pos - 1;
  throw ColumnError("no column '" + sel + "'");
}

}  // namespace

CsvTable parse_csv(std::istream& in) {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  bool header_done = false;
  auto finish_record = [&] {
    record.push_back(field);
    field.clear();
    const bool blank = record.size() == 1 && record[0].empty();
    if (!blank) {
      if (!header_done) {
        table.header = record;
        header_done = true;
      } else {
        table.rows.push_back(record);
      }
    }
    record.clear();
    any = false;
  };
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      record.push_back(field);
      field.clear();
    } else if (c == '\n') {
      finish_record();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted) throw ParseError("unterminated quoted field");
  if (any || !field.empty() || !record.empty()) finish_record();
  if (!header_done) throw ParseError("empty CSV input");
  return table;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out << ',';
      out << csv_field(r[j]);
    }
    out << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ReadResult read_csv(std::istream& in, const ReadOptions& opts) {
  const CsvTable table = parse_csv(in);
  const auto& header = table.header;
  std::size_t id_col = header.size();
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == "id") id_col = j;

  std::vector<std::size_t> cols;
  if (opts.columns.empty()) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (j == id_col) continue;
      double v;
      if (table.rows.empty() || (table.rows[0].size() > j && parse_number(table.rows[0][j], v))) cols.push_back(j);
    }
    if (cols.empty()) throw ColumnError("no numeric columns found");
  } else {
    for (const auto& sel : opts.columns) cols.push_back(resolve_column(header, sel));
  }

  std::vector<double> values;
  std::vector<std::string> labels;
  std::size_t dropped = 0;
  std::size_t domain_dropped = 0;
  std::vector<std::vector<std::string>> kept;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    std::vector<double> vals;
    bool ok = true;
    bool domain = false;
    for (std::size_t j : cols) {
      double v;
      if (j >= row.size() || !parse_number(row[j], v)) {
        ok = false;
        break;
      }
      if (opts.log_transform) {
        if (!(v > 0.0)) {
          if (opts.strict)
            throw DomainError("non-positive value '" + row[j] + "' in column '" + header[j] + "' under log transform");
          ok = false;
          domain = true;
          break;
        }
        v = std::log(v);
      }
      vals.push_back(v);
    }
    if (!ok) {
      ++dropped;
      domain_dropped += domain;
      continue;
    }
    values.insert(values.end(), vals.begin(), vals.end());
    labels.push_back(id_col < row.size() ? row[id_col] : std::to_string(r + 1));
    kept.push_back(row);
  }
  if (labels.empty()) throw DegenerateSampleError("no usable rows");
  Matrix x(labels.size(), cols.size());
  x.values() = std::move(values);
  ReadResult out{Sample(std::move(x), std::move(labels)), {}, id_col < header.size(), dropped, {}, header, std::move(kept)};
  for (std::size_t j : cols) out.column_names.push_back(header[j]);
  if (dropped > 0)
    out.warnings.push_back("dropped " + std::to_string(dropped) + " row(s) with missing or invalid values");
  if (domain_dropped > 0)
    out.warnings.push_back(std::to_string(domain_dropped) + " of them had non-positive values under log transform");
  return out;
}

ReadResult read_csv(const std::string& path, const ReadOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_csv(in, opts);
}

}  // namespace cdepth
