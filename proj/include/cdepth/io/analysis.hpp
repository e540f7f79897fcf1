// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdepth/depth/depth.hpp"
#include "cdepth/dimension/dimension.hpp"
#include "cdepth/io/cluster.hpp"
#include "cdepth/io/csv.hpp"
#include "cdepth/io/report.hpp"
#include "cdepth/numerics/errors.hpp"
#include "cdepth/subspace/subspace.hpp"

namespace cdepth {

enum class Mode { PointDepth, CentralSubspace, SelectDim, Profile, Cluster, Oracle };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view name);

struct AnalysisConfig {
  Mode mode = Mode::CentralSubspace;
  std::string input_path;
  std::vector<std::string> columns;
  bool log_transform = false;
  bool strict = false;
  DepthKind depth = DepthKind::Halfspace;
  std::optional<std::size_t> q;
  std::uint64_t seed = 1;
  BandThresholds bands{};
  // Dimension selection.
  std::size_t k = 500;
  std::size_t sub_size = 20;
  double alpha = 0.05;
  SignRule sign_rule = SignRule::Balanced;
  // Search budget.
  std::size_t restarts = 8;
  std::size_t coarse_grid = 64;
  std::size_t local_iters = 200;
  // Clustering.
  std::size_t groups = 3;
  Linkage linkage = Linkage::Complete;
  std::string label_column;
  // Oracle demo.
  double eta = 0.1;
  std::size_t oracle_grid = 101;

  void validate() const;
  SearchConfig search_config() const;
};

struct PlotTable {
  std::string name;  // written as plotdata_<name>.csv
  CsvTable table;
};

struct AnalysisReport {
  Json document;
  std::optional<CsvTable> points;
  std::vector<PlotTable> plots;
};

AnalysisReport run_analyze(const AnalysisConfig& cfg);
void emit_outputs(const AnalysisReport& report, const std::string& output_dir);

int exit_code(ErrorCategory category);
Json error_record(const Error& e);

}  // namespace cdepth
