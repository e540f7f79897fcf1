// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdepth/io/analysis.hpp"
#include "cdepth/io/csv.hpp"
#include "cdepth/io/synthetic.hpp"

namespace {

using cdepth::AnalysisConfig;

void add_common(CLI::App* sub, AnalysisConfig& cfg, std::string& depth, std::string& out_dir, bool needs_input) {
  auto* in = sub->add_option("--input", cfg.input_path, "CSV file with a header row");
  if (needs_input) in->required();
  sub->add_option("--columns", cfg.columns, "column names or 1-based positions")->delimiter(',');
  sub->add_flag("--log", cfg.log_transform, "natural-log transform the selected columns");
  sub->add_flag("--strict", cfg.strict, "abort on non-positive values under --log");
  sub->add_option("--depth", depth, "halfspace | simplicial | mahalanobis")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  sub->add_option("--restarts", cfg.restarts, "optimizer restarts")->capture_default_str();
  sub->add_option("--coarse-grid", cfg.coarse_grid, "random frames screened per restart")->capture_default_str();
  sub->add_option("--local-iters", cfg.local_iters, "local descent iterations")->capture_default_str();
  sub->add_option("--out", out_dir, "output directory")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"central subspace data depth"};
  app.require_subcommand(1);

  AnalysisConfig cfg;
  std::string depth = "halfspace";
  std::string out_dir;
  std::string sign_rule = "balanced";
  std::string linkage = "complete";
  std::size_t q = 1;

  auto* point = app.add_subcommand("point-depth", "depth of every point, with the 0.5 central region");
  add_common(point, cfg, depth, out_dir, true);

  auto* central = app.add_subcommand("central-subspace", "least-dispersed subspace, subspace depths and quantile bands");
  add_common(central, cfg, depth, out_dir, true);
  central->add_option("--q", q, "dimension of the deeply immersed subspace")->capture_default_str();
  central->add_flag("--two-sided", cfg.bands.two_sided, "flag both tails instead of the upper tail");
  central->add_option("--central-lo", cfg.bands.central_lo)->capture_default_str();
  central->add_option("--central-hi", cfg.bands.central_hi)->capture_default_str();
  central->add_option("--blue", cfg.bands.blue, "lower edge of the blue band")->capture_default_str();
  central->add_option("--red", cfg.bands.red, "lower edge of the red band")->capture_default_str();

  auto* select = app.add_subcommand("select-dim", "recursive Rayleigh selection of (p*, q*)");
  add_common(select, cfg, depth, out_dir, true);
  select->add_option("--k", cfg.k, "number of subsamples")->capture_default_str();
  select->add_option("--sub-size", cfg.sub_size, "subsample size")->capture_default_str();
  select->add_option("--alpha", cfg.alpha, "test level")->capture_default_str();
  select->add_option("--sign-rule", sign_rule, "balanced | largest-component")->capture_default_str();

  auto* profile = app.add_subcommand("profile", "maximal dispersion for p = 1..m after ball rescaling");
  add_common(profile, cfg, depth, out_dir, true);

  auto* cluster = app.add_subcommand("cluster", "hierarchical clustering along the most dispersed direction");
  add_common(cluster, cfg, depth, out_dir, true);
  cluster->add_option("--groups", cfg.groups, "number of clusters")->capture_default_str();
  cluster->add_option("--linkage", linkage, "complete | single | average")->capture_default_str();
  cluster->add_option("--label-column", cfg.label_column, "column with reference labels for agreement");

  auto* oracle = app.add_subcommand("oracle", "closed-form dispersion of the four-square mixture over u");
  oracle->add_option("--eta", cfg.eta)->capture_default_str();
  oracle->add_option("--grid", cfg.oracle_grid, "number of u values on [-1, 1]")->capture_default_str();
  oracle->add_option("--out", out_dir, "output directory")->required();

  std::string gen_name;
  std::size_t gen_n = 100;
  std::uint64_t gen_seed = 1;
  double gen_eta = 0.1;
  std::string gen_path;
  auto* generate = app.add_subcommand("generate", "write a synthetic data set");
  generate->add_option("name", gen_name, "mixture | scenario-i | scenario-iii | spherical | pca | pod")->required();
  generate->add_option("--n", gen_n)->capture_default_str();
  generate->add_option("--seed", gen_seed)->capture_default_str();
  generate->add_option("--eta", gen_eta)->capture_default_str();
  generate->add_option("--output", gen_path, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) {
      const cdepth::Sample s = cdepth::generate_named(gen_name, gen_n, cdepth::RngStream(gen_seed, 0), gen_eta);
      cdepth::CsvTable t;
      t.header = {"id"};
      // pod rows are raw weights and prices; analyze them with --log
      const bool raw = gen_name == "pod";
      if (raw) {
        t.header.insert(t.header.end(), {"weight", "price"});
      } else {
        for (std::size_t j = 0; j < s.m(); ++j) t.header.push_back("x" + std::to_string(j + 1));
      }
      for (std::size_t i = 0; i < s.n(); ++i) {
        std::vector<std::string> row = {std::to_string(i + 1)};
        for (std::size_t j = 0; j < s.m(); ++j) row.push_back(cdepth::format_double(raw ? std::exp(s(i, j)) : s(i, j)));
        t.rows.push_back(std::move(row));
      }
      std::ofstream out(gen_path, std::ios::binary | std::ios::trunc);
      if (!out) throw cdepth::IoError("cannot write '" + gen_path + "'");
      cdepth::write_csv(out, t);
      return 0;
    }
    if (point->parsed()) cfg.mode = cdepth::Mode::PointDepth;
    if (central->parsed()) {
      cfg.mode = cdepth::Mode::CentralSubspace;
      cfg.q = q;
    }
    if (select->parsed()) cfg.mode = cdepth::Mode::SelectDim;
    if (profile->parsed()) cfg.mode = cdepth::Mode::Profile;
    if (cluster->parsed()) cfg.mode = cdepth::Mode::Cluster;
    if (oracle->parsed()) cfg.mode = cdepth::Mode::Oracle;
    cfg.depth = cdepth::parse_depth_kind(depth);
    cfg.sign_rule = cdepth::parse_sign_rule(sign_rule);
    cfg.linkage = cdepth::parse_linkage(linkage);

    const cdepth::AnalysisReport report = cdepth::run_analyze(cfg);
    cdepth::emit_outputs(report, out_dir);
    if (report.document.contains("input"))
      for (const auto& w : report.document["input"]["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
    return 0;
  } catch (const cdepth::Error& e) {
    std::cerr << cdepth::dump_json(cdepth::error_record(e));
    return cdepth::exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << cdepth::dump_json({{"error", {{"kind", "InternalError"}, {"category", "internal"}, {"message", e.what()}}}});
    return 1;
  }
}
