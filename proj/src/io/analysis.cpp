// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/io/analysis.hpp"

#include <algorithm>
#include <filesystem>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "cdepth/dispersion/dispersion.hpp"

namespace cdepth {
namespace {

constexpr std::uint64_t kDepthStream = 0xD3;

std::vector<double> midrank_orders(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> out(n);
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo + 1;
    while (hi < n && v[idx[hi]] == v[idx[lo]]) ++hi;
    const double order = (0.5 * static_cast<double>(lo + 1 + hi) - 0.5) / static_cast<double>(n);
    for (std::size_t r = lo; r < hi; ++r) out[idx[r]] = order;
    lo = hi;
  }
  return out;
}

// Sign convention for one-row frames: the last nonzero coefficient is positive.
Frame orient_last(const Frame& f) {
  for (std::size_t j = f.cols(); j-- > 0;) {
    if (f(0, j) > 0) return f;
    if (f(0, j) < 0) return f.negated();
  }
  return f;
}

// Sign convention for cluster axes: the largest-|coefficient| is positive.
Frame orient_largest(const Frame& f) {
  std::size_t arg = 0;
  for (std::size_t j = 1; j < f.cols(); ++j)
    if (std::abs(f(0, j)) > std::abs(f(0, arg))) arg = j;
  return f(0, arg) < 0 ? f.negated() : f;
}

Json vec(const std::vector<double>& v) { return Json(v); }

struct Input {
  ReadResult data;
};

Input load(const AnalysisConfig& cfg) {
  if (cfg.input_path.empty()) throw ConfigError("--input is required for this mode");
  ReadOptions ro;
  ro.columns = cfg.columns;
  ro.log_transform = cfg.log_transform;
  ro.strict = cfg.strict;
  return {read_csv(cfg.input_path, ro)};
}

std::vector<std::string> base_header(const ReadResult& in) {
  std::vector<std::string> h = {"id"};
  h.insert(h.end(), in.column_names.begin(), in.column_names.end());
  return h;
}

std::vector<std::string> base_row(const ReadResult& in, std::size_t i) {
  std::vector<std::string> r = {in.sample.labels()[i]};
  for (std::size_t j = 0; j < in.sample.m(); ++j) r.push_back(format_double(in.sample(i, j)));
  return r;
}

Json input_json(const AnalysisConfig& cfg, const ReadResult& in) {
  Json j;
  j["path"] = cfg.input_path;
  j["n"] = in.sample.n();
  j["m"] = in.sample.m();
  j["columns"] = in.column_names;
  j["dropped_rows"] = in.dropped;
  j["warnings"] = in.warnings;
  return j;
}

Json config_echo(const AnalysisConfig& cfg) {
  Json j;
  j["mode"] = std::string(to_string(cfg.mode));
  j["input"] = cfg.input_path;
  j["columns"] = cfg.columns;
  j["log_transform"] = cfg.log_transform;
  j["strict"] = cfg.strict;
  j["depth"] = std::string(to_string(cfg.depth));
  j["q"] = cfg.q ? Json(*cfg.q) : Json(nullptr);
  j["seed"] = cfg.seed;
  j["bands"] = {{"central", {cfg.bands.central_lo, cfg.bands.central_hi}},
                {"blue", {cfg.bands.blue, cfg.bands.red}},
                {"red", cfg.bands.red},
                {"two_sided", cfg.bands.two_sided}};
  j["k"] = cfg.k;
  j["sub_size"] = cfg.sub_size;
  j["alpha"] = cfg.alpha;
  j["sign_rule"] = std::string(to_string(cfg.sign_rule));
  j["restarts"] = cfg.restarts;
  j["coarse_grid"] = cfg.coarse_grid;
  j["local_iters"] = cfg.local_iters;
  j["groups"] = cfg.groups;
  j["linkage"] = std::string(to_string(cfg.linkage));
  j["label_column"] = cfg.label_column;
  j["eta"] = cfg.eta;
  j["oracle_grid"] = cfg.oracle_grid;
  return j;
}

Json fit_json(const SubspaceFit& fit) {
  Json j;
  j["B_p"] = fit.B_p ? to_json(*fit.B_p) : Json(nullptr);
  j["B_q"] = to_json(fit.B_q);
  j["sigma"] = to_json(fit.sigma);
  j["search_value"] = fit.search_value;
  j["nu"] = vec(fit.nu);
  j["restarts_used"] = fit.restarts_used;
  j["degenerate_flat"] = fit.degenerate_flat;
  return j;
}

DepthOptions depth_options(const AnalysisConfig& cfg) {
  DepthOptions o;
  o.rng = RngStream(cfg.seed, kDepthStream);
  return o;
}

void run_point_depth(const AnalysisConfig& cfg, AnalysisReport& rep) {
  const Input in = load(cfg);
  const Sample& s = in.data.sample;
  const auto depths = sample_depths(s, cfg.depth, depth_options(cfg));
  std::vector<double> neg(depths.size());
  for (std::size_t i = 0; i < depths.size(); ++i) neg[i] = -depths[i];
  // order 0 is the deepest point; the central region holds order <= 0.5
  const auto orders = midrank_orders(neg);
  CsvTable pts;
  pts.header = base_header(in.data);
  for (const char* h : {"depth", "order", "band", "flag"}) pts.header.push_back(h);
  Json records = Json::array();
  std::size_t central = 0;
  for (std::size_t i = 0; i < s.n(); ++i) {
    QuantileBand qb = classify_order(orders[i], {0.25, 0.5, cfg.bands.blue, cfg.bands.red, false});
    qb.band = orders[i] <= 0.5 ? Band::Central : Band::Outer;
    central += qb.band == Band::Central;
    auto row = base_row(in.data, i);
    row.push_back(format_double(depths[i]));
    row.push_back(format_double(orders[i]));
    row.push_back(std::string(to_string(qb.band)));
    row.push_back(std::string(to_string(qb.flag)));
    pts.rows.push_back(row);
    records.push_back({{"id", s.labels()[i]},
                       {"coords", std::vector<double>(s.row(i).begin(), s.row(i).end())},
                       {"depth", depths[i]},
                       {"order", orders[i]},
                       {"band", to_string(qb.band)},
                       {"flag", to_string(qb.flag)}});
  }
  rep.document["input"] = input_json(cfg, in.data);
  rep.document["fit"] = {{"central_region_size", central}};
  rep.document["points"] = std::move(records);
  CsvTable plot;
  plot.header = {"id", "depth", "order"};
  for (std::size_t i = 0; i < s.n(); ++i)
    plot.rows.push_back({s.labels()[i], format_double(depths[i]), format_double(orders[i])});
  rep.points = std::move(pts);
  rep.plots.push_back({"depth", std::move(plot)});
}

void run_central_subspace(const AnalysisConfig& cfg, AnalysisReport& rep) {
  const Input in = load(cfg);
  const Sample& s = in.data.sample;
  const std::size_t q = cfg.q.value_or(1);
  if (q < 1 || q > s.m()) throw ConfigError("--q must lie in [1, m]");
  SubspaceFit fit = minimize_dispersion(s, q, cfg.depth, cfg.search_config());
  if (q == 1) {
    const Frame oriented = orient_last(fit.B_q);
    if (oriented(0, 0) != fit.B_q(0, 0) || oriented(0, s.m() - 1) != fit.B_q(0, s.m() - 1)) {
      fit.B_q = oriented;
      for (double& v : fit.nu) v = -v;
    }
  }
  const Sample y = project(s, fit.B_q);
  std::vector<QuantileBand> bands;
  if (q == 1) bands = quantile_bands(s, fit.B_q, cfg.bands);

  CsvTable pts;
  pts.header = base_header(in.data);
  for (std::size_t j = 0; j < q; ++j) pts.header.push_back(q == 1 ? "projection" : "proj_" + std::to_string(j + 1));
  for (const char* h : {"depth", "order", "band", "flag"}) pts.header.push_back(h);
  Json records = Json::array();
  std::size_t counts[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < s.n(); ++i) {
    auto row = base_row(in.data, i);
    const std::vector<double> proj(y.row(i).begin(), y.row(i).end());
    for (double v : proj) row.push_back(format_double(v));
    row.push_back(format_double(fit.depths[i]));
    Json rec = {{"id", s.labels()[i]},
                {"coords", std::vector<double>(s.row(i).begin(), s.row(i).end())},
                {"projection", proj},
                {"depth", fit.depths[i]}};
    if (q == 1) {
      const QuantileBand& b = bands[i];
      row.push_back(format_double(b.order));
      row.push_back(std::string(to_string(b.band)));
      row.push_back(std::string(to_string(b.flag)));
      rec["order"] = b.order;
      rec["band"] = to_string(b.band);
      rec["flag"] = to_string(b.flag);
      ++counts[b.band == Band::Central ? 0 : 1];
      if (b.flag == TailFlag::Blue) ++counts[2];
      if (b.flag == TailFlag::Red) ++counts[3];
    } else {
      row.insert(row.end(), {"", "", ""});
      rec["order"] = nullptr;
      rec["band"] = nullptr;
      rec["flag"] = nullptr;
    }
    pts.rows.push_back(std::move(row));
    records.push_back(std::move(rec));
  }
  Json fj = fit_json(fit);
  if (q == 1) fj["band_counts"] = {{"Central", counts[0]}, {"Outer", counts[1]}, {"Blue", counts[2]}, {"Red", counts[3]}};
  rep.document["input"] = input_json(cfg, in.data);
  rep.document["fit"] = std::move(fj);
  rep.document["points"] = std::move(records);
  rep.points = std::move(pts);

  if (q == 1) {
    std::vector<std::size_t> idx(s.n());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return y(a, 0) < y(b, 0); });
    CsvTable plot;
    plot.header = {"id", "projection", "depth", "order", "band", "flag"};
    for (std::size_t i : idx)
      plot.rows.push_back({s.labels()[i], format_double(y(i, 0)), format_double(fit.depths[i]),
                           format_double(bands[i].order), std::string(to_string(bands[i].band)),
                           std::string(to_string(bands[i].flag))});
    rep.plots.push_back({"depth", std::move(plot)});
  }
}

void run_select_dim(const AnalysisConfig& cfg, AnalysisReport& rep) {
  const Input in = load(cfg);
  const Sample& s = in.data.sample;
  DimensionOptions opts;
  opts.k = cfg.k;
  opts.sub_size = cfg.sub_size;
  opts.alpha = cfg.alpha;
  opts.sign_rule = cfg.sign_rule;
  const DimensionReport dr = select_dimension(s, cfg.depth, opts, cfg.search_config());
  Json stages = Json::array();
  CsvTable plot;
  plot.header = {"p_candidate", "ambient_dim", "R_k", "p_value", "accepted"};
  for (const auto& st : dr.stages) {
    stages.push_back({{"p_candidate", st.p_candidate},
                      {"ambient_dim", st.ambient_dim},
                      {"R_k", st.R_k},
                      {"p_value", st.p_value},
                      {"accepted", st.accepted}});
    plot.rows.push_back({std::to_string(st.p_candidate), std::to_string(st.ambient_dim), format_double(st.R_k),
                         format_double(st.p_value), st.accepted ? "true" : "false"});
  }
  Json fj;
  fj["p_star"] = dr.p_star;
  fj["q_star"] = dr.q_star;
  fj["k"] = dr.k;
  fj["s"] = dr.s;
  fj["alpha"] = dr.alpha;
  fj["sign_rule"] = std::string(to_string(dr.sign_rule));
  fj["stages"] = std::move(stages);
  fj["B_p"] = dr.B_p_star ? to_json(*dr.B_p_star) : Json(nullptr);
  fj["B_q"] = to_json(dr.B_q_star);
  fj["sigma"] = dr.fit ? to_json(dr.fit->sigma) : Json(nullptr);
  fj["nu"] = dr.fit ? vec(dr.fit->nu) : Json(nullptr);

  std::vector<double> depths;
  if (dr.fit) {
    depths = dr.fit->depths;
  } else {
    try {
      depths = sample_depths(s, cfg.depth, depth_options(cfg));
    } catch (const SingularCovarianceError&) {
      depths.assign(s.n(), 0.0);
    }
  }
  const Sample y = project(s, dr.B_q_star);
  CsvTable pts;
  pts.header = base_header(in.data);
  for (std::size_t j = 0; j < y.m(); ++j) pts.header.push_back("proj_" + std::to_string(j + 1));
  pts.header.push_back("depth");
  Json records = Json::array();
  for (std::size_t i = 0; i < s.n(); ++i) {
    auto row = base_row(in.data, i);
    const std::vector<double> proj(y.row(i).begin(), y.row(i).end());
    for (double v : proj) row.push_back(format_double(v));
    row.push_back(format_double(depths[i]));
    pts.rows.push_back(std::move(row));
    records.push_back({{"id", s.labels()[i]}, {"projection", proj}, {"depth", depths[i]}});
  }
  rep.document["input"] = input_json(cfg, in.data);
  rep.document["fit"] = std::move(fj);
  rep.document["points"] = std::move(records);
  rep.points = std::move(pts);
  rep.plots.push_back({"stages", std::move(plot)});
}

void run_profile(const AnalysisConfig& cfg, AnalysisReport& rep) {
  const Input in = load(cfg);
  const Sample& s = in.data.sample;
  const DispersionProfile prof = dispersion_profile(s, cfg.depth, cfg.search_config());
  Json entries = Json::array();
  CsvTable plot;
  plot.header = {"p", "sigma_max", "std_error", "method"};
  for (const auto& e : prof.per_p) {
    entries.push_back({{"p", e.p}, {"sigma_max", to_json(e.sigma_max)}, {"frame", to_json(e.frame)}});
    plot.rows.push_back({std::to_string(e.p), format_double(e.sigma_max.value),
                         e.sigma_max.std_error ? format_double(*e.sigma_max.std_error) : "",
                         std::string(to_string(e.sigma_max.method))});
  }
  rep.document["input"] = input_json(cfg, in.data);
  rep.document["fit"] = {{"radius", prof.radius}, {"profile", std::move(entries)}};
  CsvTable pts;
  pts.header = base_header(in.data);
  for (std::size_t i = 0; i < s.n(); ++i) pts.rows.push_back(base_row(in.data, i));
  rep.points = std::move(pts);
  rep.plots.push_back({"profile", std::move(plot)});
}

void run_cluster(const AnalysisConfig& cfg, AnalysisReport& rep) {
  const Input in = load(cfg);
  const Sample& s = in.data.sample;
  if (s.m() < 2) throw ConfigError("cluster mode needs at least two columns");
  SubspaceFit fit = maximize_dispersion(s, 1, cfg.depth, cfg.search_config());
  const Frame axis = orient_largest(*fit.B_p);
  const Sample y = project(s, axis);
  const auto proj = y.column(0);
  const auto groups = hclust_cut(proj, cfg.groups, cfg.linkage);
  std::vector<double> depths;
  try {
    depths = sample_depths(y, cfg.depth, depth_options(cfg));
  } catch (const SingularCovarianceError&) {
    depths.assign(s.n(), 0.0);
  }

  std::vector<std::string> labels;
  if (!cfg.label_column.empty()) {
    const auto& h = in.data.header;
    const auto it = std::find(h.begin(), h.end(), cfg.label_column);
    if (it == h.end()) throw ColumnError("no label column '" + cfg.label_column + "'");
    const auto col = static_cast<std::size_t>(it - h.begin());
    for (const auto& row : in.data.kept_rows) labels.push_back(col < row.size() ? row[col] : "");
  }

  CsvTable pts;
  pts.header = base_header(in.data);
  for (const char* hname : {"projection", "depth", "group"}) pts.header.push_back(hname);
  if (!labels.empty()) pts.header.push_back("label");
  Json records = Json::array();
  for (std::size_t i = 0; i < s.n(); ++i) {
    auto row = base_row(in.data, i);
    row.push_back(format_double(proj[i]));
    row.push_back(format_double(depths[i]));
    row.push_back(std::to_string(groups[i]));
    Json rec = {{"id", s.labels()[i]}, {"projection", proj[i]}, {"depth", depths[i]}, {"group", groups[i]}};
    if (!labels.empty()) {
      row.push_back(labels[i]);
      rec["label"] = labels[i];
    }
    pts.rows.push_back(std::move(row));
    records.push_back(std::move(rec));
  }
  Json fj;
  fj["axis"] = to_json(axis);
  fj["sigma"] = to_json(fit.sigma);
  fj["restarts_used"] = fit.restarts_used;
  fj["groups"] = cfg.groups;
  fj["linkage"] = std::string(to_string(cfg.linkage));
  std::vector<std::size_t> sizes(cfg.groups, 0);
  for (int g : groups) ++sizes[static_cast<std::size_t>(g - 1)];
  fj["group_sizes"] = sizes;
  fj["label_agreement"] = labels.empty() ? Json(nullptr) : Json(best_label_agreement(groups, labels));
  rep.document["input"] = input_json(cfg, in.data);
  rep.document["fit"] = std::move(fj);
  rep.document["points"] = std::move(records);
  rep.points = std::move(pts);

  std::vector<std::size_t> idx(s.n());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });
  CsvTable plot;
  plot.header = {"id", "projection", "group"};
  for (std::size_t i : idx) plot.rows.push_back({s.labels()[i], format_double(proj[i]), std::to_string(groups[i])});
  rep.plots.push_back({"cluster", std::move(plot)});
}

void run_oracle(const AnalysisConfig& cfg, AnalysisReport& rep) {
  if (cfg.oracle_grid < 2) throw ConfigError("oracle grid needs at least two points");
  CsvTable plot;
  plot.header = {"u", "sigma"};
  Json grid = Json::array();
  double best_u = -1.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cfg.oracle_grid; ++i) {
    const double u = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(cfg.oracle_grid - 1);
    const double v = mixture_dispersion_oracle(u, cfg.eta);
    if (v < best) {
      best = v;
      best_u = u;
    }
    plot.rows.push_back({format_double(u), format_double(v)});
    grid.push_back({{"u", u}, {"sigma", v}});
  }
  rep.document["fit"] = {{"eta", cfg.eta}, {"grid_min_u", best_u}, {"grid_min_sigma", best}, {"grid", std::move(grid)}};
  rep.plots.push_back({"oracle", std::move(plot)});
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::PointDepth:
      return "point-depth";
    case Mode::CentralSubspace:
      return "central-subspace";
    case Mode::SelectDim:
      return "select-dim";
    case Mode::Profile:
      return "profile";
    case Mode::Cluster:
      return "cluster";
    case Mode::Oracle:
      return "oracle";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::PointDepth, Mode::CentralSubspace, Mode::SelectDim, Mode::Profile, Mode::Cluster, Mode::Oracle})
    if (to_string(m) == name) return m;
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

void AnalysisConfig::validate() const {
  bands.validate();
  if (restarts < 1) throw ConfigError("--restarts must be >= 1");
  if (groups < 1) throw ConfigError("--groups must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("--alpha must lie in (0, 1)");
  if (!(eta > 0.0)) throw ConfigError("--eta must be positive");
}

SearchConfig AnalysisConfig::search_config() const {
  SearchConfig c;
  c.restarts = restarts;
  c.coarse_grid = coarse_grid;
  c.local_iters = local_iters;
  c.rng = RngStream(seed, 0);
  c.final_estimator.depth.rng = RngStream(seed, kDepthStream);
  c.search_estimator.depth.rng = RngStream(seed, kDepthStream);
  return c;
}

AnalysisReport run_analyze(const AnalysisConfig& cfg) {
  cfg.validate();
  AnalysisReport rep;
  rep.document["schema_version"] = kSchemaVersion;
  rep.document["tool"] = "central-depth";
  rep.document["version"] = kVersion;
  rep.document["mode"] = std::string(to_string(cfg.mode));
  rep.document["provenance"] = {{"seed", cfg.seed}, {"version", kVersion}, {"config", config_echo(cfg)}};
  switch (cfg.mode) {
    case Mode::PointDepth:
      run_point_depth(cfg, rep);
      break;
    case Mode::CentralSubspace:
      run_central_subspace(cfg, rep);
      break;
    case Mode::SelectDim:
      run_select_dim(cfg, rep);
      break;
    case Mode::Profile:
      run_profile(cfg, rep);
      break;
    case Mode::Cluster:
      run_cluster(cfg, rep);
      break;
    case Mode::Oracle:
      run_oracle(cfg, rep);
      break;
  }
  return rep;
}

void emit_outputs(const AnalysisReport& report, const std::string& output_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) throw IoError("cannot create '" + output_dir + "': " + ec.message());
  auto open = [&](const std::string& name) {
    const std::string path = (fs::path(output_dir) / name).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    return std::make_pair(std::move(out), path);
  };
  {
    auto [out, path] = open("report.json");
    out << dump_json(report.document);
    if (!out) throw IoError("write failed for '" + path + "'");
  }
  if (report.points) {
    auto [out, path] = open("points.csv");
    write_csv(out, *report.points);
    if (!out) throw IoError("write failed for '" + path + "'");
  }
  for (const auto& p : report.plots) {
    auto [out, path] = open("plotdata_" + p.name + ".csv");
    write_csv(out, p.table);
    if (!out) throw IoError("write failed for '" + path + "'");
  }
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Config:
      return 2;
    case ErrorCategory::Data:
      return 3;
    case ErrorCategory::Numeric:
      return 4;
  }
  return 1;
}

Json error_record(const Error& e) {
  const char* cat = e.category() == ErrorCategory::Config ? "config"
                    : e.category() == ErrorCategory::Data ? "data"
                                                          : "numeric";
  return {{"error", {{"kind", e.kind()}, {"category", cat}, {"message", e.what()}, {"exit_code", exit_code(e.category())}}}};
}

}  // namespace cdepth
