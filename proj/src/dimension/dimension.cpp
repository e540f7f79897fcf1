// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/dimension/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdepth/numerics/eigen.hpp"
#include "cdepth/numerics/errors.hpp"
#include "cdepth/numerics/parallel.hpp"

namespace cdepth {
namespace {

constexpr std::uint64_t kStageStream = 0x5747;
constexpr std::uint64_t kFinalFitStream = 0xF17;

Sample draw_subsample(const Sample& s, std::size_t size, RngStream rng) {
  // Without replacement within a subsample; subsamples are independent.
  std::vector<std::size_t> idx(s.n());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < size; ++i) std::swap(idx[i], idx[i + rng.index(s.n() - i)]);
  Matrix x(size, s.m());
  for (std::size_t i = 0; i < size; ++i) std::copy(s.row(idx[i]).begin(), s.row(idx[i]).end(), x.row(i).begin());
  return Sample(std::move(x));
}

SearchConfig subsample_config(const SearchConfig& cfg, const DimensionOptions& opts, RngStream rng) {
  SearchConfig sub = cfg;
  sub.restarts = opts.sub_restarts;
  sub.coarse_grid = opts.sub_coarse_grid;
  sub.local_iters = opts.sub_local_iters;
  sub.step_decay = opts.sub_step_decay;
  sub.min_step = opts.sub_min_step;
  sub.final_estimator = cfg.search_estimator;
  sub.record_trace = false;
  sub.rng = rng;
  return sub;
}

}  // namespace

void DimensionOptions::validate(std::size_t n) const {
  if (sub_size <= 1) throw SubsampleError("subsample size must exceed 1");
  if (sub_size >= n) throw SubsampleError("subsample size must be smaller than n");
  if (k < 1) throw ConfigError("k must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (sub_restarts < 1) throw ConfigError("subsample restarts must be >= 1");
}

DimensionReport select_dimension(const Sample& s, DepthKind kind, const DimensionOptions& opts,
                                 const SearchConfig& cfg) {
  opts.validate(s.n());
  cfg.validate();
  const std::size_t m = s.m();
  DimensionReport report;
  report.k = opts.k;
  report.s = opts.sub_size;
  report.alpha = opts.alpha;
  report.sign_rule = opts.sign_rule;

  Sample working = s;
  std::optional<SubspaceFit> first_full_fit;
  bool accepted = false;
  for (std::size_t stage = 0; working.m() >= 2; ++stage) {
    const std::size_t d = working.m();
    if (working.n() <= d - 1) throw DegenerateSampleError("too few points for dimension selection");
    const RngStream stage_rng = cfg.rng.derive(kStageStream + stage);
    Matrix dirs(opts.k, d);
    parallel_for(opts.k, [&](std::size_t j) {
      const RngStream jr = stage_rng.derive(j);
      const Sample sub = draw_subsample(working, opts.sub_size, jr.derive(0));
      const SubspaceFit fit = minimize_dispersion(sub, d - 1, kind, subsample_config(cfg, opts, jr.derive(1)));
      const auto b = fit.B_p->row(0);
      std::copy(b.begin(), b.end(), dirs.row(j).begin());
    });
    const RayleighResult rt = rayleigh_test(canonicalize_signs(dirs, opts.sign_rule));
    const bool ok = rt.p_value > opts.alpha;
    report.stages.push_back({m - d + 1, d, rt.statistic, rt.p_value, ok});
    if (ok) {
      report.p_star = m - d;
      accepted = true;
      break;
    }
    SearchConfig full = cfg;
    full.rng = stage == 0 ? cfg.rng.derive(kFinalFitStream) : stage_rng.derive(kFinalFitStream);
    SubspaceFit fit = minimize_dispersion(working, d - 1, kind, full);
    working = project(working, fit.B_q);
    if (stage == 0) first_full_fit = std::move(fit);
  }
  if (!accepted) report.p_star = m - 1;
  report.q_star = m - report.p_star;

  if (report.p_star == 0) {
    report.B_q_star = Frame::identity(m);
    return report;
  }
  if (report.p_star == 1 && first_full_fit) {
    report.fit = std::move(first_full_fit);
  } else {
    SearchConfig full = cfg;
    full.rng = cfg.rng.derive(kFinalFitStream);
    report.fit = minimize_dispersion(s, report.q_star, kind, full);
  }
  report.B_p_star = report.fit->B_p;
  report.B_q_star = report.fit->B_q;
  return report;
}

double halfspace_radius() { return 1.0 / std::sqrt(std::numbers::pi); }

double simplicial_radius(std::size_t m) {
  return 1.0 / (std::sqrt(std::numbers::pi) * static_cast<double>(m + 1));
}

double profile_radius(DepthKind kind, std::size_t m) {
  return kind == DepthKind::Simplicial ? simplicial_radius(m) : halfspace_radius();
}

Sample rescale_to_ball(const Sample& s, double radius) {
  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
  const auto mu = sample_mean(s);
  Matrix x = s.points();
  double far = 0.0;
  for (std::size_t i = 0; i < s.n(); ++i) {
    for (std::size_t j = 0; j < s.m(); ++j) x(i, j) -= mu[j];
    far = std::max(far, norm(x.row(i)));
  }
  if (!(far > 0.0)) throw DegenerateSampleError("all points are identical");
  const double f = radius / far;
  for (double& v : x.values()) v *= f;
  return Sample(std::move(x), s.labels());
}

DispersionProfile dispersion_profile(const Sample& s, DepthKind kind, const SearchConfig& cfg) {
  const std::size_t m = s.m();
  if (s.n() < m + 1) throw DegenerateSampleError("profile needs n >= m + 1");
  DispersionProfile prof;
  prof.radius = profile_radius(kind, m);
  const Sample r = rescale_to_ball(s, prof.radius);
  for (std::size_t p = 1; p < m; ++p) {
    SearchConfig c = cfg;
    c.rng = cfg.rng.derive(p);
    SubspaceFit fit = maximize_dispersion(r, p, kind, c);
    prof.per_p.push_back({p, fit.sigma, *fit.B_p});
  }
  SearchConfig c = cfg;
  c.rng = cfg.rng.derive(m);
  prof.per_p.push_back(
      {m, dispersion_of_frame(r, Frame::identity(m), kind, cfg.final_estimator, final_stream(c)), Frame::identity(m)});
  return prof;
}

PcaFrames pca_frames(const Sample& s, std::size_t p) {
  const std::size_t m = s.m();
  if (p < 1 || p >= m) throw ConfigError("pca_frames needs 1 <= p < m");
  if (s.n() < 2) throw SingularCovarianceError("covariance needs at least two points");
  EigenDecomposition eig = jacobi_eigen(sample_covariance(s));
  if (!(eig.values.back() > 0.0) || eig.values.front() / eig.values.back() > kConditionLimit)
    throw SingularCovarianceError("sample covariance is singular or ill-conditioned");
  Matrix top(p, m), bottom(m - p, m);
  for (std::size_t i = 0; i < m; ++i) {
    Matrix& dst = i < p ? top : bottom;
    const std::size_t r = i < p ? i : i - p;
    std::copy(eig.vectors.row(i).begin(), eig.vectors.row(i).end(), dst.row(r).begin());
  }
  return {Frame::from_orthonormal(std::move(top)), Frame::from_orthonormal(std::move(bottom)), std::move(eig.values)};
}

}  // namespace cdepth
