// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <optional>

#include "cdepth/depth/depth.hpp"
#include "cdepth/numerics/eigen.hpp"
#include "cdepth/numerics/errors.hpp"
#include "cdepth/numerics/parallel.hpp"

namespace cdepth {

struct DepthEvaluator::Impl {
  explicit Impl(const Sample& s) : sample(s) {}

  Sample sample;
  std::vector<double> sorted;  // m = 1
  Matrix dirs;                 // halfspace, m >= 3
  std::vector<std::vector<double>> proj;
  std::vector<double> mean;  // mahalanobis
  std::optional<EigenDecomposition> eig;
  bool enumerate = false;  // simplicial, m >= 3
  DepthOptions opts;
};

namespace {

std::size_t count_le(const std::vector<double>& v, double t) {
  return static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), t) - v.begin());
}
std::size_t count_lt(const std::vector<double>& v, double t) {
  return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), t) - v.begin());
}

EigenDecomposition checked_covariance_eigen(const Sample& s) {
  if (s.n() < 2) throw SingularCovarianceError("covariance needs at least two points");
  EigenDecomposition eig = jacobi_eigen(sample_covariance(s));
  const double hi = eig.values.front();
  const double lo = eig.values.back();
  if (!(lo > 0.0) || hi / lo > kConditionLimit)
    throw SingularCovarianceError("sample covariance is singular or ill-conditioned");
  return eig;
}

}  // namespace

DepthEvaluator::DepthEvaluator(const Sample& s, DepthKind kind, const DepthOptions& opts)
    : kind_(kind), impl_(std::make_unique<Impl>(s)) {
  Impl& im = *impl_;
  im.opts = opts;
  const std::size_t m = s.m();
  if (m == 1 && kind != DepthKind::Mahalanobis) {
    im.sorted = s.column(0);
    std::sort(im.sorted.begin(), im.sorted.end());
  }
  if (kind == DepthKind::Halfspace && m >= 3) {
    RngStream rng = opts.rng;
    im.dirs = random_directions(opts.dirs_per_dim * m, m, rng);
    im.proj.resize(im.dirs.rows());
    for (std::size_t d = 0; d < im.dirs.rows(); ++d) {
      auto& p = im.proj[d];
      p.resize(s.n());
      for (std::size_t i = 0; i < s.n(); ++i) p[i] = dot(im.dirs.row(d), s.row(i));
      std::sort(p.begin(), p.end());
    }
  }
  if (kind == DepthKind::Simplicial && m >= 3) {
    double subsets = 1.0;
    for (std::size_t i = 1; i <= m + 1; ++i)
      subsets = subsets * static_cast<double>(s.n() + i - (m + 1)) / static_cast<double>(i);
    im.enumerate = s.n() <= m + 1 || subsets <= static_cast<double>(opts.simplicial_exact_subsets);
  }
  if (kind == DepthKind::Mahalanobis) {
    im.eig = checked_covariance_eigen(s);
    im.mean = sample_mean(s);
  }
}

DepthEvaluator::~DepthEvaluator() = default;
DepthEvaluator::DepthEvaluator(DepthEvaluator&&) noexcept = default;
DepthEvaluator& DepthEvaluator::operator=(DepthEvaluator&&) noexcept = default;

double DepthEvaluator::operator()(std::span<const double> x) const {
  const Impl& im = *impl_;
  const Sample& s = im.sample;
  if (x.size() != s.m()) throw ShapeError("query point dimension does not match sample");
  const double n = static_cast<double>(s.n());
  switch (kind_) {
    case DepthKind::Halfspace: {
      if (s.m() == 1) {
        const std::size_t le = count_le(im.sorted, x[0]);
        const std::size_t ge = s.n() - count_lt(im.sorted, x[0]);
        return static_cast<double>(std::min(le, ge)) / n;
      }
      if (s.m() == 2) return halfspace_depth_2d(x, s);
      std::size_t best = s.n();
      for (std::size_t d = 0; d < im.dirs.rows() && best > 0; ++d)
        best = std::min(best, count_le(im.proj[d], dot(im.dirs.row(d), x)));
      return static_cast<double>(best) / n;
    }
    case DepthKind::Simplicial: {
      if (s.m() == 1) {
        const double f = static_cast<double>(count_le(im.sorted, x[0])) / n;
        const double fm = static_cast<double>(count_lt(im.sorted, x[0])) / n;
        return 2.0 * f * (1.0 - f) + (f * f - fm * fm);
      }
      if (s.m() == 2) return simplicial_depth_2d(x, s);
      if (im.enumerate) return simplicial_depth_exact(x, s);
      return simplicial_depth_mc(x, s, im.opts.simplicial_draws, im.opts.rng).value;
    }
    case DepthKind::Mahalanobis: {
      double m2 = 0.0;
      for (std::size_t k = 0; k < s.m(); ++k) {
        double c = 0.0;
        for (std::size_t j = 0; j < s.m(); ++j) c += im.eig->vectors(k, j) * (x[j] - im.mean[j]);
        m2 += c * c / im.eig->values[k];
      }
      return 1.0 / (1.0 + m2);
    }
  }
  return 0.0;
}

std::vector<double> sample_depths(const Sample& s, DepthKind kind, const DepthOptions& opts) {
  const DepthEvaluator eval(s, kind, opts);
  std::vector<double> out(s.n());
  parallel_for(s.n(), [&](std::size_t i) { out[i] = eval(s.row(i)); });
  return out;
}

}  // namespace cdepth
