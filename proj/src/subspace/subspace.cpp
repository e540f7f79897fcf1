// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/subspace/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cdepth/numerics/errors.hpp"
#include "cdepth/numerics/parallel.hpp"

namespace cdepth {
namespace {

constexpr std::uint64_t kFinalStreamId = 0xF1A1;
constexpr std::size_t kReorthEvery = 10;

struct Candidate {
  double value;  // signed objective (smaller is better)
  double se;
};

struct RestartResult {
  Matrix basis;  // full m x m orthonormal basis, first k rows optimized
  double value = std::numeric_limits<double>::infinity();
  std::vector<Candidate> coarse;
  std::vector<double> trace;
};

Frame leading_rows(const Matrix& q, std::size_t k) {
  Matrix w(k, q.cols());
  for (std::size_t i = 0; i < k; ++i) std::copy(q.row(i).begin(), q.row(i).end(), w.row(i).begin());
  return orthonormalize(w);
}

Matrix full_basis(const Frame& w) {
  if (w.rows() == w.cols()) return w.matrix();
  return stack(w, complement_frame(w)).matrix();
}

void givens(Matrix& q, std::size_t a, std::size_t b, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  for (std::size_t j = 0; j < q.cols(); ++j) {
    const double qa = q(a, j);
    const double qb = q(b, j);
    q(a, j) = c * qa + s * qb;
    q(b, j) = -s * qa + c * qb;
  }
}

RestartResult run_restart(const Sample& s, std::size_t k, double sign, DepthKind kind, const SearchConfig& cfg,
                          std::size_t restart) {
  const std::size_t m = s.m();
  const RngStream stream = cfg.rng.derive(restart);
  const RngStream objective_rng = stream.derive(1);
  RngStream frame_rng = stream.derive(2);
  RestartResult out;
  auto eval = [&](const Frame& w) {
    const DispersionEstimate e = dispersion_of_frame(s, w, kind, cfg.search_estimator, objective_rng);
    const double v = sign * e.value;
    if (cfg.record_trace) out.trace.push_back(e.value);
    return Candidate{v, e.std_error.value_or(0.0)};
  };

  std::optional<Frame> best;
  for (std::size_t c = 0; c < std::max<std::size_t>(1, cfg.coarse_grid); ++c) {
    Frame w = random_frame(k, m, frame_rng);
    const Candidate cand = eval(w);
    out.coarse.push_back(cand);
    if (!best || cand.value < out.value) {
      out.value = cand.value;
      best = std::move(w);
    }
  }
  Matrix q = full_basis(*best);
  double step = cfg.step_init;
  for (std::size_t it = 0; it < cfg.local_iters && step >= cfg.min_step && k < m; ++it) {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = k; b < m; ++b)
        for (double dir : {1.0, -1.0}) {
          Matrix trial = q;
          givens(trial, a, b, dir * step);
          const Candidate cand = eval(leading_rows(trial, k));
          if (cand.value < out.value) {
            out.value = cand.value;
            q = std::move(trial);
            break;
          }
        }
    if ((it + 1) % kReorthEvery == 0) q = orthonormalize(q).matrix();
    step *= cfg.step_decay;
  }
  out.basis = orthonormalize(q).matrix();
  return out;
}

struct SearchOutcome {
  Frame frame;
  double value;
  bool flat;
  std::vector<double> trace;
};

SearchOutcome search(const Sample& s, std::size_t k, double sign, DepthKind kind, const SearchConfig& cfg) {
  cfg.validate();
  std::vector<RestartResult> results(cfg.restarts);
  parallel_for(cfg.restarts, [&](std::size_t r) { results[r] = run_restart(s, k, sign, kind, cfg, r); });
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].value < results[best].value) best = r;
  std::vector<Candidate> pool;
  std::vector<double> trace;
  for (const auto& r : results) {
    pool.insert(pool.end(), r.coarse.begin(), r.coarse.end());
    trace.insert(trace.end(), r.trace.begin(), r.trace.end());
  }
  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  bool flat = false;
  if (pool.size() >= 2) {
    const Candidate& a = pool.front();
    const Candidate& b = pool[std::min<std::size_t>(4, pool.size() - 1)];
    const double se = std::sqrt(a.se * a.se + b.se * b.se);
    // exact estimators carry no standard error; rounding noise is measured
    // against the sample's spread in units of a k-dimensional volume
    double spread = 0.0;
    const auto mean = sample_mean(s);
    for (std::size_t i = 0; i < s.n(); ++i)
      for (std::size_t j = 0; j < s.m(); ++j) spread += (s(i, j) - mean[j]) * (s(i, j) - mean[j]);
    spread = std::sqrt(spread / static_cast<double>(s.n()));
    const double floor = 1e-12 * std::pow(spread, static_cast<double>(k));
    flat = std::abs(b.value - a.value) < std::max({se, floor, 1e-12 * std::abs(a.value)});
  }
  return {leading_rows(results[best].basis, k), sign * results[best].value, flat, std::move(trace)};
}

void check_search_args(const Sample& s, std::size_t k, const char* what) {
  if (k < 1 || k > s.m())
    throw ConfigError(std::string(what) + " needs 1 <= dimension <= " + std::to_string(s.m()));
  if (s.n() <= k) throw DegenerateSampleError(std::string(what) + " needs n > " + std::to_string(k));
}

void fill_location(SubspaceFit& fit, const Sample& s, DepthKind kind, const SearchConfig& cfg) {
  const Sample y = project(s, fit.B_q);
  const DepthOptions& opts = cfg.final_estimator.depth;
  fit.nu = deepest_point(y, kind, opts);
  try {
    fit.depths = sample_depths(y, kind, opts);
  } catch (const SingularCovarianceError&) {
    fit.depths.assign(s.n(), 0.0);
  }
}

}  // namespace

void SearchConfig::validate() const {
  if (restarts < 1) throw ConfigError("restarts must be >= 1");
  if (!(step_decay > 0.0 && step_decay < 1.0)) throw ConfigError("step_decay must lie in (0, 1)");
  if (!(step_init > 0.0)) throw ConfigError("step_init must be positive");
  if (!(min_step >= 0.0)) throw ConfigError("min_step must be nonnegative");
}

DispersionEstimate dispersion_of_frame(const Sample& s, const Frame& b, DepthKind kind, const EstimatorConfig& est,
                                       RngStream rng) {
  return estimate_dispersion(project(s, b), kind, est, rng);
}

RngStream final_stream(const SearchConfig& cfg) { return cfg.rng.derive(kFinalStreamId); }

SubspaceFit minimize_dispersion(const Sample& s, std::size_t q, DepthKind kind, const SearchConfig& cfg) {
  check_search_args(s, q, "minimize_dispersion");
  SubspaceFit fit;
  if (q == s.m()) {
    fit.B_q = Frame::identity(q);
    fit.sigma = dispersion_of_frame(s, fit.B_q, kind, cfg.final_estimator, final_stream(cfg));
    fit.search_value = fit.sigma.value;
  } else {
    SearchOutcome out = search(s, q, 1.0, kind, cfg);
    fit.B_q = std::move(out.frame);
    fit.B_p = complement_frame(fit.B_q);
    fit.search_value = out.value;
    fit.degenerate_flat = out.flat;
    fit.trace = std::move(out.trace);
    fit.restarts_used = cfg.restarts;
    fit.sigma = dispersion_of_frame(s, fit.B_q, kind, cfg.final_estimator, final_stream(cfg));
  }
  fill_location(fit, s, kind, cfg);
  return fit;
}

SubspaceFit maximize_dispersion(const Sample& s, std::size_t p, DepthKind kind, const SearchConfig& cfg) {
  check_search_args(s, p, "maximize_dispersion");
  if (p == s.m()) throw ConfigError("maximize_dispersion needs p < m; p = m is the full-sample dispersion");
  SearchOutcome out = search(s, p, -1.0, kind, cfg);
  SubspaceFit fit;
  fit.B_p = std::move(out.frame);
  fit.B_q = complement_frame(*fit.B_p);
  fit.search_value = out.value;
  fit.degenerate_flat = out.flat;
  fit.trace = std::move(out.trace);
  fit.restarts_used = cfg.restarts;
  fit.sigma = dispersion_of_frame(s, *fit.B_p, kind, cfg.final_estimator, final_stream(cfg));
  fill_location(fit, s, kind, cfg);
  return fit;
}

double central_subspace_depth(std::span<const double> y, const Sample& s, const Frame& b_q, DepthKind kind,
                              const DepthOptions& opts) {
  if (y.size() != b_q.rows()) throw ShapeError("projected point dimension does not match frame");
  return depth(y, project(s, b_q), kind, opts);
}

std::vector<double> deepest_point(const Sample& y, DepthKind kind, const DepthOptions& opts) {
  const std::size_t q = y.m();
  auto median = [&](std::size_t j) {
    auto v = y.column(j);
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  if (kind == DepthKind::Mahalanobis) return sample_mean(y);
  std::vector<double> nu(q);
  if (q != 2) {
    for (std::size_t j = 0; j < q; ++j) nu[j] = median(j);
    return nu;
  }
  const DepthEvaluator eval(y, kind, opts);
  std::vector<double> d(y.n());
  parallel_for(y.n(), [&](std::size_t i) { d[i] = eval(y.row(i)); });
  const std::size_t arg = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
  nu = {y(arg, 0), y(arg, 1)};
  double best = d[arg];
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < y.n(); ++i) {
    const double dist = std::hypot(y(i, 0) - nu[0], y(i, 1) - nu[1]);
    if (dist > 0) h = std::min(h, dist);
  }
  if (!std::isfinite(h)) return nu;
  constexpr int kGrid = 5;
  for (int round = 0; round < 2; ++round) {
    const std::vector<double> center = nu;
    for (int a = -kGrid; a <= kGrid; ++a)
      for (int b = -kGrid; b <= kGrid; ++b) {
        const std::vector<double> x = {center[0] + h * a / kGrid, center[1] + h * b / kGrid};
        const double v = eval(x);
        if (v > best) {
          best = v;
          nu = x;
        }
      }
    h /= kGrid;
  }
  return nu;
}

}  // namespace cdepth
