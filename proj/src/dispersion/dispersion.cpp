// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/dispersion/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cdepth/numerics/eigen.hpp"
#include "cdepth/numerics/errors.hpp"
#include "cdepth/numerics/parallel.hpp"
#include "cdepth/numerics/special.hpp"

namespace cdepth {
namespace {

std::vector<double> sorted_values(const Sample& s) {
  if (s.m() != 1) throw ShapeError("one-dimensional dispersion needs m = 1");
  auto v = s.column(0);
  std::sort(v.begin(), v.end());
  return v;
}

// Sum of w(i) * (x[i] - x[i-1]) for a weight with w(i) = w(n - i); terms are
// paired from both ends so reversing the sample gives the same bits.
template <class W>
double symmetric_gap_sum(const std::vector<double>& x, W w) {
  const std::size_t n = x.size();
  double sum = 0.0;
  for (std::size_t i = 1, j = n - 1; i <= j; ++i, --j) {
    const double a = w(i) * (x[i] - x[i - 1]);
    sum += i == j ? a : a + w(j) * (x[j] - x[j - 1]);
  }
  return sum;
}

DispersionEstimate exact(double value) {
  DispersionEstimate e;
  e.value = value;
  e.method = DispersionMethod::Exact1D;
  return e;
}

std::size_t factorial(std::size_t q) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= q; ++i) f *= i;
  return f;
}

// Generator of the d-dimensional Kronecker sequence (golden ratio generalization).
std::vector<double> kronecker_alpha(std::size_t d) {
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(d + 1));
  std::vector<double> alpha(d);
  for (std::size_t j = 0; j < d; ++j) alpha[j] = std::fmod(std::pow(1.0 / phi, static_cast<double>(j + 1)), 1.0);
  return alpha;
}

}  // namespace

std::string_view to_string(DispersionMethod method) {
  switch (method) {
    case DispersionMethod::Exact1D:
      return "Exact1D";
    case DispersionMethod::Exact2D:
      return "Exact2D";
    case DispersionMethod::GiniMC:
      return "GiniMC";
    case DispersionMethod::BoxQMC:
      return "BoxQMC";
    case DispersionMethod::ClosedForm:
      return "ClosedForm";
  }
  return "unknown";
}

DispersionEstimate dispersion_halfspace_1d(const Sample& s) {
  const auto x = sorted_values(s);
  const std::size_t n = x.size();
  const double sum = symmetric_gap_sum(x, [n](std::size_t i) { return static_cast<double>(std::min(i, n - i)); });
  return exact(sum / static_cast<double>(n));
}

DispersionEstimate dispersion_simplicial_1d(const Sample& s) {
  const auto x = sorted_values(s);
  const std::size_t n = x.size();
  const double sum = symmetric_gap_sum(x, [n](std::size_t i) { return static_cast<double>(i * (n - i)); });
  const double nn = static_cast<double>(n);
  return exact(2.0 * sum / (nn * nn));
}

DispersionEstimate dispersion_gini_mc(const Sample& s, std::size_t draws, RngStream rng) {
  const std::size_t q = s.m();
  if (draws == 0) throw ConfigError("dispersion_gini_mc needs draws >= 1");
  if (s.n() < q + 1) throw DegenerateSampleError("Gini estimator needs n >= q + 1");
  const double denom = static_cast<double>(factorial(q));
  Matrix edges(q, q);
  double sum = 0.0;
  double sumsq = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    const std::size_t base = rng.index(s.n());
    for (std::size_t a = 0; a < q; ++a) {
      const std::size_t v = rng.index(s.n());
      for (std::size_t j = 0; j < q; ++j) edges(a, j) = s(v, j) - s(base, j);
    }
    const double vol = std::abs(determinant(edges)) / denom;
    sum += vol;
    sumsq += vol * vol;
  }
  const double k = static_cast<double>(draws);
  const double mean = sum / k;
  const double var = draws > 1 ? std::max(0.0, (sumsq - k * mean * mean) / (k - 1.0)) : 0.0;
  DispersionEstimate e;
  e.value = mean;
  e.method = DispersionMethod::GiniMC;
  e.std_error = std::sqrt(var / k);
  e.draws = draws;
  return e;
}

DispersionEstimate dispersion_box_qmc(const Sample& s, DepthKind kind, std::size_t nodes, RngStream rng,
                                      const DepthOptions& depth_opts) {
  if (nodes == 0) throw ConfigError("dispersion_box_qmc needs nodes >= 1");
  const std::size_t q = s.m();
  std::vector<double> lo(q), width(q);
  double volume = 1.0;
  for (std::size_t j = 0; j < q; ++j) {
    const auto col = s.column(j);
    const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
    lo[j] = *mn;
    width[j] = *mx - *mn;
    volume *= width[j];
  }
  DispersionEstimate e;
  e.method = DispersionMethod::BoxQMC;
  e.draws = nodes;
  if (volume == 0.0) {
    e.value = 0.0;
    e.std_error = 0.0;
    return e;
  }
  const std::size_t reps = std::clamp<std::size_t>(nodes, 1, 8);
  const std::size_t per = nodes / reps;
  const auto alpha = kronecker_alpha(q);
  std::vector<std::vector<double>> shifts(reps, std::vector<double>(q));
  for (auto& sh : shifts)
    for (double& v : sh) v = rng.uniform();
  const DepthEvaluator eval(s, kind, depth_opts);
  std::vector<double> means(reps);
  parallel_for(reps, [&](std::size_t r) {
    std::vector<double> x(q);
    double sum = 0.0;
    for (std::size_t i = 0; i < per; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        double u = shifts[r][j] + static_cast<double>(i + 1) * alpha[j];
        u -= std::floor(u);
        x[j] = lo[j] + u * width[j];
      }
      sum += eval(x);
    }
    means[r] = sum / static_cast<double>(per);
  });
  double mean = 0.0;
  for (double v : means) mean += v;
  mean /= static_cast<double>(reps);
  double var = 0.0;
  for (double v : means) var += (v - mean) * (v - mean);
  var = reps > 1 ? var / static_cast<double>(reps - 1) : 0.0;
  e.value = volume * mean;
  e.std_error = volume * std::sqrt(var / static_cast<double>(reps));
  e.draws = per * reps;
  return e;
}

double psi(double mu, double eta) {
  if (!(eta > 0.0)) throw DomainError("psi needs eta > 0");
  const double a = std::abs(mu);
  const double z = a / eta;
  return a * (2.0 * std_normal_cdf(z) - 1.0) + 2.0 * eta * std_normal_pdf(z);
}

double mixture_dispersion_oracle(double u, double eta) {
  if (!(std::abs(u) <= 1.0)) throw DomainError("mixture oracle needs |u| <= 1");
  const double a = std::abs(u);
  const double w = std::sqrt(1.0 - a * a);
  const double mu[4] = {a + w, a - w, -(a - w), -(a + w)};
  double sum = 0.0;
  for (double m : mu) sum += psi(m, eta);
  return 0.25 * sum;
}

double mahalanobis_tau0(std::size_t m) {
  if (m == 0) throw ConfigError("mahalanobis_tau0 needs m >= 1");
  if (m == 1) return std::numbers::pi;
  // integral of (1+|x|^2)^-(m+1) over R^m = pi^(m/2) Gamma(m/2+1) / Gamma(m+1)
  const double md = static_cast<double>(m);
  return std::exp(0.5 * md * std::log(std::numbers::pi) + std::lgamma(0.5 * md + 1.0) - std::lgamma(md + 1.0));
}

std::string_view mahalanobis_kernel(std::size_t m) {
  return m == 1 ? "1/(1+t^2)" : "(1+t^2)^-(m+1)";
}

DispersionEstimate mahalanobis_dispersion(const Sample& s) {
  if (s.n() < 2) throw SingularCovarianceError("covariance needs at least two points");
  const EigenDecomposition eig = jacobi_eigen(sample_covariance(s));
  const double hi = eig.values.front();
  const double lo = eig.values.back();
  if (!(lo > 0.0) || hi / lo > kConditionLimit)
    throw SingularCovarianceError("sample covariance is singular or ill-conditioned");
  double log_det = 0.0;
  for (double v : eig.values) log_det += std::log(v);
  DispersionEstimate e;
  e.value = mahalanobis_tau0(s.m()) * std::exp(0.5 * log_det);
  e.method = DispersionMethod::ClosedForm;
  return e;
}

EstimatorConfig EstimatorConfig::search_budget() {
  EstimatorConfig c;
  c.gini_draws = 4000;
  c.qmc_nodes_per_dim = 1024;
  c.exact2d_max_n = 400;
  c.depth.dirs_per_dim = 100;
  c.depth.simplicial_draws = 2000;
  return c;
}

DispersionEstimate estimate_dispersion(const Sample& s, DepthKind kind, const EstimatorConfig& est, RngStream rng) {
  const std::size_t q = s.m();
  switch (kind) {
    case DepthKind::Halfspace:
      if (q == 1) return dispersion_halfspace_1d(s);
      if (q == 2 && s.n() <= est.exact2d_max_n) return dispersion_halfspace_2d(s);
      return dispersion_box_qmc(s, kind, est.qmc_nodes_per_dim * q, rng.derive(1), est.depth);
    case DepthKind::Simplicial:
      if (q == 1) return dispersion_simplicial_1d(s);
      return dispersion_gini_mc(s, est.gini_draws, rng.derive(2));
    case DepthKind::Mahalanobis: {
      DispersionEstimate e;
      e.method = DispersionMethod::ClosedForm;
      const double det = s.n() < 2 ? 0.0 : determinant(sample_covariance(s));
      e.value = mahalanobis_tau0(q) * std::sqrt(std::max(det, 0.0));
      return e;
    }
  }
  throw ConfigError("unknown depth kind");
}

}  // namespace cdepth
