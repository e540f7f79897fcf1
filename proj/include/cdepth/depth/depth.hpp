// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdepth/depth/sample.hpp"
#include "cdepth/numerics/rng.hpp"

namespace cdepth {

enum class DepthKind { Halfspace, Simplicial, Mahalanobis };

std::string_view to_string(DepthKind kind);
DepthKind parse_depth_kind(std::string_view name);

inline constexpr double kBarycentricTolerance = 1e-12;
inline constexpr double kConditionLimit = 1e12;
inline constexpr std::size_t kSimplicialEnumerationLimit = 10'000'000;

double halfspace_depth_1d(double x, const Sample& s);
double halfspace_depth_2d(std::span<const double> x, const Sample& s);
// n_dirs unit directions; in m = 1 the deterministic sequence +1, -1, +1, ...
Matrix random_directions(std::size_t n_dirs, std::size_t m, RngStream& rng);
double halfspace_depth_approx(std::span<const double> x, const Sample& s, std::size_t n_dirs,
                              RngStream rng);
// Same minimum over an explicit list of directions (rows of dirs).
double halfspace_depth_directions(std::span<const double> x, const Sample& s, const Matrix& dirs);

double simplicial_depth_1d(double x, const Sample& s);
// Exact planar simplicial depth over triangles without replacement, O(n log n).
double simplicial_depth_2d(std::span<const double> x, const Sample& s);
double simplicial_depth_exact(std::span<const double> x, const Sample& s);

struct MonteCarloDepth {
  double value;
  double std_error;
  std::size_t draws;
};
MonteCarloDepth simplicial_depth_mc(std::span<const double> x, const Sample& s, std::size_t draws,
                                    RngStream rng);

double mahalanobis_depth(std::span<const double> x, const Sample& s);

// Closed simplex containment with the barycentric tolerance; degenerate
// simplices fall back to their lower-dimensional faces.
bool in_closed_simplex(std::span<const double> x, const Sample& s, std::span<const std::size_t> vertices);

struct DepthOptions {
  std::size_t dirs_per_dim = 500;
  std::size_t simplicial_draws = 20000;
  // Exact enumeration in m >= 3 while C(n, m+1) stays below this.
  std::size_t simplicial_exact_subsets = 200'000;
  RngStream rng{0, 0};
};

// Repeated depth queries against one sample, with per-kind precomputation.
class DepthEvaluator {
 public:
  DepthEvaluator(const Sample& s, DepthKind kind, const DepthOptions& opts = {});
  ~DepthEvaluator();
  DepthEvaluator(DepthEvaluator&&) noexcept;
  DepthEvaluator& operator=(DepthEvaluator&&) noexcept;

  double operator()(std::span<const double> x) const;
  DepthKind kind() const noexcept { return kind_; }

 private:
  struct Impl;
  DepthKind kind_;
  std::unique_ptr<Impl> impl_;
};

double depth(std::span<const double> x, const Sample& s, DepthKind kind, const DepthOptions& opts = {});
// Depth of every sample point with respect to the sample itself.
std::vector<double> sample_depths(const Sample& s, DepthKind kind, const DepthOptions& opts = {});

}  // namespace cdepth
