// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cdepth/depth/depth.hpp"
#include "cdepth/depth/sample.hpp"
#include "cdepth/dispersion/dispersion.hpp"
#include "cdepth/numerics/frame.hpp"
#include "cdepth/numerics/rng.hpp"

namespace cdepth {

struct SearchConfig {
  std::size_t restarts = 8;
  std::size_t coarse_grid = 64;
  std::size_t local_iters = 200;
  double step_init = 0.3;
  double step_decay = 0.95;
  // Local descent stops once the annealed step falls below this.
  double min_step = 1e-4;
  RngStream rng{0, 0};
  EstimatorConfig search_estimator = EstimatorConfig::search_budget();
  EstimatorConfig final_estimator{};
  bool record_trace = false;

  void validate() const;
};

struct SubspaceFit {
  std::optional<Frame> B_p;  // absent when q = m
  Frame B_q = Frame::identity(1);
  // sigma of the optimized frame: B_q for minimization, B_p for maximization.
  DispersionEstimate sigma;
  double search_value = 0.0;
  std::vector<double> nu;      // deepest point of the B_q projection
  std::vector<double> depths;  // per sample point, along B_q
  std::size_t restarts_used = 0;
  bool degenerate_flat = false;
  // Every objective value seen during the search, in restart order.
  std::vector<double> trace;
};

DispersionEstimate dispersion_of_frame(const Sample& s, const Frame& b, DepthKind kind, const EstimatorConfig& est,
                                       RngStream rng);
// Stream used for the final re-evaluation of sigma.
RngStream final_stream(const SearchConfig& cfg);

SubspaceFit minimize_dispersion(const Sample& s, std::size_t q, DepthKind kind, const SearchConfig& cfg);
SubspaceFit maximize_dispersion(const Sample& s, std::size_t p, DepthKind kind, const SearchConfig& cfg);

double central_subspace_depth(std::span<const double> y, const Sample& s, const Frame& b_q, DepthKind kind,
                              const DepthOptions& opts = {});
// Deepest point of a (projected) sample: median in 1-D, refined sample argmax
// in 2-D, coordinate-wise median beyond; the mean for Mahalanobis depth.
std::vector<double> deepest_point(const Sample& y, DepthKind kind, const DepthOptions& opts = {});

enum class Band { Central, Outer };
enum class TailFlag { None, Blue, Red };

struct BandThresholds {
  double central_lo = 0.25;
  double central_hi = 0.75;
  double blue = 0.95;
  double red = 0.975;
  bool two_sided = false;

  void validate() const;
};

struct QuantileBand {
  double order;
  Band band;
  TailFlag flag;
};

std::string_view to_string(Band band);
std::string_view to_string(TailFlag flag);

// order_i = (midrank_i - 0.5) / n of the one-dimensional projection.
std::vector<QuantileBand> quantile_bands(const Sample& s, const Frame& b_q, const BandThresholds& t = {});
QuantileBand classify_order(double order, const BandThresholds& t);

}  // namespace cdepth
