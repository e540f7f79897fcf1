// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "cdepth/depth/depth.hpp"
#include "cdepth/depth/sample.hpp"
#include "cdepth/numerics/rng.hpp"

namespace cdepth {

enum class DispersionMethod { Exact1D, Exact2D, GiniMC, BoxQMC, ClosedForm };

std::string_view to_string(DispersionMethod method);

struct DispersionEstimate {
  double value = 0.0;
  DispersionMethod method = DispersionMethod::Exact1D;
  std::optional<double> std_error;
  std::optional<std::size_t> draws;

  bool stochastic() const noexcept { return std_error.has_value(); }
};

DispersionEstimate dispersion_halfspace_1d(const Sample& s);
DispersionEstimate dispersion_simplicial_1d(const Sample& s);
// Exact integral of planar empirical halfspace depth, summed over depth layers.
DispersionEstimate dispersion_halfspace_2d(const Sample& s);
DispersionEstimate dispersion_gini_mc(const Sample& s, std::size_t draws, RngStream rng);
// Randomly shifted Kronecker lattice over the sample bounding box, split
// into independent replicates for the standard error.
DispersionEstimate dispersion_box_qmc(const Sample& s, DepthKind kind, std::size_t nodes, RngStream rng,
                                      const DepthOptions& depth_opts = {});

double psi(double mu, double eta);
double mixture_dispersion_oracle(double u, double eta);

// Radial kernel h(t) = 1/(1+t^2) in m = 1 and (1+t^2)^-(m+1) otherwise.
double mahalanobis_tau0(std::size_t m);
std::string_view mahalanobis_kernel(std::size_t m);
DispersionEstimate mahalanobis_dispersion(const Sample& s);

struct EstimatorConfig {
  std::size_t gini_draws = 20000;
  std::size_t qmc_nodes_per_dim = 4096;
  std::size_t qmc_replicates = 8;
  // Planar halfspace uses the exact layer integral up to this n.
  std::size_t exact2d_max_n = 2000;
  DepthOptions depth{};

  static EstimatorConfig search_budget();
};

// Routing: q = 1 exact; simplicial q >= 2 Gini MC; halfspace q = 2 layer
// integral when small, else box QMC; mahalanobis closed form.
DispersionEstimate estimate_dispersion(const Sample& s, DepthKind kind, const EstimatorConfig& est, RngStream rng);

}  // namespace cdepth
