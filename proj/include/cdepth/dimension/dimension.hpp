// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cdepth/depth/depth.hpp"
#include "cdepth/depth/sample.hpp"
#include "cdepth/dispersion/dispersion.hpp"
#include "cdepth/numerics/frame.hpp"
#include "cdepth/numerics/matrix.hpp"
#include "cdepth/subspace/subspace.hpp"

namespace cdepth {

inline constexpr double kUnitTolerance = 1e-8;

struct RayleighResult {
  double statistic;
  double p_value;
};

// Rows of directions are unit vectors in R^m.
RayleighResult rayleigh_test(const Matrix& directions);

// How the antipodal sign of each subsample direction is fixed before testing.
//   LargestComponent: largest-|component| coordinate positive.
//   Balanced: sign of prod_i <v, r_i> over a zero-mean set of reference axes
//             anchored at the principal axis of the other-parity rows.
enum class SignRule { LargestComponent, Balanced };

std::string_view to_string(SignRule rule);
SignRule parse_sign_rule(std::string_view name);
Matrix canonicalize_signs(const Matrix& directions, SignRule rule);

struct DimensionOptions {
  std::size_t k = 500;
  std::size_t sub_size = 20;
  double alpha = 0.05;
  SignRule sign_rule = SignRule::Balanced;
  // Budget for the k subsample fits; rng and estimators come from the main config.
  std::size_t sub_restarts = 2;
  std::size_t sub_coarse_grid = 16;
  std::size_t sub_local_iters = 40;
  double sub_step_decay = 0.85;
  double sub_min_step = 1e-3;

  void validate(std::size_t n) const;
};

struct DimensionStage {
  std::size_t p_candidate;
  std::size_t ambient_dim;
  double R_k;
  double p_value;
  bool accepted;
};

struct DimensionReport {
  std::vector<DimensionStage> stages;
  std::size_t p_star = 0;
  std::size_t q_star = 0;
  std::optional<Frame> B_p_star;  // absent when p* = 0
  Frame B_q_star = Frame::identity(1);
  std::size_t k = 0;
  std::size_t s = 0;
  double alpha = 0.0;
  SignRule sign_rule = SignRule::Balanced;
  std::optional<SubspaceFit> fit;  // final fit when p* > 0
};

DimensionReport select_dimension(const Sample& s, DepthKind kind, const DimensionOptions& opts,
                                 const SearchConfig& cfg);

double halfspace_radius();
double simplicial_radius(std::size_t m);
double profile_radius(DepthKind kind, std::size_t m);

Sample rescale_to_ball(const Sample& s, double radius);

struct ProfileEntry {
  std::size_t p;
  DispersionEstimate sigma_max;
  Frame frame;
};

struct DispersionProfile {
  double radius;
  std::vector<ProfileEntry> per_p;
};

DispersionProfile dispersion_profile(const Sample& s, DepthKind kind, const SearchConfig& cfg);

struct PcaFrames {
  Frame B_p;
  Frame B_q;
  std::vector<double> eigenvalues;
};

PcaFrames pca_frames(const Sample& s, std::size_t p);

}  // namespace cdepth
