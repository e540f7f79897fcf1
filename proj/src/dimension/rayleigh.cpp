// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <string>

#include "cdepth/dimension/dimension.hpp"
#include "cdepth/numerics/eigen.hpp"
#include "cdepth/numerics/errors.hpp"
#include "cdepth/numerics/special.hpp"

namespace cdepth {
namespace {

// Householder reflection taking unit vector from to unit vector to, applied to x.
std::vector<double> reflect(const std::vector<double>& from, std::span<const double> to, const std::vector<double>& x) {
  std::vector<double> w(from.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = from[j] - to[j];
  const double ww = dot(w, w);
  if (ww < 1e-300) return x;
  const double f = 2.0 * dot(w, x) / ww;
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] - f * w[j];
  return out;
}

// d unit vectors summing to a multiple of the anchor (odd d), or the d+1
// vertices of a regular simplex with the first at the anchor (even d).
std::vector<std::vector<double>> reference_axes(std::size_t d, std::span<const double> anchor) {
  std::vector<std::vector<double>> base;
  std::vector<double> center;
  if (d % 2 == 1) {
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<double> e(d, 0.0);
      e[i] = 1.0;
      base.push_back(std::move(e));
    }
    center.assign(d, 1.0 / std::sqrt(static_cast<double>(d)));
  } else {
    Matrix diffs(d, d + 1);
    for (std::size_t i = 0; i < d; ++i) {
      diffs(i, i) = 1.0;
      diffs(i, i + 1) = -1.0;
    }
    const Frame hyper = orthonormalize(diffs);
    for (std::size_t v = 0; v <= d; ++v) {
      std::vector<double> c(d + 1, -1.0 / static_cast<double>(d + 1));
      c[v] += 1.0;
      std::vector<double> coords(d);
      for (std::size_t i = 0; i < d; ++i) coords[i] = dot(hyper.row(i), c);
      const double len = norm(coords);
      for (double& x : coords) x /= len;
      base.push_back(std::move(coords));
    }
    center = base.front();
  }
  for (auto& r : base) r = reflect(center, anchor, r);
  return base;
}

}  // namespace

RayleighResult rayleigh_test(const Matrix& directions) {
  const std::size_t k = directions.rows();
  const std::size_t m = directions.cols();
  if (k == 0 || m == 0) throw ConfigError("rayleigh_test needs at least one direction");
  std::vector<double> mean(m, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(norm(directions.row(i)) - 1.0) > kUnitTolerance)
      throw NormError("direction " + std::to_string(i) + " is not a unit vector");
    for (std::size_t j = 0; j < m; ++j) mean[j] += directions(i, j);
  }
  for (double& v : mean) v /= static_cast<double>(k);
  const double kd = static_cast<double>(k);
  const double md = static_cast<double>(m);
  const double r = std::clamp(kd * md * dot(mean, mean), 0.0, kd * md);
  return {r, chi_square_sf(r, m)};
}

std::string_view to_string(SignRule rule) {
  return rule == SignRule::Balanced ? "balanced" : "largest-component";
}

SignRule parse_sign_rule(std::string_view name) {
  if (name == "balanced") return SignRule::Balanced;
  if (name == "largest-component") return SignRule::LargestComponent;
  throw ConfigError("unknown sign rule '" + std::string(name) + "'");
}

Matrix canonicalize_signs(const Matrix& directions, SignRule rule) {
  Matrix out = directions;
  const std::size_t k = out.rows();
  const std::size_t d = out.cols();
  if (k == 0) return out;
  if (rule == SignRule::LargestComponent) {
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t arg = 0;
      for (std::size_t j = 1; j < d; ++j)
        if (std::abs(out(i, j)) > std::abs(out(i, arg))) arg = j;
      if (out(i, arg) < 0)
        for (std::size_t j = 0; j < d; ++j) out(i, j) = -out(i, j);
    }
    return out;
  }
  // Cross-fitted: each parity class is signed against axes anchored on the
  // other class, so a direction never influences its own reference frame.
  std::vector<std::vector<std::vector<double>>> axes;
  for (std::size_t parity = 0; parity < 2; ++parity) {
    Matrix scatter(d, d);
    for (std::size_t i = 1 - parity; i < k; i += 2)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) scatter(a, b) += out(i, a) * out(i, b);
    const EigenDecomposition eig = jacobi_eigen(scatter);
    axes.push_back(reference_axes(d, eig.vectors.row(0)));
  }
  for (std::size_t i = 0; i < k; ++i) {
    int sign = 1;
    for (const auto& r : axes[i % 2])
      if (dot(out.row(i), r) < 0) sign = -sign;
    if (sign < 0)
      for (std::size_t j = 0; j < d; ++j) out(i, j) = -out(i, j);
  }
  return out;
}

}  // namespace cdepth
