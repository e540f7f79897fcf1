// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/io/synthetic.hpp"

#include <cmath>
#include <string>

#include "cdepth/numerics/errors.hpp"

namespace cdepth {

Sample mixture_of_squares(std::size_t n, double eta, RngStream rng) {
  Matrix x(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = rng.index(4);
    x(i, 0) = (c & 1 ? 1.0 : -1.0) + eta * rng.normal();
    x(i, 1) = (c & 2 ? 1.0 : -1.0) + eta * rng.normal();
  }
  return Sample(std::move(x));
}

Sample gaussian_diagonal(std::size_t n, const std::vector<double>& variances, RngStream rng) {
  Matrix x(n, variances.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < variances.size(); ++j) x(i, j) = std::sqrt(variances[j]) * rng.normal();
  return Sample(std::move(x));
}

Sample pod_two_line(std::size_t n, RngStream rng) {
  Matrix x(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 2.0 + 0.8 * rng.normal();
    double resid = 0.15 * rng.normal();
    if (rng.uniform() < 0.08) resid -= 0.6 + std::abs(0.5 * rng.normal());
    x(i, 0) = w;
    x(i, 1) = 1.5 + w + resid;
  }
  return Sample(std::move(x));
}

Sample generate_named(std::string_view name, std::size_t n, RngStream rng, double eta) {
  if (name == "mixture") return mixture_of_squares(n, eta, rng);
  if (name == "scenario-i") return gaussian_diagonal(n, {1, 1, 25}, rng);
  if (name == "scenario-iii") return gaussian_diagonal(n, {1, 1, 1, 25, 25}, rng);
  if (name == "spherical") return gaussian_diagonal(n, {1, 1, 1}, rng);
  if (name == "pca") return gaussian_diagonal(n, {25, 4, 1}, rng);
  if (name == "pod") return pod_two_line(n, rng);
  throw ConfigError("unknown generator '" + std::string(name) + "'");
}

}  // namespace cdepth
