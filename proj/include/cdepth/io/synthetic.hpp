// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "cdepth/depth/sample.hpp"
#include "cdepth/numerics/rng.hpp"

namespace cdepth {

// Equal mixture of N(c, eta^2 I) over the four centers (+-1, +-1).
Sample mixture_of_squares(std::size_t n, double eta, RngStream rng);
// Independent centered normals with the given variances.
Sample gaussian_diagonal(std::size_t n, const std::vector<double>& variances, RngStream rng);
// Log weight and log price along one line, plus a minority of underpriced
// records whose price residual has a heavy lower tail.
Sample pod_two_line(std::size_t n, RngStream rng);

// Named generators for the CLI: mixture, scenario-i, scenario-iii, spherical, pod.
Sample generate_named(std::string_view name, std::size_t n, RngStream rng, double eta = 0.1);

}  // namespace cdepth
