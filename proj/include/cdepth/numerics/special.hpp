// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

namespace cdepth {

double std_normal_cdf(double x);
double std_normal_pdf(double x);

// P(chi^2_df > x) through the regularized upper incomplete gamma Q(df/2, x/2).
double chi_square_sf(double x, std::size_t df);

}  // namespace cdepth
