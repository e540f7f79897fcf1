// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/numerics/special.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "cdepth/numerics/errors.hpp"

namespace cdepth {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double chi_square_sf(double x, std::size_t df) {
  if (df == 0) throw ConfigError("chi-square needs df >= 1");
  if (!(x >= 0.0)) throw DomainError("chi-square statistic must be nonnegative");
  if (x == 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * static_cast<double>(df), 0.5 * x);
}

}  // namespace cdepth
