// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>

#include "cdepth/numerics/errors.hpp"
#include "cdepth/subspace/subspace.hpp"

namespace cdepth {

void BandThresholds::validate() const {
  if (!(0.0 < central_lo && central_lo < central_hi && central_hi < blue && blue < red && red < 1.0))
    throw ConfigError("band thresholds must be strictly increasing inside (0, 1)");
}

std::string_view to_string(Band band) { return band == Band::Central ? "Central" : "Outer"; }

std::string_view to_string(TailFlag flag) {
  switch (flag) {
    case TailFlag::None:
      return "";
    case TailFlag::Blue:
      return "Blue";
    case TailFlag::Red:
      return "Red";
  }
  return "";
}

QuantileBand classify_order(double order, const BandThresholds& t) {
  QuantileBand out{order, Band::Outer, TailFlag::None};
  if (order >= t.central_lo && order <= t.central_hi) out.band = Band::Central;
  if (order > t.red) {
    out.flag = TailFlag::Red;
  } else if (order > t.blue) {
    out.flag = TailFlag::Blue;
  } else if (t.two_sided) {
    const double mirrored = 1.0 - order;
    if (mirrored > t.red) {
      out.flag = TailFlag::Red;
    } else if (mirrored > t.blue) {
      out.flag = TailFlag::Blue;
    }
  }
  return out;
}

std::vector<QuantileBand> quantile_bands(const Sample& s, const Frame& b_q, const BandThresholds& t) {
  if (b_q.rows() != 1) throw BandDimensionError("quantile bands need a one-dimensional projection");
  t.validate();
  const Sample y = project(s, b_q);
  const std::size_t n = y.n();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return y(a, 0) < y(b, 0); });
  std::vector<QuantileBand> out(n);
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo + 1;
    while (hi < n && y(idx[hi], 0) == y(idx[lo], 0)) ++hi;
    // 1-based ranks lo+1 .. hi share the midrank
    const double midrank = 0.5 * static_cast<double>(lo + 1 + hi);
    const double order = (midrank - 0.5) / static_cast<double>(n);
    for (std::size_t r = lo; r < hi; ++r) out[idx[r]] = classify_order(order, t);
    lo = hi;
  }
  return out;
}

}  // namespace cdepth
