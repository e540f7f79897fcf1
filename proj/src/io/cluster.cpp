// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/io/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "cdepth/numerics/errors.hpp"

namespace cdepth {

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::Complete:
      return "complete";
    case Linkage::Single:
      return "single";
    case Linkage::Average:
      return "average";
  }
  return "complete";
}

Linkage parse_linkage(std::string_view name) {
  if (name == "complete") return Linkage::Complete;
  if (name == "single") return Linkage::Single;
  if (name == "average") return Linkage::Average;
  throw ConfigError("unknown linkage '" + std::string(name) + "'");
}

std::vector<int> hclust_cut(std::span<const double> values, std::size_t groups, Linkage linkage) {
  const std::size_t n = values.size();
  if (groups < 1 || groups > n) throw ConfigError("group count must lie in [1, n]");
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = std::abs(values[i] - values[j]);
  std::vector<std::size_t> owner(n);
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> alive(n, true);
  for (std::size_t i = 0; i < n; ++i) owner[i] = i;
  for (std::size_t clusters = n; clusters > groups; --clusters) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0, bb = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b)
        if (alive[b] && dist[a * n + b] < best) {
          best = dist[a * n + b];
          ba = a;
          bb = b;
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (!alive[c] || c == ba || c == bb) continue;
      const double da = dist[ba * n + c];
      const double db = dist[bb * n + c];
      double d = 0.0;
      switch (linkage) {
        case Linkage::Complete:
          d = std::max(da, db);
          break;
        case Linkage::Single:
          d = std::min(da, db);
          break;
        case Linkage::Average:
          d = (static_cast<double>(size[ba]) * da + static_cast<double>(size[bb]) * db) /
              static_cast<double>(size[ba] + size[bb]);
          break;
      }
      dist[ba * n + c] = dist[c * n + ba] = d;
    }
    size[ba] += size[bb];
    alive[bb] = false;
    for (std::size_t i = 0; i < n; ++i)
      if (owner[i] == bb) owner[i] = ba;
  }
  std::map<std::size_t, int> number;
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = number.find(owner[i]);
    if (it == number.end()) it = number.emplace(owner[i], static_cast<int>(number.size()) + 1).first;
    out[i] = it->second;
  }
  return out;
}

std::size_t best_label_agreement(const std::vector<int>& groups, const std::vector<std::string>& labels) {
  if (groups.size() != labels.size()) throw ShapeError("group and label counts differ");
  std::vector<std::string> names = labels;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  const int g = groups.empty() ? 0 : *std::max_element(groups.begin(), groups.end());
  std::vector<std::vector<std::size_t>> counts(static_cast<std::size_t>(g), std::vector<std::size_t>(names.size()));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto l = static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), labels[i]) - names.begin());
    ++counts[static_cast<std::size_t>(groups[i] - 1)][l];
  }
  // Exhaustive assignment over label permutations; small label sets only.
  if (names.size() > 9) throw ConfigError("too many distinct labels for exhaustive matching");
  std::vector<std::size_t> perm(std::max(names.size(), static_cast<std::size_t>(g)));
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::size_t best = 0;
  do {
    std::size_t total = 0;
    for (std::size_t grp = 0; grp < static_cast<std::size_t>(g); ++grp)
      if (perm[grp] < names.size()) total += counts[grp][perm[grp]];
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace cdepth
