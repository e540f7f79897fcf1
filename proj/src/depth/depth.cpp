// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/depth/depth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdepth/depth/planar.hpp"
#include "cdepth/numerics/eigen.hpp"
#include "cdepth/numerics/errors.hpp"

namespace cdepth {

namespace planar {

namespace {

// Upper half [0, pi) or lower half; exact since fl(a - b) keeps the sign.
bool lower_half(Vec o, Vec a) {
  const double dx = a.x - o.x;
  const double dy = a.y - o.y;
  return dy < 0 || (dy == 0 && dx < 0);
}

// Error-free transformations and a nonoverlapping expansion accumulator.
void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

struct Expansion {
  double e[24];
  int size = 0;

  void add(double b) {
    int k = 0;
    double q = b;
    for (int i = 0; i < size; ++i) {
      double h;
      two_sum(q, e[i], q, h);
      if (h != 0.0) e[k++] = h;
    }
    if (q != 0.0) e[k++] = q;
    size = k;
  }
  int sign() const { return size == 0 ? 0 : (e[size - 1] > 0 ? 1 : -1); }
};

// (a1 + a0) * (b1 + b0) added to acc with the given sign, exactly.
void add_product(Expansion& acc, double a1, double a0, double b1, double b0, double sign) {
  for (double u : {a1, a0})
    for (double v : {b1, b0}) {
      const double p = u * v;
      acc.add(sign * p);
      acc.add(sign * std::fma(u, v, -p));
    }
}

int exact_orientation(Vec o, Vec a, Vec b) {
  double ax1, ax0, ay1, ay0, bx1, bx0, by1, by0;
  two_sum(a.x, -o.x, ax1, ax0);
  two_sum(a.y, -o.y, ay1, ay0);
  two_sum(b.x, -o.x, bx1, bx0);
  two_sum(b.y, -o.y, by1, by0);
  Expansion acc;
  add_product(acc, ax1, ax0, by1, by0, 1.0);
  add_product(acc, ay1, ay0, bx1, bx0, -1.0);
  return acc.sign();
}

// Filtered sign of cross(a, b) for a = pa - o, b = pb - o computed in floating
// point; falls back to exact arithmetic near zero.
int filtered_cross(Vec ra, Vec rb, Vec o, Vec pa, Vec pb) {
  const double l = ra.x * rb.y;
  const double r = ra.y * rb.x;
  const double det = l - r;
  // forward error bound of the floating-point evaluation
  const double bound = 3.3306690738754716e-16 * (std::abs(l) + std::abs(r));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return exact_orientation(o, pa, pb);
}

}  // namespace

int orientation(Vec o, Vec a, Vec b) {
  return filtered_cross({a.x - o.x, a.y - o.y}, {b.x - o.x, b.y - o.y}, o, a, b);
}

bool angle_less(Vec o, Vec a, Vec b) {
  const bool ha = lower_half(o, a);
  const bool hb = lower_half(o, b);
  if (ha != hb) return !ha;
  return orientation(o, a, b) > 0;
}

Fan build_fan(Vec origin, const std::vector<Vec>& pts) {
  Fan fan;
  std::vector<Vec> rel(pts.size());
  std::vector<char> lower(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    rel[i] = {pts[i].x - origin.x, pts[i].y - origin.y};
    lower[i] = rel[i].y < 0 || (rel[i].y == 0 && rel[i].x < 0);
    if (pts[i].x == origin.x && pts[i].y == origin.y) {
      ++fan.zeros;
      fan.zero_indices.push_back(i);
    } else {
      fan.order.push_back(i);
    }
  }
  auto orient = [&](std::size_t a, std::size_t b) { return filtered_cross(rel[a], rel[b], origin, pts[a], pts[b]); };
  std::stable_sort(fan.order.begin(), fan.order.end(), [&](std::size_t a, std::size_t b) {
    if (lower[a] != lower[b]) return !lower[a];
    return orient(a, b) > 0;
  });
  // same ray: collinear with the origin and in the same half
  auto same_ray = [&](std::size_t a, std::size_t b) { return lower[a] == lower[b] && orient(a, b) == 0; };
  for (std::size_t p = 0; p < fan.order.size();) {
    const std::size_t first = fan.order[p];
    std::size_t q = p + 1;
    std::size_t lo = first;
    while (q < fan.order.size() && same_ray(first, fan.order[q])) {
      lo = std::min(lo, fan.order[q]);
      ++q;
    }
    fan.rays.push_back({rel[first], p, q - p, 0, 0, lo, first, Ray::npos});
    p = q;
  }
  const std::size_t g = fan.rays.size();
  auto ccw = [&](std::size_t a, std::size_t b) { return orient(fan.rays[a].rep, fan.rays[b].rep); };
  std::size_t end = 1;
  std::size_t window = 0;
  for (std::size_t i = 0; i < g; ++i) {
    if (end < i + 1) {
      end = i + 1;
      window = 0;
    }
    while (end < i + g && ccw(i, end % g) > 0) {
      window += fan.rays[end % g].size;
      ++end;
    }
    fan.rays[i].left = window;
    if (end < i + g && ccw(i, end % g) == 0) {
      // collinear and distinct from ray i, hence opposite
      fan.rays[i].opposite = fan.rays[end % g].size;
      fan.rays[i].opposite_ray = end % g;
    }
    if (end > i + 1) window -= fan.rays[(i + 1) % g].size;
  }
  return fan;
}

}  // namespace planar

namespace {

std::vector<planar::Vec> planar_points(const Sample& s) {
  std::vector<planar::Vec> pts(s.n());
  for (std::size_t i = 0; i < s.n(); ++i) pts[i] = {s(i, 0), s(i, 1)};
  return pts;
}

double choose(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

void require_dim(const Sample& s, std::size_t m, const char* what) {
  if (s.m() != m) throw ShapeError(std::string(what) + " needs dimension " + std::to_string(m));
}

void require_point(std::span<const double> x, const Sample& s) {
  if (x.size() != s.m()) throw ShapeError("query point dimension does not match sample");
}

// Solves the k x k system g * out = rhs in place; false when near-singular.
bool solve_small(std::vector<double> g, std::vector<double> rhs, std::size_t k, std::vector<double>& out) {
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(g[i * k + i]));
  if (scale == 0.0) return false;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(g[r * k + c]) > std::abs(g[piv * k + c])) piv = r;
    if (std::abs(g[piv * k + c]) <= 1e-12 * scale) return false;
    if (piv != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(g[c * k + j], g[piv * k + j]);
      std::swap(rhs[c], rhs[piv]);
    }
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = g[r * k + c] / g[c * k + c];
      for (std::size_t j = c; j < k; ++j) g[r * k + j] -= f * g[c * k + j];
      rhs[r] -= f * rhs[c];
    }
  }
  out.assign(k, 0.0);
  for (std::size_t c = k; c-- > 0;) {
    double v = rhs[c];
    for (std::size_t j = c + 1; j < k; ++j) v -= g[c * k + j] * out[j];
    out[c] = v / g[c * k + c];
  }
  return true;
}

}  // namespace

std::string_view to_string(DepthKind kind) {
  switch (kind) {
    case DepthKind::Halfspace:
      return "halfspace";
    case DepthKind::Simplicial:
      return "simplicial";
    case DepthKind::Mahalanobis:
      return "mahalanobis";
  }
  return "unknown";
}

DepthKind parse_depth_kind(std::string_view name) {
  if (name == "halfspace") return DepthKind::Halfspace;
  if (name == "simplicial") return DepthKind::Simplicial;
  if (name == "mahalanobis") return DepthKind::Mahalanobis;
  throw ConfigError("unknown depth kind '" + std::string(name) + "'");
}

double halfspace_depth_1d(double x, const Sample& s) {
  require_dim(s, 1, "halfspace_depth_1d");
  std::size_t below = 0;
  std::size_t above = 0;
  for (std::size_t i = 0; i < s.n(); ++i) {
    below += s(i, 0) <= x;
    above += s(i, 0) >= x;
  }
  return static_cast<double>(std::min(below, above)) / static_cast<double>(s.n());
}

double halfspace_depth_2d(std::span<const double> x, const Sample& s) {
  require_dim(s, 2, "halfspace_depth_2d");
  require_point(x, s);
  const planar::Fan fan = planar::build_fan({x[0], x[1]}, planar_points(s));
  const std::size_t nonzero = s.n() - fan.zeros;
  std::size_t open_max = 0;
  for (const auto& r : fan.rays) open_max = std::max(open_max, r.size + r.left);
  return static_cast<double>(fan.zeros + nonzero - open_max) / static_cast<double>(s.n());
}

Matrix random_directions(std::size_t n_dirs, std::size_t m, RngStream& rng) {
  Matrix dirs(n_dirs, m);
  if (m == 1) {
    for (std::size_t i = 0; i < n_dirs; ++i) dirs(i, 0) = i % 2 == 0 ? 1.0 : -1.0;
    return dirs;
  }
  for (std::size_t i = 0; i < n_dirs; ++i) {
    double len = 0.0;
    while (len == 0.0) {
      for (std::size_t j = 0; j < m; ++j) dirs(i, j) = rng.normal();
      len = norm(dirs.row(i));
    }
    for (std::size_t j = 0; j < m; ++j) dirs(i, j) /= len;
  }
  return dirs;
}

double halfspace_depth_directions(std::span<const double> x, const Sample& s, const Matrix& dirs) {
  require_point(x, s);
  if (dirs.cols() != s.m()) throw ShapeError("direction dimension does not match sample");
  std::size_t best = s.n();
  for (std::size_t d = 0; d < dirs.rows(); ++d) {
    const double t = dot(dirs.row(d), x);
    std::size_t c = 0;
    for (std::size_t i = 0; i < s.n(); ++i) c += dot(dirs.row(d), s.row(i)) <= t;
    best = std::min(best, c);
  }
  return static_cast<double>(best) / static_cast<double>(s.n());
}

double halfspace_depth_approx(std::span<const double> x, const Sample& s, std::size_t n_dirs, RngStream rng) {
  if (n_dirs == 0) throw ConfigError("halfspace_depth_approx needs n_dirs >= 1");
  return halfspace_depth_directions(x, s, random_directions(n_dirs, s.m(), rng));
}

double simplicial_depth_1d(double x, const Sample& s) {
  require_dim(s, 1, "simplicial_depth_1d");
  std::size_t le = 0;
  std::size_t lt = 0;
  for (std::size_t i = 0; i < s.n(); ++i) {
    le += s(i, 0) <= x;
    lt += s(i, 0) < x;
  }
  const double n = static_cast<double>(s.n());
  const double f = static_cast<double>(le) / n;
  const double fm = static_cast<double>(lt) / n;
  return 2.0 * f * (1.0 - f) + (f * f - fm * fm);
}

double simplicial_depth_2d(std::span<const double> x, const Sample& s) {
  require_dim(s, 2, "simplicial_depth_2d");
  require_point(x, s);
  if (s.n() < 3) return 0.0;
  const planar::Fan fan = planar::build_fan({x[0], x[1]}, planar_points(s));
  double open = 0.0;
  for (const auto& r : fan.rays)
    for (std::size_t k = 0; k < r.size; ++k) open += choose(r.size - 1 - k + r.left, 2);
  const double total = choose(s.n(), 3);
  return (total - open) / total;
}

bool in_closed_simplex(std::span<const double> x, const Sample& s, std::span<const std::size_t> vertices) {
  const std::size_t m = s.m();
  if (vertices.empty()) return false;
  for (std::size_t v : vertices)
    if (std::equal(x.begin(), x.end(), s.row(v).begin())) return true;
  const auto v0 = s.row(vertices[0]);
  double scale = 0.0;
  for (std::size_t j = 0; j < m; ++j) scale = std::max(scale, std::abs(x[j] - v0[j]));
  for (std::size_t a = 1; a < vertices.size(); ++a)
    for (std::size_t j = 0; j < m; ++j) scale = std::max(scale, std::abs(s(vertices[a], j) - v0[j]));
  if (vertices.size() == 1) return scale == 0.0;
  const std::size_t k = vertices.size() - 1;
  std::vector<double> g(k * k);
  std::vector<double> rhs(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      double v = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        v += (s(vertices[a + 1], j) - v0[j]) * (s(vertices[b + 1], j) - v0[j]);
      g[a * k + b] = v;
    }
    double r = 0.0;
    for (std::size_t j = 0; j < m; ++j) r += (s(vertices[a + 1], j) - v0[j]) * (x[j] - v0[j]);
    rhs[a] = r;
  }
  std::vector<double> lambda;
  if (!solve_small(g, rhs, k, lambda)) {
    std::vector<std::size_t> face(vertices.begin(), vertices.end() - 1);
    for (std::size_t drop = vertices.size(); drop-- > 0;) {
      face.clear();
      for (std::size_t a = 0; a < vertices.size(); ++a)
        if (a != drop) face.push_back(vertices[a]);
      if (in_closed_simplex(x, s, face)) return true;
    }
    return false;
  }
  double residual = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double y = v0[j];
    for (std::size_t a = 0; a < k; ++a) y += lambda[a] * (s(vertices[a + 1], j) - v0[j]);
    residual = std::max(residual, std::abs(y - x[j]));
  }
  if (residual > 1e-10 * std::max(1.0, scale)) return false;
  double total = 0.0;
  for (double l : lambda) {
    if (l < -kBarycentricTolerance) return false;
    total += l;
  }
  return 1.0 - total >= -kBarycentricTolerance;
}

double simplicial_depth_exact(std::span<const double> x, const Sample& s) {
  require_point(x, s);
  const std::size_t n = s.n();
  const std::size_t k = s.m() + 1;
  if (n < k) return 0.0;
  const double subsets = choose(n, k);
  if (subsets > static_cast<double>(kSimplicialEnumerationLimit))
    throw SizeError("exact simplicial depth would enumerate " + std::to_string(subsets) + " subsets");
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::size_t hits = 0;
  for (;;) {
    hits += in_closed_simplex(x, s, idx);
    std::size_t pos = k;
    while (pos-- > 0) {
      if (idx[pos] < n - k + pos) break;
      if (pos == 0) return static_cast<double>(hits) / subsets;
    }
    ++idx[pos];
    for (std::size_t j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

MonteCarloDepth simplicial_depth_mc(std::span<const double> x, const Sample& s, std::size_t draws, RngStream rng) {
  require_point(x, s);
  if (draws == 0) throw ConfigError("simplicial_depth_mc needs draws >= 1");
  const std::size_t n = s.n();
  const std::size_t k = s.m() + 1;
  if (n < k) return {0.0, 0.0, draws};
  std::vector<std::size_t> idx(k);
  std::size_t hits = 0;
  for (std::size_t d = 0; d < draws; ++d) {
    for (std::size_t a = 0; a < k; ++a) {
      bool fresh = false;
      while (!fresh) {
        idx[a] = rng.index(n);
        fresh = std::find(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(a), idx[a]) ==
                idx.begin() + static_cast<std::ptrdiff_t>(a);
      }
    }
    hits += in_closed_simplex(x, s, idx);
  }
  const double p = static_cast<double>(hits) / static_cast<double>(draws);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(draws)), draws};
}

double mahalanobis_depth(std::span<const double> x, const Sample& s) {
  require_point(x, s);
  return DepthEvaluator(s, DepthKind::Mahalanobis)(x);
}

double depth(std::span<const double> x, const Sample& s, DepthKind kind, const DepthOptions& opts) {
  return DepthEvaluator(s, kind, opts)(x);
}

}  // namespace cdepth
