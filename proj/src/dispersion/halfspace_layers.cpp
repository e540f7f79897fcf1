// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

// The planar halfspace depth integral is (1/n) * sum_k area(D_k), where D_k is
// the region of depth >= k/n. Each D_k is an intersection of halfplanes
// bounded by lines through two sample points (the directions at which the
// k-th order statistic of the projections changes hands) plus a fixed set of
// directions that keeps every arc between constraints shorter than pi.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cdepth/depth/planar.hpp"
#include "cdepth/dispersion/dispersion.hpp"
#include "cdepth/numerics/errors.hpp"

namespace cdepth {
namespace {

using planar::Vec;

struct HalfPlane {
  double a;
  double b;
  double c;  // a*x + b*y >= c
};

using Polygon = std::vector<Vec>;

void clip(const Polygon& poly, const HalfPlane& h, Polygon& out) {
  out.clear();
  if (poly.empty()) return;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec p = poly[i];
    const Vec q = poly[(i + 1) % poly.size()];
    const double dp = h.a * p.x + h.b * p.y - h.c;
    const double dq = h.a * q.x + h.b * q.y - h.c;
    if (dp >= 0) out.push_back(p);
    if ((dp > 0 && dq < 0) || (dp < 0 && dq > 0)) {
      const double t = dp / (dp - dq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  if (out.size() < 3) out.clear();
}

double area(const Polygon& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec p = poly[i];
    const Vec q = poly[(i + 1) % poly.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return std::abs(0.5 * s);
}

}  // namespace

DispersionEstimate dispersion_halfspace_2d(const Sample& s) {
  if (s.m() != 2) throw ShapeError("dispersion_halfspace_2d needs a planar sample");
  const std::size_t n = s.n();
  DispersionEstimate est;
  est.method = DispersionMethod::Exact2D;
  if (n < 3) return est;

  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cx += s(i, 0);
    cy += s(i, 1);
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  std::vector<Vec> pts(n);
  double lox = 0.0, hix = 0.0, loy = 0.0, hiy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = {s(i, 0) - cx, s(i, 1) - cy};
    lox = std::min(lox, pts[i].x);
    hix = std::max(hix, pts[i].x);
    loy = std::min(loy, pts[i].y);
    hiy = std::max(hiy, pts[i].y);
  }
  if (hix - lox == 0.0 || hiy - loy == 0.0) return est;

  // levels[k] holds the constraints of D_{k+1}.
  std::vector<std::vector<HalfPlane>> levels(n);
  constexpr int kExtraDirections = 8;
  std::vector<double> proj(n);
  for (int r = 0; r < kExtraDirections; ++r) {
    const double ang = 2.0 * std::numbers::pi * r / kExtraDirections;
    const double ux = std::cos(ang);
    const double uy = std::sin(ang);
    for (std::size_t i = 0; i < n; ++i) proj[i] = ux * pts[i].x + uy * pts[i].y;
    std::sort(proj.begin(), proj.end());
    for (std::size_t k = 0; k < n; ++k) levels[k].push_back({ux, uy, proj[k]});
  }

  for (std::size_t i = 0; i < n; ++i) {
    const planar::Fan fan = planar::build_fan(pts[i], pts);
    // fan includes point i itself among the zeros.
    bool owner = true;
    for (std::size_t z : fan.zero_indices)
      if (z < i) owner = false;
    if (!owner) continue;
    const std::size_t g = fan.rays.size();
    for (std::size_t r = 0; r < g; ++r) {
      const planar::Ray& ray = fan.rays[r];
      if (ray.min_index < i) continue;
      if (ray.opposite_ray != planar::Ray::npos && fan.rays[ray.opposite_ray].min_index < i) continue;
      const std::size_t left = ray.left;
      const std::size_t on = fan.zeros + ray.size + ray.opposite;
      const std::size_t right = n - left - on;
      const Vec d = ray.dir;
      const Vec p = pts[i];
      // Right side closed: cross(d, x - p) <= 0.
      const HalfPlane rside{d.y, -d.x, d.y * p.x - d.x * p.y};
      const HalfPlane lside{-d.y, d.x, -d.y * p.x + d.x * p.y};
      for (std::size_t k = left; k < left + on && k < n; ++k) levels[k].push_back(rside);
      for (std::size_t k = right; k < right + on && k < n; ++k) levels[k].push_back(lside);
    }
  }

  const double padx = 0.1 * (hix - lox) + 1e-9;
  const double pady = 0.1 * (hiy - loy) + 1e-9;
  // D_{k+1} lies inside D_k, so each level starts from the previous polygon.
  Polygon poly = {{lox - padx, loy - pady}, {hix + padx, loy - pady}, {hix + padx, hiy + pady}, {lox - padx, hiy + pady}};
  Polygon scratch;
  double total = 0.0;
  for (std::size_t k = 0; k < n && !poly.empty(); ++k) {
    double x0 = poly[0].x, x1 = x0, y0 = poly[0].y, y1 = y0;
    for (const Vec& v : poly) {
      x0 = std::min(x0, v.x);
      x1 = std::max(x1, v.x);
      y0 = std::min(y0, v.y);
      y1 = std::max(y1, v.y);
    }
    for (const HalfPlane& h : levels[k]) {
      // Skip constraints that hold on the whole bounding box.
      if (std::min(h.a * x0, h.a * x1) + std::min(h.b * y0, h.b * y1) >= h.c) continue;
      clip(poly, h, scratch);
      poly.swap(scratch);
      if (poly.empty()) break;
    }
    total += area(poly);
  }
  est.value = total / static_cast<double>(n);
  return est;
}

}  // namespace cdepth
