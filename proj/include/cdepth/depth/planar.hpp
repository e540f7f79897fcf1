// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

namespace cdepth::planar {

struct Vec {
  double x;
  double y;
};

inline double cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
inline double dotp(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }

// Sign of cross(a - o, b - o), exact for any finite inputs.
int orientation(Vec o, Vec a, Vec b);

// Strict weak order of nonzero vectors a - o, b - o by polar angle in [0, 2*pi).
bool angle_less(Vec o, Vec a, Vec b);

// A run of points sharing one direction as seen from the fan origin.
struct Ray {
  Vec dir;
  std::size_t begin;     // offset into Fan::order
  std::size_t size;
  std::size_t left;      // points strictly counter-clockwise within (0, pi)
  std::size_t opposite;  // points at exactly pi
  std::size_t min_index;
  std::size_t rep;            // first point index on the ray
  std::size_t opposite_ray;   // index into Fan::rays, or npos
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct Fan {
  std::size_t zeros = 0;
  std::vector<std::size_t> zero_indices;
  std::vector<std::size_t> order;  // nonzero point indices by angle, then index
  std::vector<Ray> rays;
};

// Angular structure of pts - origin, built on exact orientation predicates.
Fan build_fan(Vec origin, const std::vector<Vec>& pts);

}  // namespace cdepth::planar
