// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "cdepth/numerics/frame.hpp"
#include "cdepth/numerics/matrix.hpp"

namespace cdepth {

inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kJacobiThreshold = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Frame vectors;               // row i pairs with values[i]
};

// Cyclic Jacobi rotations. Throws SymmetryError for non-symmetric input.
EigenDecomposition jacobi_eigen(const Matrix& s);

}  // namespace cdepth
