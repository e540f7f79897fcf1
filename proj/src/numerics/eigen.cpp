// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/numerics/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdepth/numerics/errors.hpp"

namespace cdepth {

EigenDecomposition jacobi_eigen(const Matrix& s) {
  const std::size_t n = s.rows();
  if (n == 0 || n != s.cols()) throw ShapeError("jacobi_eigen needs a non-empty square matrix");
  const double scale = std::max(1.0, s.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(s(i, j) - s(j, i)) > kSymmetryTolerance * scale)
        throw SymmetryError("matrix is not symmetric");

  Matrix a = s;
  Matrix v = Matrix::identity(n);  // columns are eigenvectors
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a(i, j) * a(i, j);
        if (i != j) off += a(i, j) * a(i, j);
      }
    if (off <= kJacobiThreshold * kJacobiThreshold * total || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  std::vector<double> values(n);
  Matrix rows(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    values[r] = a(order[r], order[r]);
    for (std::size_t k = 0; k < n; ++k) rows(r, k) = v(k, order[r]);
  }
  return {std::move(values), orthonormalize(rows)};
}

}  // namespace cdepth
