// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>

#include "cdepth/numerics/matrix.hpp"
#include "cdepth/numerics/rng.hpp"

namespace cdepth {

inline constexpr double kFrameTolerance = 1e-10;
inline constexpr double kRankTolerance = 1e-10;

// k x m matrix with orthonormal rows, 1 <= k <= m.
class Frame {
 public:
  // Checks the orthonormality invariant; throws RankError when it fails.
  static Frame from_orthonormal(Matrix rows);
  static Frame identity(std::size_t m);

  std::size_t rows() const noexcept { return b_.rows(); }
  std::size_t cols() const noexcept { return b_.cols(); }
  const Matrix& matrix() const noexcept { return b_; }
  std::span<const double> row(std::size_t i) const { return b_.row(i); }
  double operator()(std::size_t i, std::size_t j) const { return b_(i, j); }

  // B x for a point x in R^m.
  void apply(std::span<const double> x, std::span<double> out) const;
  Frame negated() const;
  // max |B B^T - I|.
  double orthonormality_error() const;

 private:
  explicit Frame(Matrix b) : b_(std::move(b)) {}
  Matrix b_;
};

Frame orthonormalize(const Matrix& rows);
Frame random_frame(std::size_t k, std::size_t m, RngStream& rng);
Frame complement_frame(const Frame& b);
// Rows of a on top of rows of b; both must share the column count.
Frame stack(const Frame& a, const Frame& b);

}  // namespace cdepth
