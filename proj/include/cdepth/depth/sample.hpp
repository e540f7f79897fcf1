// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cdepth/numerics/frame.hpp"
#include "cdepth/numerics/matrix.hpp"

namespace cdepth {

// n x m observations with optional row labels; n, m >= 1, all finite.
class Sample {
 public:
  explicit Sample(Matrix points, std::vector<std::string> labels = {});
  static Sample from_values(const std::vector<double>& values);

  std::size_t n() const noexcept { return x_.rows(); }
  std::size_t m() const noexcept { return x_.cols(); }
  const Matrix& points() const noexcept { return x_; }
  std::span<const double> row(std::size_t i) const { return x_.row(i); }
  double operator()(std::size_t i, std::size_t j) const { return x_(i, j); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }

  std::vector<double> column(std::size_t j) const;

 private:
  Matrix x_;
  std::vector<std::string> labels_;
};

std::vector<double> sample_mean(const Sample& s);
// 1/(n-1) normalization; n = 1 gives the zero matrix.
Matrix sample_covariance(const Sample& s);

// Row i becomes B x_i; labels carried over.
Sample project(const Sample& s, const Frame& b);
// Rows i with a*U*x_i + b for a scalar a and square matrix u.
Sample affine_image(const Sample& s, double a, const Matrix& u, std::span<const double> shift);

}  // namespace cdepth
