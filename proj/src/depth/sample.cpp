// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/depth/sample.hpp"

#include <cmath>

#include "cdepth/numerics/errors.hpp"

namespace cdepth {

Sample::Sample(Matrix points, std::vector<std::string> labels)
    : x_(std::move(points)), labels_(std::move(labels)) {
  if (x_.rows() == 0 || x_.cols() == 0) throw DegenerateSampleError("sample needs n >= 1 and m >= 1");
  for (double v : x_.values())
    if (!std::isfinite(v)) throw DomainError("sample contains a non-finite value");
  if (!labels_.empty() && labels_.size() != x_.rows())
    throw ShapeError("label count does not match row count");
}

Sample Sample::from_values(const std::vector<double>& values) {
  Matrix x(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) x(i, 0) = values[i];
  return Sample(std::move(x));
}

std::vector<double> Sample::column(std::size_t j) const {
  std::vector<double> out(n());
  for (std::size_t i = 0; i < n(); ++i) out[i] = x_(i, j);
  return out;
}

std::vector<double> sample_mean(const Sample& s) {
  std::vector<double> mu(s.m(), 0.0);
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.m(); ++j) mu[j] += s(i, j);
  for (double& v : mu) v /= static_cast<double>(s.n());
  return mu;
}

Matrix sample_covariance(const Sample& s) {
  const std::size_t m = s.m();
  Matrix c(m, m);
  if (s.n() < 2) return c;
  const auto mu = sample_mean(s);
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t a = 0; a < m; ++a) {
      const double da = s(i, a) - mu[a];
      for (std::size_t b = a; b < m; ++b) c(a, b) += da * (s(i, b) - mu[b]);
    }
  const double denom = static_cast<double>(s.n() - 1);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      c(a, b) /= denom;
      c(b, a) = c(a, b);
    }
  return c;
}

Sample project(const Sample& s, const Frame& b) {
  if (b.cols() != s.m())
    throw ShapeError("frame has " + std::to_string(b.cols()) + " columns, sample has dimension " +
                     std::to_string(s.m()));
  Matrix out(s.n(), b.rows());
  for (std::size_t i = 0; i < s.n(); ++i) b.apply(s.row(i), out.row(i));
  return Sample(std::move(out), s.labels());
}

Sample affine_image(const Sample& s, double a, const Matrix& u, std::span<const double> shift) {
  if (u.rows() != s.m() || u.cols() != s.m() || shift.size() != s.m())
    throw ShapeError("affine map does not match sample dimension");
  Matrix out(s.n(), s.m());
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t r = 0; r < s.m(); ++r) out(i, r) = a * dot(u.row(r), s.row(i)) + shift[r];
  return Sample(std::move(out), s.labels());
}

}  // namespace cdepth
