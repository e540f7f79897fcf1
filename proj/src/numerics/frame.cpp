// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cdepth/numerics/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cdepth/numerics/errors.hpp"

namespace cdepth {
namespace {

// Subtracts the projection of v onto each of the given unit rows, twice.
void project_out(std::span<double> v, const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) {
      const double c = dot(v, q);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * q[j];
    }
}

}  // namespace

Frame Frame::from_orthonormal(Matrix rows) {
  if (rows.rows() == 0 || rows.rows() > rows.cols())
    throw ShapeError("frame needs 1 <= k <= m rows, got " + std::to_string(rows.rows()));
  Frame f(std::move(rows));
  if (f.orthonormality_error() > kFrameTolerance) throw RankError("rows are not orthonormal");
  return f;
}

Frame Frame::identity(std::size_t m) { return Frame(Matrix::identity(m)); }

void Frame::apply(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < b_.rows(); ++i) out[i] = dot(b_.row(i), x);
}

Frame Frame::negated() const {
  Matrix m = b_;
  for (double& v : m.values()) v = -v;
  return Frame(std::move(m));
}

double Frame::orthonormality_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < b_.rows(); ++i)
    for (std::size_t j = 0; j < b_.rows(); ++j) {
      const double target = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(dot(b_.row(i), b_.row(j)) - target));
    }
  return worst;
}

Frame orthonormalize(const Matrix& rows) {
  const std::size_t k = rows.rows();
  const std::size_t m = rows.cols();
  if (k == 0 || k > m) throw ShapeError("orthonormalize needs 1 <= k <= m");
  std::vector<std::vector<double>> basis;
  basis.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> v(rows.row(i).begin(), rows.row(i).end());
    const double original = norm(v);
    project_out(v, basis);
    const double len = norm(v);
    if (!(len > kRankTolerance * std::max(1.0, original)))
      throw RankError("numerical rank below " + std::to_string(k));
    for (double& x : v) x /= len;
    basis.push_back(std::move(v));
  }
  Matrix out = Matrix::from_rows(basis);
  return Frame::from_orthonormal(std::move(out));
}

Frame random_frame(std::size_t k, std::size_t m, RngStream& rng) {
  Matrix g(k, m);
  for (;;) {
    for (double& v : g.values()) v = rng.normal();
    try {
      return orthonormalize(g);
    } catch (const RankError&) {
    }
  }
}

Frame complement_frame(const Frame& b) {
  const std::size_t k = b.rows();
  const std::size_t m = b.cols();
  if (k >= m) throw EmptyComplementError("frame spans the whole space");
  std::vector<std::vector<double>> basis;
  for (std::size_t i = 0; i < k; ++i) basis.emplace_back(b.row(i).begin(), b.row(i).end());
  Matrix out(m - k, m);
  for (std::size_t r = 0; r < m - k; ++r) {
    // Greedy: the coordinate axis with the largest residual, lowest index on ties.
    std::vector<double> best;
    double best_len = -1.0;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> v(m, 0.0);
      v[j] = 1.0;
      project_out(v, basis);
      const double len = norm(v);
      if (len > best_len + 1e-14) {
        best_len = len;
        best = std::move(v);
      }
    }
    for (double& x : best) x /= best_len;
    project_out(best, basis);
    const double len = norm(best);
    for (double& x : best) x /= len;
    std::copy(best.begin(), best.end(), out.row(r).begin());
    basis.push_back(std::move(best));
  }
  return Frame::from_orthonormal(std::move(out));
}

Frame stack(const Frame& a, const Frame& b) {
  if (a.cols() != b.cols()) throw ShapeError("stacked frames differ in ambient dimension");
  Matrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) std::copy(a.row(i).begin(), a.row(i).end(), out.row(i).begin());
  for (std::size_t i = 0; i < b.rows(); ++i)
    std::copy(b.row(i).begin(), b.row(i).end(), out.row(a.rows() + i).begin());
  return Frame::from_orthonormal(std::move(out));
}

}  // namespace cdepth
