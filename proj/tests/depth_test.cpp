// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cdepth/depth/depth.hpp"
#include "cdepth/depth/planar.hpp"
#include "cdepth/numerics/errors.hpp"
#include "cdepth/numerics/frame.hpp"

namespace cdepth {
namespace {

Sample planar(std::initializer_list<std::initializer_list<double>> rows) { return Sample(Matrix(rows)); }

Sample random_planar(std::size_t n, RngStream rng) {
  Matrix x(n, 2);
  for (double& v : x.values()) v = rng.normal();
  return Sample(std::move(x));
}

// Exact Tukey depth in rational arithmetic. Every generic line through x is
// a critical line through x and a sample point, rotated by +-epsilon; the
// side of a point on the critical line follows from the sign of the rotation.
double brute_halfspace_2d(std::span<const double> x, const Sample& s) {
  using boost::multiprecision::cpp_rational;
  struct Rel {
    cpp_rational x;
    cpp_rational y;
  };
  std::vector<Rel> rel;
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < s.n(); ++i) {
    Rel r{cpp_rational(s(i, 0)) - cpp_rational(x[0]), cpp_rational(s(i, 1)) - cpp_rational(x[1])};
    if (r.x == 0 && r.y == 0) {
      ++zeros;
      continue;
    }
    rel.push_back(std::move(r));
  }
  if (rel.empty()) return 1.0;
  std::size_t best = s.n();
  for (const Rel& r : rel) {
    // counts[eps][side] for eps, side in {+1, -1}
    std::size_t counts[2][2] = {{zeros, zeros}, {zeros, zeros}};
    for (const Rel& e : rel) {
      const cpp_rational cr = r.x * e.y - r.y * e.x;
      for (int eps = 0; eps < 2; ++eps) {
        int sg = cr > 0 ? 1 : cr < 0 ? -1 : 0;
        if (sg == 0) sg = (r.x * e.x + r.y * e.y > 0 ? -1 : 1) * (eps == 0 ? 1 : -1);
        ++counts[eps][sg > 0 ? 0 : 1];
      }
    }
    for (auto& row : counts) best = std::min({best, row[0], row[1]});
  }
  return static_cast<double>(best) / static_cast<double>(s.n());
}

TEST(HalfspaceDepth1d, Examples) {
  const Sample s = Sample::from_values({1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(halfspace_depth_1d(3, s), 0.6);
  EXPECT_DOUBLE_EQ(halfspace_depth_1d(0, Sample::from_values({1, 2, 3})), 0.0);
  EXPECT_DOUBLE_EQ(halfspace_depth_1d(1.5, Sample::from_values({1, 2, 3, 4})), 0.25);
}

TEST(HalfspaceDepth2d, TriangleVertex) {
  const Sample s = planar({{0, 0}, {1, 0}, {0, 1}});
  const std::vector<double> x = {1, 0};
  EXPECT_DOUBLE_EQ(halfspace_depth_2d(x, s), 1.0 / 3);
}

TEST(HalfspaceDepth2d, SquareCentroid) {
  const Sample s = planar({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  const std::vector<double> x = {0, 0};
  EXPECT_DOUBLE_EQ(halfspace_depth_2d(x, s), 0.5);
  EXPECT_DOUBLE_EQ(brute_halfspace_2d(x, s), 0.5);
}

TEST(HalfspaceDepth2d, OutsideHull) {
  const Sample s = planar({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const std::vector<double> x = {2, 0.5};
  EXPECT_EQ(halfspace_depth_2d(x, s), 0.0);
}

TEST(HalfspaceDepth2d, MatchesBruteForceOnGrid) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 5 + 45 * seed / 19;
    Sample s = random_planar(n, RngStream(seed, 3));
    // Integer data puts grid queries on or next to lines through sample pairs.
    if (seed % 3 == 0) {
      Matrix x = s.points();
      for (double& v : x.values()) v = std::round(2 * v);
      s = Sample(std::move(x));
    }
    for (int a = 0; a < 10; ++a)
      for (int b = 0; b < 10; ++b) {
        const std::vector<double> x = {-2.0 + 4.0 * a / 9, -2.0 + 4.0 * b / 9};
        ASSERT_EQ(halfspace_depth_2d(x, s), brute_halfspace_2d(x, s)) << "seed " << seed << " n " << n;
      }
  }
}

TEST(HalfspaceDepth2d, SamplePointsAtLeastOneOverN) {
  const Sample s = random_planar(40, RngStream(1, 1));
  for (std::size_t i = 0; i < s.n(); ++i) {
    const double d = halfspace_depth_2d(s.row(i), s);
    EXPECT_GE(d, 1.0 / 40);
    EXPECT_EQ(d, brute_halfspace_2d(s.row(i), s));
  }
}

TEST(HalfspaceDepth2d, DuplicatesAndCollinear) {
  const Sample s = planar({{0, 0}, {0, 0}, {1, 0}, {2, 0}, {1, 1}, {1, -1}, {1, 0}});
  for (double x : {0.0, 0.5, 1.0, 1.5})
    for (double y : {-0.5, 0.0, 0.5}) {
      const std::vector<double> p = {x, y};
      EXPECT_EQ(halfspace_depth_2d(p, s), brute_halfspace_2d(p, s)) << x << "," << y;
    }
}

TEST(HalfspaceDepth2d, UnimodalAlongLines) {
  const Sample s = random_planar(60, RngStream(77, 0));
  RngStream rng(5, 5);
  for (int r = 0; r < 40; ++r) {
    const Frame u = random_frame(1, 2, rng);
    const std::vector<double> c = {0.5 * rng.normal(), 0.5 * rng.normal()};
    std::vector<double> d;
    for (int t = -200; t <= 200; ++t) {
      const std::vector<double> x = {c[0] + 0.05 * t * u(0, 0), c[1] + 0.05 * t * u(0, 1)};
      d.push_back(halfspace_depth_2d(x, s));
    }
    const auto top = std::max_element(d.begin(), d.end()) - d.begin();
    for (std::ptrdiff_t t = 1; t <= top; ++t) EXPECT_GE(d[t], d[t - 1]);
    for (std::size_t t = top + 1; t < d.size(); ++t) EXPECT_LE(d[t], d[t - 1]);
    EXPECT_EQ(d.front(), 0.0);
    EXPECT_EQ(d.back(), 0.0);
  }
}

TEST(HalfspaceApprox, OneDimensionalMatchesExact) {
  const Sample s = Sample::from_values({0.3, -1.2, 2.2, 0.7, 0.7, 1.9});
  for (double x : {-2.0, -1.2, 0.0, 0.7, 1.0, 2.2, 3.0}) {
    const std::vector<double> p = {x};
    EXPECT_EQ(halfspace_depth_approx(p, s, 2, RngStream(1, 1)), halfspace_depth_1d(x, s));
    EXPECT_EQ(halfspace_depth_approx(p, s, 7, RngStream(1, 1)), halfspace_depth_1d(x, s));
  }
}

TEST(HalfspaceApprox, SquareCentroid) {
  const Sample s = planar({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  const std::vector<double> x = {0, 0};
  EXPECT_NEAR(halfspace_depth_approx(x, s, 2000, RngStream(2, 2)), 0.5, 0.05);
}

TEST(HalfspaceApprox, FarOutside) {
  const Sample s = random_planar(30, RngStream(3, 3));
  const std::vector<double> x = {50, -40};
  EXPECT_EQ(halfspace_depth_approx(x, s, 50, RngStream(2, 2)), 0.0);
}

TEST(HalfspaceApprox, UpperBoundAndNestedMonotone) {
  const Sample s = random_planar(40, RngStream(9, 9));
  RngStream rng(4, 4);
  const Matrix dirs = random_directions(4000, 2, rng);
  for (int t = 0; t < 10; ++t) {
    const std::vector<double> x = {0.2 * t - 1.0, 0.1 * t - 0.5};
    const double exact = halfspace_depth_2d(x, s);
    double prev = 1.0;
    for (std::size_t k : {10u, 100u, 1000u, 4000u}) {
      Matrix sub(k, 2);
      std::copy(dirs.values().begin(), dirs.values().begin() + static_cast<std::ptrdiff_t>(2 * k), sub.values().begin());
      const double d = halfspace_depth_directions(x, s, sub);
      EXPECT_GE(d, exact);
      EXPECT_LE(d, prev);
      prev = d;
    }
    EXPECT_EQ(prev, exact);
  }
}

TEST(HalfspaceApprox, ThreeDimensionalOffPlane) {
  // points on the plane z = 0; a point well above it is outside the hull
  Matrix x(30, 3);
  RngStream rng(10, 0);
  for (std::size_t i = 0; i < 30; ++i) {
    x(i, 0) = rng.normal();
    x(i, 1) = rng.normal();
  }
  const Sample s3(x);
  const std::vector<double> off = {0, 0, 3};
  EXPECT_EQ(halfspace_depth_approx(off, s3, 1500, RngStream(1, 0)), 0.0);
}

TEST(SimplicialDepth1d, Examples) {
  const Sample s = Sample::from_values({1, 2, 3});
  EXPECT_NEAR(simplicial_depth_1d(2, s), 7.0 / 9, 1e-15);
  EXPECT_EQ(simplicial_depth_1d(0, s), 0.0);
  EXPECT_EQ(simplicial_depth_1d(1, Sample::from_values({1})), 1.0);
}

TEST(SimplicialDepth1d, EqualsOrderedPairEnumeration) {
  RngStream rng(12, 0);
  std::vector<double> v(15);
  for (double& x : v) x = std::round(3 * rng.normal());  // ties on purpose
  const Sample s = Sample::from_values(v);
  for (double x = -6; x <= 6; x += 0.5) {
    std::size_t hits = 0;
    for (double a : v)
      for (double b : v) hits += std::min(a, b) <= x && x <= std::max(a, b);
    EXPECT_NEAR(simplicial_depth_1d(x, s), static_cast<double>(hits) / (v.size() * v.size()), 1e-14);
  }
}

TEST(SimplicialExact, Examples) {
  const Sample tri = planar({{0, 0}, {1, 0}, {0, 1}});
  const std::vector<double> in = {0.2, 0.2};
  EXPECT_EQ(simplicial_depth_exact(in, tri), 1.0);
  const Sample sq = planar({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  const std::vector<double> o = {0, 0};
  EXPECT_EQ(simplicial_depth_exact(o, sq), 1.0);
}

TEST(SimplicialExact, OneDimensionalWithoutReplacement) {
  RngStream rng(13, 0);
  std::vector<double> v(10);
  for (double& x : v) x = rng.normal();
  const Sample s = Sample::from_values(v);
  const double n = 10;
  for (double x = -2; x <= 2; x += 0.25) {
    // with-replacement pairs include the n diagonal pairs (x_i, x_i)
    const double with = simplicial_depth_1d(x, s) * n * n;
    std::size_t diag = 0;
    for (double a : v) diag += a == x;
    const double without = (with - static_cast<double>(diag)) / (n * (n - 1));
    EXPECT_NEAR(simplicial_depth_exact(std::vector<double>{x}, s), without, 1e-14);
  }
}

TEST(SimplicialExact, BoundaryCountsAsInside) {
  const Sample tri = planar({{0, 0}, {2, 0}, {0, 2}});
  EXPECT_EQ(simplicial_depth_exact(std::vector<double>{1, 0}, tri), 1.0);
  EXPECT_EQ(simplicial_depth_exact(std::vector<double>{1, 1}, tri), 1.0);
  EXPECT_EQ(simplicial_depth_exact(std::vector<double>{1.01, 1}, tri), 0.0);
}

TEST(SimplicialExact, DegenerateSimplexUsesSegments) {
  const Sample line = planar({{0, 0}, {1, 1}, {3, 3}});
  EXPECT_EQ(simplicial_depth_exact(std::vector<double>{2, 2}, line), 1.0);
  EXPECT_EQ(simplicial_depth_exact(std::vector<double>{2, 2.5}, line), 0.0);
}

TEST(SimplicialExact, TooLargeThrows) {
  Matrix x(1000, 2);
  RngStream rng(1, 1);
  for (double& v : x.values()) v = rng.normal();
  EXPECT_THROW(simplicial_depth_exact(std::vector<double>{0, 0}, Sample(x)), SizeError);
}

TEST(SimplicialDepth2d, MatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Sample s = random_planar(8 + seed * 2, RngStream(seed, 21));
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        const std::vector<double> x = {-1.5 + 0.6 * a, -1.5 + 0.6 * b};
        EXPECT_NEAR(simplicial_depth_2d(x, s), simplicial_depth_exact(x, s), 1e-14);
      }
    for (std::size_t i = 0; i < s.n(); ++i)
      EXPECT_NEAR(simplicial_depth_2d(s.row(i), s), simplicial_depth_exact(s.row(i), s), 1e-14);
  }
}

TEST(SimplicialDepth2d, CollinearAndDuplicates) {
  const Sample s = planar({{0, 0}, {0, 0}, {1, 0}, {2, 0}, {1, 1}, {1, -1}, {1, 0}, {-1, 0}});
  for (double x : {-0.5, 0.0, 0.5, 1.0, 1.5})
    for (double y : {-0.5, 0.0, 0.5}) {
      const std::vector<double> p = {x, y};
      EXPECT_NEAR(simplicial_depth_2d(p, s), simplicial_depth_exact(p, s), 1e-14) << x << "," << y;
    }
}

TEST(SimplicialMc, Examples) {
  const Sample tri = planar({{0, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(simplicial_depth_mc(std::vector<double>{0.2, 0.2}, tri, 100, RngStream(1, 1)).value, 1.0);
  const Sample sq = planar({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  EXPECT_EQ(simplicial_depth_mc(std::vector<double>{0, 0}, sq, 10000, RngStream(1, 2)).value, 1.0);
}

TEST(SimplicialMc, WithinThreeStandardErrors) {
  const Sample s = random_planar(30, RngStream(31, 0));
  for (int t = 0; t < 5; ++t) {
    const std::vector<double> x = {0.3 * t - 0.6, 0.1 * t};
    const auto mc = simplicial_depth_mc(x, s, 200000, RngStream(t, 8));
    EXPECT_LE(mc.std_error, 0.5 / std::sqrt(200000.0));
    EXPECT_LE(std::abs(mc.value - simplicial_depth_exact(x, s)), 3 * mc.std_error + 1e-12);
  }
}

TEST(Mahalanobis, Examples) {
  const Sample s = random_planar(50, RngStream(41, 0));
  EXPECT_NEAR(mahalanobis_depth(sample_mean(s), s), 1.0, 1e-15);
  const Sample one = Sample::from_values({-1, 1});  // mean 0, sd sqrt(2)
  EXPECT_NEAR(mahalanobis_depth(std::vector<double>{std::sqrt(2.0)}, one), 0.5, 1e-14);
}

TEST(Mahalanobis, AffineInvariant) {
  const Sample s = random_planar(50, RngStream(42, 0));
  RngStream rng(43, 0);
  for (int t = 0; t < 20; ++t) {
    Matrix a(2, 2);
    for (double& v : a.values()) v = rng.normal();
    const std::vector<double> b = {rng.normal(), rng.normal()};
    const Sample img = affine_image(s, 1.0, a, b);
    for (std::size_t i = 0; i < 10; ++i)
      EXPECT_NEAR(mahalanobis_depth(img.row(i), img), mahalanobis_depth(s.row(i), s), 1e-10);
  }
}

TEST(Mahalanobis, SingularThrows) {
  const Sample s = planar({{0, 0}, {1, 1}, {2, 2}});
  EXPECT_THROW(mahalanobis_depth(std::vector<double>{0, 0}, s), SingularCovarianceError);
}

TEST(DepthProperties, SimilarityInvariance) {
  const Sample s = random_planar(25, RngStream(51, 0));
  RngStream rng(52, 0);
  for (int t = 0; t < 20; ++t) {
    const Frame u = random_frame(2, 2, rng);
    const double a = (t % 2 ? -1.0 : 1.0) * (0.1 + 3.0 * rng.uniform());
    const std::vector<double> b = {5 * rng.normal(), 5 * rng.normal()};
    const Sample img = affine_image(s, a, u.matrix(), b);
    for (std::size_t i = 0; i < s.n(); ++i) {
      EXPECT_NEAR(halfspace_depth_2d(img.row(i), img), halfspace_depth_2d(s.row(i), s), 1e-10);
      EXPECT_NEAR(simplicial_depth_2d(img.row(i), img), simplicial_depth_2d(s.row(i), s), 1e-10);
    }
  }
}

TEST(DepthProperties, RangeAndOutsideHull) {
  const Sample s = random_planar(30, RngStream(61, 0));
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b) {
      const std::vector<double> x = {0.8 * a, 0.8 * b};
      for (DepthKind k : {DepthKind::Halfspace, DepthKind::Simplicial, DepthKind::Mahalanobis}) {
        const double d = depth(x, s, k);
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 1.0);
      }
    }
  // beyond the bounding box in every direction
  for (double ang = 0; ang < 6.28; ang += 0.3) {
    const std::vector<double> x = {20 * std::cos(ang), 20 * std::sin(ang)};
    EXPECT_EQ(depth(x, s, DepthKind::Halfspace), 0.0);
    EXPECT_EQ(depth(x, s, DepthKind::Simplicial), 0.0);
  }
}

TEST(DepthEvaluator, AgreesWithDirectFunctions) {
  const Sample s1 = Sample::from_values({3, 1, 4, 1, 5, 9, 2, 6});
  const DepthEvaluator h1(s1, DepthKind::Halfspace);
  const DepthEvaluator d1(s1, DepthKind::Simplicial);
  for (double x = 0; x <= 10; x += 0.5) {
    EXPECT_EQ(h1(std::vector<double>{x}), halfspace_depth_1d(x, s1));
    EXPECT_NEAR(d1(std::vector<double>{x}), simplicial_depth_1d(x, s1), 1e-15);
  }
  Matrix x3(12, 3);
  RngStream rng(71, 0);
  for (double& v : x3.values()) v = rng.normal();
  const Sample s3(x3);
  const DepthEvaluator d3(s3, DepthKind::Simplicial);
  EXPECT_EQ(d3(s3.row(0)), simplicial_depth_exact(s3.row(0), s3));
  DepthOptions o;
  o.rng = RngStream(3, 3);
  const DepthEvaluator h3(s3, DepthKind::Halfspace, o);
  RngStream r2 = o.rng;
  EXPECT_EQ(h3(s3.row(1)), halfspace_depth_directions(s3.row(1), s3, random_directions(1500, 3, r2)));
}

TEST(Orientation, MatchesRationalArithmetic) {
  using boost::multiprecision::cpp_rational;
  RngStream rng(90, 0);
  std::size_t zeros = 0;
  for (int t = 0; t < 20000; ++t) {
    // points on a random line, rounded to doubles, plus occasional exact repeats
    const double ox = rng.normal() * 1e3;
    const double oy = rng.normal();
    const double dx = rng.normal();
    const double dy = rng.normal();
    const double s1 = rng.normal();
    const double s2 = t % 3 == 0 ? 2 * s1 : rng.normal();
    const planar::Vec o{ox, oy};
    const planar::Vec a{ox + s1 * dx, oy + s1 * dy};
    const planar::Vec b{ox + s2 * dx, oy + s2 * dy};
    const cpp_rational e = (cpp_rational(a.x) - cpp_rational(o.x)) * (cpp_rational(b.y) - cpp_rational(o.y)) -
                           (cpp_rational(a.y) - cpp_rational(o.y)) * (cpp_rational(b.x) - cpp_rational(o.x));
    ASSERT_EQ(planar::orientation(o, a, b), e.sign());
    ASSERT_EQ(planar::orientation(o, b, a), -e.sign());
    zeros += e.sign() == 0;
  }
  EXPECT_GT(zeros, 0u);
  EXPECT_EQ(planar::orientation({0, 0}, {1, 1}, {3, 3}), 0);
  EXPECT_EQ(planar::orientation({0, 0}, {1, 0}, {0, 1}), 1);
}

TEST(DepthKindNames, RoundTrip) {
  for (DepthKind k : {DepthKind::Halfspace, DepthKind::Simplicial, DepthKind::Mahalanobis})
    EXPECT_EQ(parse_depth_kind(to_string(k)), k);
  EXPECT_THROW(parse_depth_kind("zonoid"), ConfigError);
}

}  // namespace
}  // namespace cdepth
