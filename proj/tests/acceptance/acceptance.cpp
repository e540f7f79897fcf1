// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance battery. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <unistd.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cdepth/depth/depth.hpp"
#include "cdepth/dimension/dimension.hpp"
#include "cdepth/dispersion/dispersion.hpp"
#include "cdepth/io/analysis.hpp"
#include "cdepth/io/csv.hpp"
#include "cdepth/io/synthetic.hpp"
#include "cdepth/numerics/frame.hpp"
#include "cdepth/numerics/parallel.hpp"
#include "cdepth/subspace/subspace.hpp"

namespace cdepth {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [fail]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string iris_path() { return std::string(CDEPTH_DATA_DIR) + "/iris.csv"; }

double degrees_to(std::span<const double> b, std::span<const double> v) {
  const double c = std::min(1.0, std::abs(dot(b, v)) / (norm(b) * norm(v)));
  return std::acos(c) * 180.0 / std::numbers::pi;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("cdepth_accept_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome mixture_oracle() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t saved = thread_count();
  set_thread_count(1);
  const double eta = 0.1;
  const Sample s = mixture_of_squares(20000, eta, RngStream(101, 0));

  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double u = -1.0 + 0.05 * i;
    const double w = std::sqrt(std::max(0.0, 1.0 - u * u));
    const Frame b = Frame::from_orthonormal(Matrix{{u, w}});
    const double sigma = dispersion_halfspace_1d(project(s, b)).value;
    const double oracle = mixture_dispersion_oracle(u, eta);
    worst = std::max(worst, std::abs(sigma - oracle) / oracle);
  }
  out.require(worst <= 0.02, "max rel err over 41 u " + fmt("%.4f", worst));

  SearchConfig cfg;
  cfg.rng = RngStream(101, 1);
  const SubspaceFit lo = minimize_dispersion(s, 1, DepthKind::Halfspace, cfg);
  const auto bq = lo.B_q.matrix().row(0);
  const double r = 1.0 / std::sqrt(2.0);
  const double diag = std::min(degrees_to(bq, std::vector<double>{r, r}), degrees_to(bq, std::vector<double>{r, -r}));
  out.require(diag <= 2.0, "min direction off diagonal " + fmt("%.3f", diag) + " deg");

  cfg.rng = RngStream(101, 2);
  const SubspaceFit hi = maximize_dispersion(s, 1, DepthKind::Halfspace, cfg);
  const auto bp = hi.B_p->row(0);
  const double axis = std::min(degrees_to(bp, std::vector<double>{1, 0}), degrees_to(bp, std::vector<double>{0, 1}));
  out.require(axis <= 2.0, "max direction off axis " + fmt("%.3f", axis) + " deg");

  set_thread_count(saved);
  const double dt = seconds_since(t0);
  out.require(dt <= 120.0, "single-threaded " + fmt("%.1f", dt) + " s");
  return out;
}

Outcome pca_equivalence() {
  Outcome out;
  std::size_t max_ok = 0;
  std::size_t min_ok = 0;
  const std::vector<double> e1 = {1, 0, 0};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Sample s = gaussian_diagonal(5000, {25, 4, 1}, RngStream(200 + seed, 0));
    SearchConfig cfg;
    cfg.rng = RngStream(200 + seed, 1);
    const SubspaceFit hi = maximize_dispersion(s, 1, DepthKind::Halfspace, cfg);
    if (std::abs(dot(hi.B_p->row(0), e1)) >= 0.95) ++max_ok;
    cfg.rng = RngStream(200 + seed, 2);
    const SubspaceFit lo = minimize_dispersion(s, 2, DepthKind::Simplicial, cfg);
    if (std::abs(dot(lo.B_p->row(0), e1)) >= 0.95) ++min_ok;
  }
  out.require(max_ok >= 9, "maximal direction " + std::to_string(max_ok) + "/10");
  out.require(min_ok >= 9, "q=2 complement " + std::to_string(min_ok) + "/10");
  return out;
}

Outcome dimension_selection() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t right = 0;
  std::size_t aligned = 0;
  std::size_t p1 = 0;
  std::size_t spherical = 0;
  std::string hist_i;
  std::string hist_s;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Sample s = gaussian_diagonal(100, {1, 1, 25}, RngStream(300 + seed, 0));
    SearchConfig cfg;
    cfg.rng = RngStream(300 + seed, 1);
    const DimensionReport r = select_dimension(s, DepthKind::Halfspace, DimensionOptions{}, cfg);
    hist_i += std::to_string(r.p_star);
    if (r.p_star == 1) {
      ++p1;
      if (std::abs((*r.B_p_star)(0, 2)) >= 0.9) ++aligned;
      if (r.q_star == 2) ++right;
    }
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Sample s = gaussian_diagonal(100, {1, 1, 1}, RngStream(400 + seed, 0));
    SearchConfig cfg;
    cfg.rng = RngStream(400 + seed, 1);
    const DimensionReport r = select_dimension(s, DepthKind::Halfspace, DimensionOptions{}, cfg);
    hist_s += std::to_string(r.p_star);
    if (r.p_star == 0) ++spherical;
  }
  out.require(right >= 16, "scenario p*=1,q*=2 in " + std::to_string(right) + "/20 (p* by seed " + hist_i + ")");
  out.require(aligned == p1, "|<b_p,e3>|>=0.9 in " + std::to_string(aligned) + "/" + std::to_string(p1));
  out.require(spherical >= 18, "spherical p*=0 in " + std::to_string(spherical) + "/20 (p* by seed " + hist_s + ")");
  const double dt = seconds_since(t0);
  out.require(dt <= 300.0, "battery " + fmt("%.1f", dt) + " s");
  return out;
}

double mean_abs_difference(const std::vector<double>& v) {
  double t = 0.0;
  for (double a : v)
    for (double b : v) t += std::abs(a - b);
  return t / static_cast<double>(v.size() * v.size());
}

double step_integral(const Sample& s) {
  std::vector<double> v = s.column(0);
  std::sort(v.begin(), v.end());
  double t = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i + 1] > v[i]) t += halfspace_depth_1d(0.5 * (v[i] + v[i + 1]), s) * (v[i + 1] - v[i]);
  return t;
}

Outcome one_dimensional() {
  Outcome out;
  RngStream rng(500, 0);
  double gini_err = 0.0;
  double step_err = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> v(2 + rng.index(199));
    for (double& x : v) x = t % 3 == 0 ? std::round(4 * rng.normal()) : rng.normal() * (1 + t % 7);
    const Sample s = Sample::from_values(v);
    gini_err = std::max(gini_err, std::abs(dispersion_simplicial_1d(s).value - mean_abs_difference(v)));
    step_err = std::max(step_err, std::abs(dispersion_halfspace_1d(s).value - step_integral(s)));
  }
  out.require(gini_err <= 1e-10, "simplicial vs pairwise " + fmt("%.2e", gini_err));
  out.require(step_err <= 1e-12, "halfspace vs step integral " + fmt("%.2e", step_err));

  // Dyadic data under power-of-two scalings: the transformed sample is exact.
  bool bitwise = true;
  std::vector<double> d(57);
  for (double& x : d) x = static_cast<double>(static_cast<long>(rng.index(4096)) - 2048) / 64.0;
  const Sample ds = Sample::from_values(d);
  for (double a : {-8.0, -0.5, 0.25, 2.0, 1024.0}) {
    std::vector<double> w(d);
    for (double& x : w) x = a * x + 3.125;
    const Sample ws = Sample::from_values(w);
    bitwise &= dispersion_halfspace_1d(ws).value == std::abs(a) * dispersion_halfspace_1d(ds).value;
    bitwise &= dispersion_simplicial_1d(ws).value == std::abs(a) * dispersion_simplicial_1d(ds).value;
  }
  out.require(bitwise, "equivariance exact on representable transforms");

  double rel = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> v(3 + rng.index(150));
    for (double& x : v) x = rng.normal();
    const double a = (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::exp(3 * rng.normal());
    const double b = 10 * rng.normal();
    std::vector<double> w(v);
    for (double& x : w) x = a * x + b;
    const Sample s = Sample::from_values(v);
    const Sample ws = Sample::from_values(w);
    for (auto f : {&dispersion_halfspace_1d, &dispersion_simplicial_1d}) {
      const double ref = std::abs(a) * f(s).value;
      rel = std::max(rel, std::abs(f(ws).value - ref) / ref);
    }
  }
  out.require(rel <= 1e-12, "general (a,b) rel err " + fmt("%.2e", rel));
  return out;
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

Outcome planar_depths() {
  Outcome out;
  std::size_t mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RngStream rng(600 + seed, 0);
    const std::size_t n = 3 + rng.index(48);
    Matrix x(n, 2);
    for (double& v : x.values()) v = seed % 4 == 0 ? std::round(2 * rng.normal()) : rng.normal();
    const Sample s(std::move(x));
    for (int a = 0; a < 10; ++a)
      for (int b = 0; b < 10; ++b) {
        const std::vector<double> q = {-2.5 + 5.0 * a / 9.0, -2.5 + 5.0 * b / 9.0};
        if (halfspace_depth_2d(q, s) != brute_halfspace_2d(q, s)) ++mismatches;
      }
  }
  out.require(mismatches == 0, std::to_string(mismatches) + " grid mismatches over 20 samples");

  std::size_t outside = 0;
  std::size_t checks = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RngStream rng(700 + seed, 0);
    const std::size_t n = 5 + rng.index(21);
    Matrix x(n, 2);
    for (double& v : x.values()) v = rng.normal();
    const Sample s(std::move(x));
    const std::vector<double> q = {0.2 * rng.normal(), 0.2 * rng.normal()};
    const auto mc = simplicial_depth_mc(q, s, 50000, RngStream(700 + seed, 1));
    ++checks;
    if (std::abs(mc.value - simplicial_depth_exact(q, s)) > 3 * mc.std_error) ++outside;
  }
  out.require(outside == 0, "MC outside 3 SE in " + std::to_string(outside) + "/" + std::to_string(checks));
  return out;
}

Outcome subspace_depth_properties() {
  Outcome out;
  const Sample s = gaussian_diagonal(30, {1, 4, 9}, RngStream(800, 0));
  RngStream rng(800, 1);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t q = 1 + t % 2;
    const Frame b = random_frame(q, 3, rng);
    const Frame u = random_frame(3, 3, rng);
    const double a = (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::exp(rng.normal());
    const std::vector<double> shift = {5 * rng.normal(), 5 * rng.normal(), 5 * rng.normal()};
    const Sample img = affine_image(s, a, u.matrix(), shift);
    const Frame bu = orthonormalize(b.matrix() * u.matrix().transpose());
    for (DepthKind k : {DepthKind::Halfspace, DepthKind::Simplicial})
      for (std::size_t i = 0; i < s.n(); ++i) {
        std::vector<double> y(q);
        std::vector<double> yi(q);
        b.apply(s.row(i), y);
        bu.apply(img.row(i), yi);
        worst = std::max(worst, std::abs(central_subspace_depth(yi, img, bu, k) - central_subspace_depth(y, s, b, k)));
      }
  }
  out.require(worst <= 1e-10, "similarity invariance " + fmt("%.2e", worst));

  Matrix x(80, 2);
  RngStream sr(801, 0);
  for (std::size_t i = 0; i < 40; ++i) {
    const double z = sr.normal();
    const double w = sr.normal();
    x(i, 0) = z;
    x(i, 1) = w;
    x(i + 40, 0) = -z;
    x(i + 40, 1) = 3 * w;
  }
  const Sample sym(x);
  const Frame e1 = Frame::from_orthonormal(Matrix{{1, 0}});
  std::vector<double> v = project(sym, e1).column(0);
  std::sort(v.begin(), v.end());
  bool zero_outside = true;
  bool monotone = true;
  for (DepthKind k : {DepthKind::Halfspace, DepthKind::Simplicial}) {
    for (double far : {v.back() + 1e-9, v.back() + 3, v.front() - 1e-9, v.front() - 3})
      zero_outside &= central_subspace_depth(std::vector<double>{far}, sym, e1, k) == 0.0;
    const double nu = deepest_point(project(sym, e1), k)[0];
    for (double dir : {1.0, -1.0}) {
      double prev = 2.0;
      for (double t = nu; std::abs(t - nu) < 6; t += dir * 0.01) {
        const double d = central_subspace_depth(std::vector<double>{t}, sym, e1, k);
        monotone &= d <= prev;
        prev = d;
      }
    }
  }
  out.require(zero_outside, "zero outside projected range");
  out.require(monotone, "non-increasing away from nu");
  return out;
}

Outcome iris_profile() {
  Outcome out;
  const ReadResult iris = read_csv(iris_path(), ReadOptions{});
  SearchConfig cfg;
  cfg.rng = RngStream(900, 0);
  const DispersionProfile prof = dispersion_profile(iris.sample, DepthKind::Halfspace, cfg);
  bool monotone = true;
  std::string seq;
  for (std::size_t i = 0; i < prof.per_p.size(); ++i) {
    const DispersionEstimate& cur = prof.per_p[i].sigma_max;
    seq += (i ? "," : "") + fmt("%.5f", cur.value);
    if (i == 0) continue;
    const DispersionEstimate& prev = prof.per_p[i - 1].sigma_max;
    const double se = std::hypot(prev.std_error.value_or(0.0), cur.std_error.value_or(0.0));
    monotone &= cur.value <= prev.value + se;
  }
  out.require(monotone, "sigma_max(p=1..4) " + seq + " non-increasing within 1 SE");
  const double gain = prof.per_p[0].sigma_max.value / prof.per_p[1].sigma_max.value - 1.0;
  out.require(gain >= 0.25, "sigma_max(1) exceeds sigma_max(2) by " + fmt("%.1f", 100 * gain) + "%");
  return out;
}

Outcome iris_clusters() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t good = 0;
  std::string agreements;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    AnalysisConfig cfg;
    cfg.mode = Mode::Cluster;
    cfg.input_path = iris_path();
    cfg.label_column = "species";
    cfg.groups = 3;
    cfg.seed = seed;
    const AnalysisReport rep = run_analyze(cfg);
    const std::size_t agree = rep.document["fit"]["label_agreement"].get<std::size_t>();
    const Json& pts = rep.document["points"];
    const int setosa = pts[0]["group"].get<int>();
    bool isolated = true;
    for (std::size_t i = 0; i < pts.size(); ++i)
      isolated &= (pts[i]["group"].get<int>() == setosa) == (i < 50);
    agreements += (seed > 1 ? "," : "") + std::to_string(agree) + (isolated ? "" : "*");
    if (isolated && agree >= 135) ++good;
  }
  out.require(good >= 8, "setosa isolated and >=135/150 in " + std::to_string(good) + "/10 (agreement " + agreements + ")");
  const double dt = seconds_since(t0);
  out.require(dt <= 60.0, fmt("%.1f", dt) + " s");
  return out;
}

Outcome rayleigh_null() {
  Outcome out;
  RngStream rng(1000, 0);
  std::vector<double> raw;
  std::vector<double> canon;
  for (int r = 0; r < 200; ++r) {
    const Matrix dirs = random_directions(500, 3, rng);
    raw.push_back(rayleigh_test(dirs).p_value);
    canon.push_back(rayleigh_test(canonicalize_signs(dirs, SignRule::Balanced)).p_value);
  }
  auto ks = [](std::vector<double> p) {
    std::sort(p.begin(), p.end());
    double d = 0.0;
    const double n = static_cast<double>(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) d = std::max({d, (i + 1) / n - p[i], p[i] - i / n});
    return d;
  };
  const double d_raw = ks(raw);
  const double d_canon = ks(canon);
  out.require(d_raw < 0.1, "KS distance " + fmt("%.4f", d_raw));
  out.require(d_canon < 0.1, "after sign canonicalization " + fmt("%.4f", d_canon));
  return out;
}

Outcome reproducibility() {
  Outcome out;
  TempDir dir;
  {
    const Sample s = gaussian_diagonal(60, {1, 4, 16}, RngStream(1100, 0));
    CsvTable t;
    t.header = {"id", "a", "b", "c", "kind"};
    for (std::size_t i = 0; i < s.n(); ++i)
      t.rows.push_back({"p" + std::to_string(i + 1), format_double(s(i, 0)), format_double(s(i, 1)),
                        format_double(s(i, 2)), s(i, 2) > 0 ? "up" : "down"});
    std::ofstream f(dir.file("in.csv"), std::ios::binary);
    write_csv(f, t);
  }
  const std::size_t saved = thread_count();
  std::string failed;
  std::size_t runs = 0;
  for (Mode mode : {Mode::PointDepth, Mode::CentralSubspace, Mode::SelectDim, Mode::Profile, Mode::Cluster, Mode::Oracle}) {
    for (DepthKind kind : {DepthKind::Halfspace, DepthKind::Simplicial}) {
      AnalysisConfig cfg;
      cfg.mode = mode;
      cfg.depth = kind;
      cfg.seed = 1101;
      if (mode != Mode::Oracle) {
        cfg.input_path = dir.file("in.csv");
        cfg.columns = {"a", "b", "c"};
      }
      if (mode == Mode::CentralSubspace) cfg.q = 2;
      if (mode == Mode::SelectDim) {
        cfg.k = 100;
        cfg.sub_size = 15;
      }
      if (mode == Mode::Cluster) cfg.label_column = "kind";
      const std::string tag = std::string(to_string(mode)) + "_" + std::string(to_string(kind));
      std::vector<std::string> docs;
      for (std::size_t threads : {1u, 1u, 8u}) {
        set_thread_count(threads);
        const std::string out_dir = dir.file(tag + "_" + std::to_string(docs.size()));
        emit_outputs(run_analyze(cfg), out_dir);
        docs.push_back(slurp(out_dir + "/report.json"));
      }
      ++runs;
      if (docs[0].empty() || docs[0] != docs[1] || docs[0] != docs[2]) failed += " " + tag;
      if (mode == Mode::Oracle) break;
    }
  }
  set_thread_count(saved);
  out.require(failed.empty(), std::to_string(runs) + " mode/depth configs" + (failed.empty() ? "" : ", differing:" + failed));
  return out;
}

}  // namespace
}  // namespace cdepth

int main(int argc, char** argv) {
  using namespace cdepth;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"mixture oracle agreement", mixture_oracle},
      {"PCA equivalence", pca_equivalence},
      {"dimension selection", dimension_selection},
      {"one-dimensional estimators", one_dimensional},
      {"planar depths", planar_depths},
      {"central-subspace depth properties", subspace_depth_properties},
      {"Iris dispersion profile", iris_profile},
      {"Iris clustering", iris_clusters},
      {"Rayleigh null calibration", rayleigh_null},
      {"byte-identical reports", reproducibility},
  };
  // Optional arguments select criteria by number; default runs all.
  std::vector<bool> selected(criteria.size(), argc == 1);
  for (int a = 1; a < argc; ++a) {
    const std::size_t k = std::strtoul(argv[a], nullptr, 10);
    if (k >= 1 && k <= criteria.size()) selected[k - 1] = true;
  }
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("criterion %zu %s  %s: %s (%.1f s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
