#include "doctest.h"

#include "tcm/flatsampler.hpp"
#include "tcm/io.hpp"
#include "tcm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <tuple>

using namespace tcm;

namespace {

constexpr double kPi = std::numbers::pi;

// Fraction of lines/planes meeting P times the weight, with its stderr.
std::pair<double, double> hit_measure(const Polytope& p, int k, double margin, std::uint64_t seed, int N) {
  const FlatSampler fs(p, k, margin);
  CounterRng rng(seed, 0);
  int hits = 0;
  for (int i = 0; i < N; ++i) {
    const FlatSample f = fs.sample(rng);
    if (intersect_flat(p, f.frame, f.base).status != CutStatus::empty) ++hits;
  }
  const double q = static_cast<double>(hits) / N;
  return {fs.weight() * q, fs.weight() * std::sqrt(q * (1 - q) / (N - 1))};
}

}  // namespace

TEST_CASE("rotations") {
  CounterRng rng(1, 0);
  for (int n = 1; n <= 4; ++n) {
    for (int t = 0; t < 20; ++t) {
      const Mat a = random_rotation(n, rng);
      const Mat b = random_rotation(n, rng);
      const Mat c = a * b;
      CHECK((c.transpose() * c - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(c.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  for (int t = 0; t < 10; ++t) CHECK(random_rotation(1, rng)(0, 0) == 1.0);

  const int N = 100000;
  Vec mean = Vec::Zero(3);
  for (int i = 0; i < N; ++i) mean += random_rotation(3, rng).col(0);
  mean /= N;
  for (int c = 0; c < 3; ++c) CHECK(std::abs(mean[c]) <= 3.0 / std::sqrt(N));
}

TEST_CASE("Haar test on the first coordinate") {
  // CDF of the first coordinate of a uniform point on S^{n-1}
  const std::function<double(double)> cdf[] = {
      [](double x) { return 1.0 - std::acos(x) / kPi; },
      [](double x) { return 0.5 * (x + 1.0); },
      [](double x) { return 0.5 + (x * std::sqrt(1 - x * x) + std::asin(x)) / kPi; },
  };
  const int N = 100000;
  for (int n = 2; n <= 4; ++n) {
    CounterRng rng(100 + n, 0);
    std::vector<double> xs(N);
    for (double& x : xs) x = random_rotation(n, rng)(0, 0);
    std::sort(xs.begin(), xs.end());
    double d = 0;
    for (int i = 0; i < N; ++i) {
      const double f = cdf[n - 2](std::clamp(xs[i], -1.0, 1.0));
      d = std::max({d, f - static_cast<double>(i) / N, static_cast<double>(i + 1) / N - f});
    }
    CHECK(d <= 1.628 / std::sqrt(N));
  }
}

TEST_CASE("flat samples") {
  const Polytope cube = builtin_polytope("cube3");
  CounterRng rng(2, 0);
  for (int k = 1; k <= 2; ++k) {
    const FlatSampler fs(cube, k);
    CHECK(fs.weight() > 0);
    for (int i = 0; i < 100; ++i) {
      const FlatSample f = fs.sample(rng);
      CHECK((f.frame.transpose() * f.frame - Mat::Identity(k, k)).cwiseAbs().maxCoeff() <= 1e-10);
      const Vec off = f.base - fs.center();
      CHECK((off - f.frame * (f.frame.transpose() * off)).norm() <= fs.radius() + 1e-12);
      CHECK(f.weight == fs.weight());
    }
  }
  CHECK_THROWS_AS(FlatSampler(cube, 3), std::invalid_argument);
  CHECK_THROWS_AS(FlatSampler(cube, 0), std::invalid_argument);
}

TEST_CASE("lines meeting the unit square") {
  const Polytope sq = builtin_polytope("cube2");
  const auto [m, se] = hit_measure(sq, 1, 0.05, 4, 100000);
  CHECK(std::abs(m - 4 / kPi) <= 3 * se);
  const double r = sq.circumradius() + 0.05;
  const auto [m2, se2] = hit_measure(sq, 1, r + 0.05, 5, 100000);
  CHECK(FlatSampler(sq, 1, r + 0.05).radius() == doctest::Approx(2 * r));
  CHECK(std::abs(m - m2) <= 3 * std::hypot(se, se2));
}

TEST_CASE("motions") {
  const Polytope sq = builtin_polytope("cube2");
  const MotionSampler ms(sq, sq);
  CounterRng rng(6, 0);
  for (int i = 0; i < 200; ++i) {
    const MotionSample g = ms.sample(rng);
    CHECK(g.rotation.determinant() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g.weight == ms.weight());
  }
  // a tiny moving square sweeps out the area of P
  const double eps = 0.01;
  const Polytope tiny = builtin_polytope("cube2").scaled(eps);
  SamplingOptions opt;
  opt.samples = 40000;
  opt.seed = 3;
  const McEstimate est = kinematic_lhs(sq, Region::universe(), tiny, Region::universe(), 0, 0, 0, 0, opt);
  CHECK(est.mean.value() == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("scalar Crofton formula") {
  SamplingOptions opt;
  opt.samples = 20000;
  opt.seed = 9;
  for (auto [n, k, j] : {std::tuple{2, 1, 0}, std::tuple{2, 1, 1}, std::tuple{3, 1, 1}, std::tuple{3, 2, 1}}) {
    for (const char* kind : {"cube", "simplex"}) {
      const Polytope p = builtin_polytope(kind + std::to_string(n));
      const VerificationReport rep = crofton_verify(p, Region::universe(), j, k, 0, 0, 0, opt);
      INFO(kind, n, " k=", k, " j=", j, " z=", rep.max_z);
      CHECK(rep.pass);
      CHECK(rep.samples == opt.samples);
    }
  }
}
