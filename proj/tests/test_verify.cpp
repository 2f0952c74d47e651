#include "doctest.h"

#include "tcm/coeffs.hpp"
#include "tcm/flatsampler.hpp"
#include "tcm/io.hpp"
#include "tcm/measures.hpp"
#include "tcm/specialfn.hpp"
#include "tcm/verify.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <tuple>

using namespace tcm;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Polytope> grid() {
  CounterRng rng(21, 0);
  return {builtin_polytope("cube2"), builtin_polytope("random2:7"), builtin_polytope("cube3"),
          builtin_polytope("simplex3").transformed(random_rotation(3, rng), Vec::Constant(3, 0.3)),
          builtin_polytope("random3:8"), builtin_polytope("cube4")};
}

double rel_diff(const SymTensor& a, const SymTensor& b) {
  return max_abs_coordinate_diff(a, b) / std::max(1.0, max_abs_coordinate(a));
}

}  // namespace

TEST_CASE("Crofton right-hand side") {
  const Polytope cube = builtin_polytope("cube3");
  const Region beta = Region::box(Vec::Constant(3, 0.2), Vec::Constant(3, 2.0));
  for (auto [j, k] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const double rhs = crofton_rhs(cube, beta, j, k, 0, 0, 0).tensor.value();
    CHECK(rhs == doctest::Approx(alpha(3, j, k) * curvature_measure(cube, 3 - k + j, beta)).epsilon(1e-13));
  }
  for (int s : {1, 3}) CHECK(crofton_rhs(cube, beta, 1, 1, 1, s, 1).tensor.is_zero());

  // n=3, k=2, j=1, s=2, l=0 on the cube: three explicit terms
  MeasureEvaluator ev(cube);
  SymTensor want = d_coeff(3, 1, 2, 2, 0, 0, 0) * ev.evaluate({2, 0, 2, 0, 0}).tensor;
  want += d_coeff(3, 1, 2, 2, 0, 0, 1) * ev.evaluate({2, 0, 0, 0, 1}).tensor;
  want += d_coeff(3, 1, 2, 2, 0, 1, 1) * ev.evaluate({2, 0, 0, 1, 0}).tensor;
  CHECK(max_abs_coordinate_diff(crofton_rhs(cube, Region::universe(), 1, 2, 0, 2, 0).tensor, want) <= 1e-14);

  CHECK_THROWS_AS(crofton_rhs(cube, beta, 2, 1, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(crofton_rhs(cube, beta, 0, 1, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("single-sum expansions") {
  for (const Polytope& p : grid()) {
    const int n = p.ambient_dim();
    const Region beta = Region::box(Vec::Constant(n, 0.1), Vec::Constant(n, 0.8));
    for (int k = 1; k < n; ++k) {
      for (int s = 0; s <= 4; ++s) {
        for (int r = 0; r <= 1; ++r) {
          const SymTensor l1 = crofton_rhs(p, beta, k - 1, k, r, s, k == 1 ? 0 : 1).tensor;
          if (k > 1) {
            CHECK(rel_diff(l1, expansion_rhs(p, beta, Expansion::iota, k, r, s).tensor) <= 1e-10);
            CHECK(rel_diff(l1, expansion_rhs(p, beta, Expansion::lambda, k, r, s).tensor) <= 1e-10);
            const SymTensor l0 = crofton_rhs(p, beta, k - 1, k, r, s, 0).tensor;
            CHECK(rel_diff(l0, expansion_rhs(p, beta, Expansion::kappa, k, r, s).tensor) <= 1e-10);
          } else {
            CHECK(rel_diff(l1, expansion_rhs(p, beta, Expansion::single_line, 1, r, s).tensor) <= 1e-10);
            CHECK(rel_diff(l1, expansion_rhs(p, beta, Expansion::kappa, 1, r, s).tensor) <= 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("i-sum truncation for l = 0 and l = 1") {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int j = 1; j < k; ++j) {
        for (int s = 0; s <= 8; ++s) {
          for (int m = 0; m <= s / 2; ++m) {
            for (int i = 1; i <= m; ++i) CHECK(d_coeff(n, j, k, s, 1, i, m) == 0.0);
            for (int i = 2; i <= m; ++i) CHECK(d_coeff(n, j, k, s, 0, i, m) == 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("k = n is a tautology") {
  const Polytope p = builtin_polytope("random3:3");
  SamplingOptions opt;
  for (int j = 0; j <= 3; ++j) {
    const MeasureIndex idx{j, 1, j == 3 ? 0 : 2, j == 0 || j == 3 ? 0 : 1, 0};
    const SymTensor phi = tensorial_measure(p, idx).tensor;
    if (j < 3) CHECK(rel_diff(phi, crofton_rhs(p, Region::universe(), j, 3, idx.r, idx.s, idx.l).tensor) <= 1e-10);
    CHECK(crofton_lhs(p, Region::universe(), j, 3, idx.r, idx.s, idx.l, opt).mean == phi);
  }
  const VerificationReport rep = crofton_verify(p, Region::universe(), 1, 3, 0, 2, 1, opt);
  CHECK(rep.pass);
  CHECK(rep.samples == 0);
  CHECK(rep.notes.size() == 2);
}

TEST_CASE("window missing the polytope") {
  const Polytope sq = builtin_polytope("cube2");
  SamplingOptions opt;
  opt.samples = 2000;
  const Region far = Region::box(Eigen::Vector2d(5, 5), Eigen::Vector2d(6, 6));
  const McEstimate est = crofton_lhs(sq, far, 0, 1, 1, 1, 0, opt);
  CHECK(est.mean.is_zero());
  CHECK(est.hits > 0);
  CHECK(est.samples == opt.samples);
}

TEST_CASE("estimates are reproducible and thread-count independent") {
  const Polytope cube = builtin_polytope("cube3");
  SamplingOptions a;
  a.samples = 3000;
  a.seed = 5;
  a.threads = 1;
  SamplingOptions b = a;
  b.threads = 3;
  const McEstimate x = crofton_lhs(cube, Region::universe(), 1, 2, 1, 1, 1, a);
  const McEstimate y = crofton_lhs(cube, Region::universe(), 1, 2, 1, 1, 1, b);
  CHECK(x.mean == y.mean);
  CHECK(x.std_error == y.std_error);
  b.seed = 6;
  CHECK_FALSE(crofton_lhs(cube, Region::universe(), 1, 2, 1, 1, 1, b).mean == x.mean);
}

TEST_CASE("index enumeration") {
  // oracle: brute force over all tuples in a box
  for (int n = 2; n <= 4; ++n) {
    for (int p = 0; p <= 4; ++p) {
      std::set<std::tuple<int, int, int, int, int>> want;
      for (int j = 0; j <= n; ++j)
        for (int m = 0; m <= p; ++m)
          for (int r = 0; r <= p; ++r)
            for (int s = 0; s <= p; ++s)
              for (int l = 0; l <= p; ++l) {
                if (2 * m + 2 * l + r + s != p) continue;
                if ((j == 0 || j == n - 1) && l != 0) continue;
                if (j == n && (s != 0 || l != 0)) continue;
                want.emplace(j, m, r, s, l);
              }
      std::set<std::tuple<int, int, int, int, int>> got;
      for (const MeasureIndex& i : enumerate_indices(n, p)) got.emplace(i.j, i.m, i.r, i.s, i.l);
      CHECK(got == want);
      CHECK(enumerate_indices(n, p).size() == want.size());
    }
  }
  CHECK(enumerate_indices(2, 2).size() == 10);
  CHECK(enumerate_indices(3, 2).size() == 15);
  CHECK(enumerate_indices(2, 0).size() == 3);
}

TEST_CASE("independence rank, small cases") {
  const RankResult r0 = independence_rank(2, 0, 4, 1);
  CHECK(r0.expected == 3);
  CHECK(r0.rank == 3);
  const RankResult r1 = independence_rank(2, 1, 6, 1);
  CHECK(r1.rank == r1.expected);
  CHECK_THROWS_AS(independence_rank(1, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("Steiner polynomial") {
  const Polytope sq = builtin_polytope("cube2");
  const SteinerReport rep = steiner_check(sq, {0.0, 1.0}, 200000, 3, 0, 0.01);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].exact == doctest::Approx(1.0));
  CHECK(rep.rows[1].exact == doctest::Approx(1 + 4 + kPi).epsilon(1e-12));
  CHECK(rep.pass);
  CHECK(rep.rows[0].mc == doctest::Approx(1.0).epsilon(0.01));
  CHECK_THROWS_AS(steiner_check(sq, {-1.0}, 100, 1), std::invalid_argument);
}

TEST_CASE("kinematic formula") {
  const Polytope sq = builtin_polytope("cube2");
  const MeasureValue rhs = kinematic_rhs(sq, Region::universe(), sq, Region::universe(), 0, 0, 0, 0);
  CHECK(rhs.tensor.value() == doctest::Approx(2 + 8 / kPi).epsilon(1e-13));
  SamplingOptions opt;
  opt.samples = 50000;
  opt.seed = 1;
  const VerificationReport rep = kinematic_verify(sq, sq, Region::universe(), Region::universe(), 0, 1, 0, 0, opt);
  INFO("z = ", rep.max_z);
  CHECK(rep.pass);
  CHECK(rep.theorem == "kinematic");
  CHECK(rep.coords.size() == 2);
}
