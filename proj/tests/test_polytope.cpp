#include "doctest.h"

#include "tcm/flatsampler.hpp"
#include "tcm/io.hpp"
#include "tcm/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace tcm;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

double hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  auto one = [](const std::vector<Vec>& p, const std::vector<Vec>& q) {
    double worst = 0;
    for (const Vec& x : p) {
      double best = 1e300;
      for (const Vec& y : q) best = std::min(best, (x - y).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one(a, b), one(b, a));
}

double volume(const Polytope& p) {
  double v = 0;
  for (const Simplex& s : triangulate(p)) v += simplex_volume(s);
  return v;
}

}  // namespace

TEST_CASE("vertex and halfspace representations") {
  const Polytope sq = builtin_polytope("cube2");
  REQUIRE(sq.facets().size() == 4);
  for (const Facet& f : sq.facets()) CHECK(std::abs(f.normal.cwiseAbs().maxCoeff() - 1.0) < 1e-12);
  CHECK(builtin_polytope("simplex2").facets().size() == 3);
  const Polytope cube = builtin_polytope("cube3");
  const Polytope back = Polytope::from_halfspaces(cube.halfspaces(), 3);
  CHECK(back.vertices().size() == 8);
  CHECK(hausdorff(back.vertices(), cube.vertices()) <= 1e-8);

  std::mt19937 g(4);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 12; ++t) {
    const int n = 2 + t % 2;
    std::vector<Vec> pts;
    for (int v = 0; v < 12; ++v) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = nd(g);
      pts.push_back(x);
    }
    const Polytope p = Polytope::from_vertices(pts);
    const Polytope q = Polytope::from_halfspaces(p.halfspaces(), n);
    CHECK(hausdorff(p.vertices(), q.vertices()) <= 1e-8);
    // every input point lies in the hull, every vertex is an input point
    for (const Vec& x : pts) CHECK(p.contains(x, 1e-9));
    for (const Vec& v : p.vertices()) {
      double best = 1e300;
      for (const Vec& x : pts) best = std::min(best, (v - x).norm());
      CHECK(best <= 1e-12);
    }
  }
}

TEST_CASE("degenerate input") {
  std::vector<Halfspace> hs{{vec({1, 0}), -1}, {vec({-1, 0}), -1}, {vec({0, 1}), 1}, {vec({0, -1}), 1}};
  CHECK_THROWS_AS(Polytope::from_halfspaces(hs, 2), EmptyPolytopeError);
  std::vector<Halfspace> open{{vec({1, 0}), 1}, {vec({0, 1}), 1}};
  CHECK_THROWS_AS(Polytope::from_halfspaces(open, 2), std::invalid_argument);
  CHECK_THROWS_AS(Polytope::from_vertices(std::vector<Vec>{}), EmptyPolytopeError);
  CHECK_FALSE(is_bounded(open, 2));
}

TEST_CASE("face lattice") {
  const Polytope sq = builtin_polytope("cube2");
  CHECK(sq.faces(0).size() == 4);
  CHECK(sq.faces(1).size() == 4);
  CHECK(sq.faces(2).size() == 1);
  const Polytope cube = builtin_polytope("cube3");
  CHECK(cube.faces(1).size() == 12);
  CHECK(cube.faces(2).size() == 6);
  CHECK(builtin_polytope("cross4").faces(3).size() == 16);
  CHECK(builtin_polytope("cube4").faces(2).size() == 24);

  // random 3-simplex: facets by brute-force incidence
  std::mt19937 g(9);
  std::normal_distribution<double> nd;
  std::vector<Vec> pts;
  for (int v = 0; v < 4; ++v) pts.push_back(vec({nd(g), nd(g), nd(g)}));
  const Polytope s = Polytope::from_vertices(pts);
  CHECK(s.faces(2).size() == 4);
  CHECK(s.faces(1).size() == 6);
  for (const Face& f : s.faces(2)) {
    CHECK(f.vertices.size() == 3);
    CHECK(f.frame.cols() == 2);
  }
  // faces of a lower-dimensional polytope
  const Polytope seg = Polytope::from_vertices(std::vector<Vec>{vec({0, 0, 0}), vec({1, 2, 2})});
  CHECK(seg.dim() == 1);
  CHECK(seg.faces(0).size() == 2);
  CHECK(seg.faces(2).empty());
  CHECK(seg.normal_frame().cols() == 2);
}

TEST_CASE("normal cones") {
  const Polytope cube = builtin_polytope("cube3");
  const Cone facet = normal_cone(cube, 2, 0);
  CHECK(facet.dim() == 1);
  CHECK(facet.pointed_generators().size() == 1);
  const Polytope sq = builtin_polytope("cube2");
  for (int f = 0; f < 4; ++f) {
    const Face& v = sq.faces(0)[f];
    if (sq.vertices()[v.vertices[0]] != vec({1, 1})) continue;
    const Cone c = normal_cone(sq, 0, f);
    CHECK(c.dim() == 2);
    CHECK(c.contains(vec({1, 0})));
    CHECK(c.contains(vec({0.3, 0.7})));
    CHECK_FALSE(c.contains(vec({-0.1, 1})));
    for (const Vec& gen : c.generators()) CHECK(c.contains(gen));
  }
  // segment [0, e1] in R^2: at e1 the cone is the halfplane u_1 >= 0
  const Polytope seg = Polytope::from_vertices(std::vector<Vec>{vec({0, 0}), vec({1, 0})});
  for (int f = 0; f < 2; ++f) {
    if (seg.vertices()[seg.faces(0)[f].vertices[0]][0] < 0.5) continue;
    const Cone c = normal_cone(seg, 0, f);
    CHECK(c.dim() == 2);
    CHECK(c.pointed_dim() == 1);
    CHECK(c.lineality_dim() == 1);
    CHECK(c.contains(vec({0, 1})));
    CHECK(c.contains(vec({0, -1})));
    CHECK(c.contains(vec({0.5, -3})));
    CHECK_FALSE(c.contains(vec({-0.01, 1})));
    CHECK(c.generators().size() == 3);
  }
}

TEST_CASE("flat sections") {
  const Polytope sq = builtin_polytope("cube2");
  Cut c = intersect_flat(sq, Mat(vec({1, 0})), vec({0, 0.5}));
  REQUIRE(c.status == CutStatus::ok);
  CHECK(c.polytope->dim() == 1);
  CHECK(volume(*c.polytope) == doctest::Approx(1.0));
  CHECK(intersect_flat(sq, Mat(vec({1, 0})), vec({0, 1.5})).status == CutStatus::empty);
  CHECK(intersect_flat(sq, Mat(vec({1, 0})), vec({0, 1.0})).status == CutStatus::grazing);
  CHECK(intersect_flat(sq, Mat(vec({1, 1}) / std::sqrt(2.0)), vec({1, 0})).status == CutStatus::grazing);

  // cube and the plane through its center normal to (1,1,1): regular hexagon
  const Polytope cube = builtin_polytope("cube3");
  Mat frame(3, 2);
  frame.col(0) = vec({1, -1, 0}) / std::sqrt(2.0);
  frame.col(1) = vec({1, 1, -2}) / std::sqrt(6.0);
  Cut hex = intersect_flat(cube, frame, vec({0.5, 0.5, 0.5}));
  REQUIRE(hex.status == CutStatus::ok);
  CHECK(hex.polytope->vertices().size() == 6);
  // shoelace on the in-plane coordinates, sorted by angle
  std::vector<std::pair<double, Eigen::Vector2d>> pts;
  for (const Vec& v : hex.polytope->vertices()) {
    const Eigen::Vector2d y(frame.col(0).dot(v - vec({0.5, 0.5, 0.5})), frame.col(1).dot(v - vec({0.5, 0.5, 0.5})));
    pts.emplace_back(std::atan2(y[1], y[0]), y);
  }
  std::sort(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.first < b.first; });
  double area = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i].second;
    const auto& b = pts[(i + 1) % pts.size()].second;
    area += 0.5 * (a[0] * b[1] - a[1] * b[0]);
  }
  CHECK(area == doctest::Approx(3 * std::sqrt(3.0) / 4));
  CHECK(volume(*hex.polytope) == doctest::Approx(area).epsilon(1e-12));

  // sections commute with rigid motions
  CounterRng rng(2, 0);
  const Mat rho = random_rotation(3, rng);
  const Vec t = vec({0.3, -1.2, 2.0});
  Cut moved = intersect_flat(cube.transformed(rho, t), rho * frame, rho * vec({0.5, 0.5, 0.5}) + t);
  REQUIRE(moved.status == CutStatus::ok);
  std::vector<Vec> back;
  for (const Vec& v : moved.polytope->vertices()) back.push_back(rho.transpose() * (v - t));
  CHECK(hausdorff(back, hex.polytope->vertices()) <= 1e-9);
}

TEST_CASE("moment integrals over simplices") {
  const SymTensor seg = simplex_moment({vec({0, 0}), vec({1, 0})}, 1);
  CHECK(seg.coordinate(MultiIndex{1, 0, 0, 0}) == doctest::Approx(0.5));
  CHECK(seg.coordinate(MultiIndex{0, 1, 0, 0}) == 0.0);
  const SymTensor tri = simplex_moment({vec({0, 0}), vec({1, 0}), vec({0, 1})}, 1);
  CHECK(tri.coordinate(MultiIndex{1, 0, 0, 0}) == doctest::Approx(1.0 / 6));
  CHECK(tri.coordinate(MultiIndex{0, 1, 0, 0}) == doctest::Approx(1.0 / 6));
  const Simplex s3{vec({0.1, 0, 0}), vec({1, 0.2, 0}), vec({0, 1, 0.4}), vec({0.3, 0.2, 1})};
  CHECK(simplex_moment(s3, 0).value() == doctest::Approx(simplex_volume(s3)));

  // second moments of the triangle against a 7-point degree-5 rule
  const SymTensor t2 = simplex_moment({vec({0, 0}), vec({2, 0}), vec({0, 1})}, 2);
  CHECK(t2.coordinate(MultiIndex{2, 0, 0, 0}) == doctest::Approx(2.0 / 3));  // int x^2 over the triangle
  CHECK(t2.coordinate(MultiIndex{1, 1, 0, 0}) == doctest::Approx(1.0 / 6));
  CHECK(t2.coordinate(MultiIndex{0, 2, 0, 0}) == doctest::Approx(1.0 / 6));
}

TEST_CASE("surface area and volume") {
  for (int n = 2; n <= 4; ++n) {
    const Polytope c = builtin_polytope("cube" + std::to_string(n));
    double area = 0;
    for (int f = 0; f < static_cast<int>(c.faces(n - 1).size()); ++f) {
      for (const Simplex& s : triangulate(c, n - 1, f)) area += simplex_volume(s);
    }
    CHECK(area == doctest::Approx(2.0 * n).epsilon(1e-10));
  }
  // rejection volume of a random polytope
  const Polytope p = builtin_polytope("random3:4");
  Vec lo = p.vertices()[0], hi = lo;
  for (const Vec& v : p.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  CounterRng rng(8, 0);
  const int N = 400000;
  int in = 0;
  Vec x(3);
  for (int i = 0; i < N; ++i) {
    for (int c = 0; c < 3; ++c) x[c] = lo[c] + (hi[c] - lo[c]) * rng.uniform();
    in += p.contains(x, 0.0);
  }
  const double mc = (hi - lo).prod() * in / N;
  CHECK(std::abs(mc - volume(p)) <= 0.005 * volume(p));
}

TEST_CASE("regions and distance") {
  const Region box = Region::box(vec({0, 0}), vec({1, 2}));
  CHECK(box.contains(vec({0.5, 1.5})));
  CHECK_FALSE(box.contains(vec({1.5, 1.5})));
  CHECK(Region::universe().contains(vec({1e9, -1e9})));
  CHECK_THROWS_AS(Region::from_halfspaces({{vec({1, 0}), 1}}, 2), std::invalid_argument);
  CHECK_NOTHROW(Region::from_halfspaces({{vec({1, 0}), 1}}, 2, true));
  const Polytope cube = builtin_polytope("cube3");
  CHECK(distance(cube, vec({0.5, 0.5, 0.5})) == 0.0);
  CHECK(distance(cube, vec({2, 2, 2})) == doctest::Approx(std::sqrt(3.0)));
  CHECK(distance(cube, vec({0.5, 2, 0.5})) == doctest::Approx(1.0));
  CHECK(distance(cube, vec({2, 2, 0.5})) == doctest::Approx(std::sqrt(2.0)));
}
