#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rcp/geometry.hpp"
#include "rcp/rng.hpp"
#include "support/oracles.hpp"

using namespace rcp;
using rcp::testing::point_on_face;
using rcp::testing::unit_simplex;

TYPE_TO_STRING(rcp::Rational);

TEST_CASE_TEMPLATE("unit 2-simplex facet normals", S, double, Rational) {
  auto s = unit_simplex<S>(2);
  CHECK(s.normal(0)(0) == S(1));
  CHECK(s.normal(0)(1) == S(1));
  CHECK(s.normal(1)(0) == S(-1));
  CHECK(s.normal(1)(1) == S(0));
  CHECK(s.normal(2)(0) == S(0));
  CHECK(s.normal(2)(1) == S(-1));
}

TEST_CASE("swapping two vertices swaps their facet normals") {
  auto tol = Tolerances<Rational>::defaults();
  Rng rng(42);
  for (int it = 0; it < 20; ++it) {
    Mat<Rational> verts(4, 3);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 3; ++c) verts(r, c) = Rational(rng.int_in(-4, 4));
    Simplex<Rational> s1;
    try {
      s1 = Simplex<Rational>::from_vertices(verts, tol);
    } catch (const DegenerateSimplex&) {
      continue;
    }
    Mat<Rational> swapped = verts;
    swapped.row(1).swap(swapped.row(2));
    auto s2 = Simplex<Rational>::from_vertices(swapped, tol);
    CHECK(s1.normal(1) == s2.normal(2));
    CHECK(s1.normal(2) == s2.normal(1));
    CHECK(s1.normal(0) == s2.normal(0));
    CHECK(s1.normal(3) == s2.normal(3));
  }
}

TEST_CASE_TEMPLATE("random 3D simplex normals are facet-constant and outward", S, double, Rational) {
  auto tol = Tolerances<S>::defaults();
  Rng rng(7);
  int tested = 0;
  while (tested < 25) {
    Mat<S> verts(4, 3);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 3; ++c) verts(r, c) = S(static_cast<long>(rng.int_in(-4, 4)));
    Simplex<S> s;
    try {
      s = Simplex<S>::from_vertices(verts, tol);
    } catch (const DegenerateSimplex&) {
      continue;
    }
    ++tested;
    S slack = ScalarTraits<S>::exact ? S(0) : S(1e-12);
    for (int j = 0; j <= 3; ++j) {
      for (int i = 0; i <= 3; ++i) {
        for (int k = 0; k <= 3; ++k) {
          if (i == j || k == j) continue;
          S d = s.normal(j).dot(s.vertex(i) - s.vertex(k));
          CHECK(d <= slack);
          CHECK(d >= -slack);
        }
        if (i != j) CHECK(s.normal(j).dot(s.vertex(j) - s.vertex(i)) < S(0));
      }
    }
  }
}

TEST_CASE("degenerate vertices are rejected") {
  Mat<double> verts(3, 2);
  verts << 0, 0, 1, 1, 2, 2;
  CHECK_THROWS_AS(Simplex<double>::from_vertices(verts, Tolerances<double>::defaults()),
                  DegenerateSimplex);
}

TEST_CASE_TEMPLATE("barycentric coordinates at landmarks", S, double, Rational) {
  auto s = unit_simplex<S>(2);
  Vec<S> at_vertex = s.barycentric(s.vertex(2));
  CHECK(at_vertex(0) == S(0));
  CHECK(at_vertex(1) == S(0));
  CHECK(at_vertex(2) == S(1));

  Vec<S> c(2);
  c << S(1) / S(3), S(1) / S(3);
  Vec<S> at_centroid = s.barycentric(c);
  S slack = ScalarTraits<S>::exact ? S(0) : S(1e-15);
  for (int i = 0; i <= 2; ++i) {
    CHECK(at_centroid(i) - S(1) / S(3) <= slack);
    CHECK(S(1) / S(3) - at_centroid(i) <= slack);
  }

  Vec<S> mid(2);
  mid << S(1) / S(2), S(0);
  Vec<S> at_mid = s.barycentric(mid);
  CHECK(at_mid(0) == S(1) / S(2));
  CHECK(at_mid(1) == S(1) / S(2));
  CHECK(at_mid(2) == S(0));
}

TEST_CASE("barycentric reconstruction on random points") {
  auto tol = Tolerances<double>::defaults();
  Rng rng(11);
  for (int it = 0; it < 100; ++it) {
    Mat<double> verts(4, 3);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 3; ++c) verts(r, c) = rng.real01() * 6 - 3;
    Simplex<double> s;
    try {
      s = Simplex<double>::from_vertices(verts, tol);
    } catch (const DegenerateSimplex&) {
      continue;
    }
    Vec<double> x(3);  // may be far outside the simplex
    for (int c = 0; c < 3; ++c) x(c) = rng.real01() * 8 - 4;
    Vec<double> alpha = s.barycentric(x);
    CHECK(alpha.sum() == doctest::Approx(1.0).epsilon(1e-9));
    Vec<double> rebuilt = Vec<double>::Zero(3);
    for (int i = 0; i <= 3; ++i) rebuilt += alpha(i) * s.vertex(i);
    CHECK(inf_norm<double>(Vec<double>(rebuilt - x)) <=
          1e-9 * std::max(1.0, inf_norm<double>(x)));
  }
}

TEST_CASE_TEMPLATE("active index sets", S, double, Rational) {
  auto tol = Tolerances<S>::defaults();
  auto s = unit_simplex<S>(2);
  Vec<S> mid(2);
  mid << S(1) / S(2), S(0);
  CHECK(s.active_indices(mid, tol).indices == std::vector<int>{0, 1});
  Vec<S> c(2);
  c << S(1) / S(3), S(1) / S(3);
  CHECK(s.active_indices(c, tol).indices == std::vector<int>{0, 1, 2});
  CHECK(s.active_indices(s.vertex(1), tol).indices == std::vector<int>{1});
  Vec<S> outside(2);
  outside << S(2), S(2);
  CHECK_THROWS_AS(s.active_indices(outside, tol), PointOutsideSimplex);
}

TEST_CASE("near-degenerate activity is flagged in the float backend") {
  auto tol = Tolerances<double>::defaults();
  auto s = unit_simplex<double>(2);
  Vec<double> x(2);
  x << 5e-9, 0.25;  // alpha_1 just above zero, inside the 10x band
  auto set = s.active_indices(x, tol);
  CHECK(set.near_degenerate);
}

TEST_CASE_TEMPLATE("tangent cones at landmarks", S, double, Rational) {
  auto tol = Tolerances<S>::defaults();
  auto s = unit_simplex<S>(2);
  CHECK(s.tangent_cone(s.vertex(1), tol).constraints == std::vector<int>{2});
  Vec<S> c(2);
  c << S(1) / S(4), S(1) / S(4);
  CHECK(s.tangent_cone(c, tol).constraints.empty());
  Vec<S> on_edge(2);
  on_edge << S(0), S(1) / S(2);  // relint co{v0, v2}
  CHECK(s.tangent_cone(on_edge, tol).constraints == std::vector<int>{1});
}

TEST_CASE("tangent cone never constrains the exit facet") {
  auto tol = Tolerances<Rational>::defaults();
  Rng rng(3);
  auto s = unit_simplex<Rational>(3);
  for (int it = 0; it < 200; ++it) {
    std::vector<int> support;
    for (int i = 0; i <= 3; ++i)
      if (rng.coin()) support.push_back(i);
    if (support.empty()) support.push_back(static_cast<int>(rng.int_in(0, 3)));
    auto cone = s.tangent_cone(point_on_face<Rational>(rng, s, support), tol);
    for (int j : cone.constraints) CHECK(j >= 1);
  }
}

TEST_CASE_TEMPLATE("polytope cone of the running segment example", S, double, Rational) {
  auto tol = Tolerances<S>::defaults();
  auto s = unit_simplex<S>(2);
  Mat<S> g(2, 2);
  g << S(0), S(1) / S(4), S(3) / S(4), S(1) / S(4);
  auto cone = s.polytope_cone(g, tol);
  // by-hand enumeration: the first vertex sits on co{v0, v2} (constraint 1),
  // the second on the exit facet (no constraint)
  CHECK(cone.constraints == std::vector<int>{1});
  CHECK(s.polytope_cone(Mat<S>(g.row(1)), tol).constraints.empty());
}

TEST_CASE("single interior point gives the whole space") {
  auto tol = Tolerances<Rational>::defaults();
  auto s = unit_simplex<Rational>(3);
  Mat<Rational> one(1, 3);
  one << Rational(1, 4), Rational(1, 4), Rational(1, 4);
  CHECK(s.polytope_cone(one, tol).constraints.empty());
}

TEST_CASE("polytope cone equals the brute-force constraint union") {
  auto tol = Tolerances<Rational>::defaults();
  Rng rng(5);
  auto s = unit_simplex<Rational>(3);
  for (int it = 0; it < 50; ++it) {
    int count = static_cast<int>(rng.int_in(1, 4));
    Mat<Rational> pts(count, 3);
    std::vector<int> expected;
    for (int p = 0; p < count; ++p) {
      std::vector<int> support;
      for (int i = 0; i <= 3; ++i)
        if (rng.coin()) support.push_back(i);
      if (support.empty()) support.push_back(0);
      Vec<Rational> x = point_on_face<Rational>(rng, s, support);
      pts.row(p) = x.transpose();
      for (int j : s.tangent_cone(x, tol).constraints)
        if (std::find(expected.begin(), expected.end(), j) == expected.end())
          expected.push_back(j);
    }
    std::sort(expected.begin(), expected.end());
    CHECK(s.polytope_cone(pts, tol).constraints == expected);
  }
}

TEST_CASE_TEMPLATE("cone inclusion is pure index comparison", S, double, Rational) {
  auto s = unit_simplex<S>(3);
  auto c12 = s.cone_from_constraints({1, 2});
  auto c1 = s.cone_from_constraints({1});
  auto c2 = s.cone_from_constraints({2});
  CHECK(cone_includes(c12, c1));
  CHECK_FALSE(cone_includes(c1, c2));
  CHECK(cone_includes(c1, c1));
  CHECK(cone_includes(c12, s.cone_from_constraints({})));
}

TEST_CASE("vertex deletion: fewer non-exit active vertices give smaller cones") {
  auto tol = Tolerances<Rational>::defaults();
  Rng rng(17);
  for (int n : {2, 3}) {
    auto s = unit_simplex<Rational>(n);
    for (int it = 0; it < 250; ++it) {
      std::vector<int> tx, ty;
      for (int i = 0; i <= n; ++i) {
        bool in_x = rng.coin();
        if (in_x) tx.push_back(i);
        // I(y) must cover I(x) minus the exit vertex
        if ((in_x && i != 0) || rng.coin()) ty.push_back(i);
      }
      if (tx.empty() || ty.empty()) continue;
      auto cx = s.tangent_cone(point_on_face<Rational>(rng, s, tx), tol);
      auto cy = s.tangent_cone(point_on_face<Rational>(rng, s, ty), tol);
      CHECK(cone_includes(cx, cy));
    }
  }
}

TEST_CASE("boundary cones of a polytope are contained in interior cones") {
  auto tol = Tolerances<Rational>::defaults();
  Rng rng(23);
  for (int n : {2, 3}) {
    auto s = unit_simplex<Rational>(n);
    for (int it = 0; it < 250; ++it) {
      int count = static_cast<int>(rng.int_in(2, 4));
      std::vector<Vec<Rational>> hull;
      for (int p = 0; p < count; ++p) {
        std::vector<int> support;
        for (int i = 0; i <= n; ++i)
          if (rng.coin()) support.push_back(i);
        if (support.empty()) support.push_back(static_cast<int>(rng.int_in(0, n)));
        hull.push_back(point_on_face<Rational>(rng, s, support));
      }
      // strict convex combination of all hull points
      Vec<Rational> x = Vec<Rational>::Zero(n);
      Rational total(0);
      std::vector<Rational> w;
      for (int p = 0; p < count; ++p) {
        w.push_back(Rational(rng.int_in(1, 8)));
        total += w.back();
      }
      for (int p = 0; p < count; ++p) x += (w[static_cast<std::size_t>(p)] / total) * hull[static_cast<std::size_t>(p)];
      auto cx = s.tangent_cone(x, tol);
      for (const auto& y : hull) CHECK(cone_includes(s.tangent_cone(y, tol), cx));
    }
  }
}

TEST_CASE("geometry operations are dimension generic") {
  auto tol = Tolerances<Rational>::defaults();
  Rng rng(101);
  auto s = unit_simplex<Rational>(5);
  CHECK(s.normal(0) == Vec<Rational>::Ones(5));
  for (int it = 0; it < 40; ++it) {
    std::vector<int> support;
    for (int i = 0; i <= 5; ++i)
      if (rng.coin()) support.push_back(i);
    if (support.empty()) support.push_back(0);
    Vec<Rational> x = point_on_face<Rational>(rng, s, support);
    auto alpha = s.barycentric(x);
    CHECK(alpha.sum() == Rational(1));
    std::sort(support.begin(), support.end());
    CHECK(s.active_indices(x, tol).indices == support);
    auto cone = s.tangent_cone(x, tol);
    for (int j : cone.constraints) {
      CHECK(j >= 1);
      CHECK_FALSE(std::binary_search(support.begin(), support.end(), j));
    }
  }
}
