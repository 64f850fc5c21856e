#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "thinob/errors.hpp"
#include "thinob/geometry.hpp"

using namespace thinob;

TEST_CASE("build_domain: unit square geometry") {
  const Domain2D d = build_domain(1.0);
  CHECK(d.half_width() == 1.0);
  CHECK(d.manifold().length() == doctest::Approx(2.0));
  CHECK(d.subdomain_plus().area() == doctest::Approx(1.0));
  CHECK(d.subdomain_minus().area() == doctest::Approx(1.0));
  CHECK(d.subdomain_plus().side == Side::plus);
  CHECK(d.subdomain_minus().side == Side::minus);
}

TEST_CASE("build_domain: a = 2 scales lengths and areas") {
  const Domain2D d = build_domain(2.0);
  CHECK(d.manifold().length() == doctest::Approx(4.0));
  CHECK(d.subdomain_plus().area() == doctest::Approx(4.0));
  CHECK(d.subdomain_minus().area() == doctest::Approx(4.0));
}

TEST_CASE("build_domain rejects degenerate or non-finite widths") {
  CHECK_THROWS_AS(build_domain(0.0), InvalidParameter);
  CHECK_THROWS_AS(build_domain(-1.0), InvalidParameter);
  CHECK_THROWS_AS(build_domain(NAN), InvalidParameter);
}

TEST_CASE("boundary pieces: line equations, endpoints and outward normals") {
  for (double a : {0.5, 1.0, 3.0}) {
    const Domain2D d = build_domain(a);
    int count = 0;
    for (const BoundaryPiece& b : d.boundary()) {
      ++count;
      for (const Point p : {b.begin, b.end}) {
        CHECK(b.equation[0] * p.x1 + b.equation[1] * p.x2 + b.equation[2] == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(std::abs(p.x1) + std::abs(p.x2) == doctest::Approx(a));
      }
      CHECK(std::hypot(b.outward_normal.x1, b.outward_normal.x2) == doctest::Approx(1.0));
      // outward: the midpoint plus a small step along n leaves the domain
      const Point mid{0.5 * (b.begin.x1 + b.end.x1) + 1e-3 * b.outward_normal.x1,
                      0.5 * (b.begin.x2 + b.end.x2) + 1e-3 * b.outward_normal.x2};
      CHECK(std::abs(mid.x1) + std::abs(mid.x2) > a);
    }
    CHECK(count == 4);
  }
}

TEST_CASE("triangulate: element and manifold edge counts") {
  const Domain2D d = build_domain(1.0);
  const Mesh m0 = triangulate(d, 0);
  CHECK(m0.elements.size() == 2);
  CHECK(m0.manifold_edges.size() == 1);
  const Mesh m2 = triangulate(d, 2);
  CHECK(m2.elements.size() == 32);
  CHECK(m2.manifold_edges.size() == 4);
  CHECK(m2.refinement_level == 2);
}

TEST_CASE("triangulate: areas, manifold partition and side tags at every level") {
  for (double a : {0.5, 1.0, 2.0}) {
    const Domain2D d = build_domain(a);
    for (int level = 0; level <= 4; ++level) {
      const Mesh m = triangulate(d, level);
      double area = 0.0;
      for (const Triangle& t : m.elements) {
        area += t.area();
        CHECK(t.signed_area() > 0.0);
        for (const Point& p : t.v) {
          if (t.side == Side::plus) {
            CHECK(p.x2 >= 0.0);
          } else {
            CHECK(p.x2 <= 0.0);
          }
        }
      }
      CHECK(area == doctest::Approx(2.0 * a * a).epsilon(1e-12));
      double len = 0.0;
      double expect = -a;
      for (const ManifoldEdge& e : m.manifold_edges) {
        CHECK(e.x1_begin == doctest::Approx(expect).epsilon(1e-14));
        expect = e.x1_end;
        len += e.x1_end - e.x1_begin;
      }
      CHECK(expect == doctest::Approx(a));
      CHECK(len == doctest::Approx(2.0 * a).epsilon(1e-12));
    }
  }
}

TEST_CASE("refine_uniform produces 4^level congruent children") {
  const Triangle base{{Point{0.0, 0.0}, Point{2.0, 0.0}, Point{0.0, 1.0}}, Side::minus};
  const auto kids = refine_uniform({base}, 3);
  CHECK(kids.size() == 64);
  for (const Triangle& t : kids) {
    CHECK(t.area() == doctest::Approx(base.area() / 64.0));
    CHECK(t.side == Side::minus);
  }
}

TEST_CASE("triangle diameter is the longest edge") {
  const Triangle t{{Point{-1.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0}}, Side::plus};
  CHECK(t.diameter() == doctest::Approx(2.0));
}
