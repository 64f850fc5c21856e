#include "thinob/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "thinob/errors.hpp"

namespace thinob {

const char* to_string(Side side) { return side == Side::plus ? "plus" : "minus"; }

double Triangle::signed_area() const {
  return 0.5 * ((v[1].x1 - v[0].x1) * (v[2].x2 - v[0].x2) - (v[2].x1 - v[0].x1) * (v[1].x2 - v[0].x2));
}

double Triangle::area() const { return std::abs(signed_area()); }

double Triangle::diameter() const {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Point& p = v[i];
    const Point& q = v[(i + 1) % 3];
    d = std::max(d, std::hypot(p.x1 - q.x1, p.x2 - q.x2));
  }
  return d;
}

Domain2D build_domain(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidParameter("domain half width must be positive and finite, got " + std::to_string(a));
  }
  Domain2D d;
  d.a_ = a;
  d.plus_ = Triangle{{Point{-a, 0.0}, Point{a, 0.0}, Point{0.0, a}}, Side::plus};
  d.minus_ = Triangle{{Point{-a, 0.0}, Point{0.0, -a}, Point{a, 0.0}}, Side::minus};
  const double s = 1.0 / std::sqrt(2.0);
  d.boundary_ = {{
      {"i", Point{a, 0.0}, Point{0.0, a}, Vec2{s, s}, {1.0, 1.0, -a}, Side::plus},
      {"ii", Point{0.0, a}, Point{-a, 0.0}, Vec2{-s, s}, {-1.0, 1.0, -a}, Side::plus},
      {"iii", Point{-a, 0.0}, Point{0.0, -a}, Vec2{-s, -s}, {-1.0, -1.0, -a}, Side::minus},
      {"iv", Point{0.0, -a}, Point{a, 0.0}, Vec2{s, -s}, {1.0, -1.0, -a}, Side::minus},
  }};
  return d;
}

namespace {

Point midpoint(Point p, Point q) { return {0.5 * (p.x1 + q.x1), 0.5 * (p.x2 + q.x2)}; }

}  // namespace

std::vector<Triangle> refine_uniform(const std::vector<Triangle>& base, int level) {
  if (level < 0) throw InvalidParameter("refinement level must be >= 0");
  std::vector<Triangle> current = base;
  for (int l = 0; l < level; ++l) {
    std::vector<Triangle> next;
    next.reserve(current.size() * 4);
    for (const Triangle& t : current) {
      const Point m01 = midpoint(t.v[0], t.v[1]);
      const Point m12 = midpoint(t.v[1], t.v[2]);
      const Point m20 = midpoint(t.v[2], t.v[0]);
      next.push_back({{t.v[0], m01, m20}, t.side});
      next.push_back({{m01, t.v[1], m12}, t.side});
      next.push_back({{m20, m12, t.v[2]}, t.side});
      next.push_back({{m12, m20, m01}, t.side});
    }
    current = std::move(next);
  }
  return current;
}

Mesh triangulate(const Domain2D& domain, int level) {
  Mesh mesh;
  mesh.refinement_level = level;
  mesh.elements = refine_uniform({domain.subdomain_plus(), domain.subdomain_minus()}, level);
  const Interval m = domain.manifold();
  const int n = 1 << level;
  mesh.manifold_edges.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double lo = m.lo + m.length() * static_cast<double>(k) / n;
    const double hi = k + 1 == n ? m.hi : m.lo + m.length() * static_cast<double>(k + 1) / n;
    mesh.manifold_edges.push_back({lo, hi});
  }
  return mesh;
}

}  // namespace thinob
