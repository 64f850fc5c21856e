#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace thinob {

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Vec2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

inline double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }

/// Which side of the manifold a point or element belongs to. Resolves
/// two-sided traces for points lying exactly on M.
enum class Side : std::uint8_t { plus, minus };

const char* to_string(Side side);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct Triangle {
  std::array<Point, 3> v;
  Side side = Side::plus;

  /// Signed area, positive for counter-clockwise vertices.
  double signed_area() const;
  double area() const;
  double diameter() const;
};

/// One straight piece of the outer boundary, written as
/// c1*x1 + c2*x2 + c0 = 0 with unit outward normal.
struct BoundaryPiece {
  std::string label;
  Point begin;
  Point end;
  Vec2 outward_normal;
  std::array<double, 3> equation;  // {c1, c2, c0}
  Side side = Side::plus;
};

/// Square |x1| + |x2| < a split by M = {x2 = 0} into two right triangles.
class Domain2D {
 public:
  double half_width() const { return a_; }
  const Triangle& subdomain_plus() const { return plus_; }
  const Triangle& subdomain_minus() const { return minus_; }
  const Triangle& subdomain(Side s) const { return s == Side::plus ? plus_ : minus_; }
  Interval manifold() const { return {-a_, a_}; }
  const std::array<BoundaryPiece, 4>& boundary() const { return boundary_; }

 private:
  friend Domain2D build_domain(double a);
  double a_ = 0.0;
  Triangle plus_;
  Triangle minus_;
  std::array<BoundaryPiece, 4> boundary_;
};

/// Throws InvalidParameter for a <= 0 or non-finite a.
Domain2D build_domain(double a);

/// Segment of M; the normal of the plus side, n+ = (0, -1), points from
/// plus to minus.
struct ManifoldEdge {
  double x1_begin = 0.0;
  double x1_end = 0.0;
};

struct Mesh {
  std::vector<Triangle> elements;
  std::vector<ManifoldEdge> manifold_edges;
  int refinement_level = 0;
};

/// Uniform red refinement of the one-triangle-per-side base mesh.
Mesh triangulate(const Domain2D& domain, int level);

/// Red refinement of an arbitrary list of base triangles; children keep the
/// parent's side tag and a fixed canonical order.
std::vector<Triangle> refine_uniform(const std::vector<Triangle>& base, int level);

}  // namespace thinob
