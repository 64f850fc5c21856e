#include "thinob/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thinob/errors.hpp"
#include "thinob/parallel.hpp"
#include "thinob/simd.hpp"

namespace thinob {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw InvalidParameter("Gauss-Legendre rule needs at least one node");
  GaussLegendre g;
  g.nodes.resize(static_cast<std::size_t>(n));
  g.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    g.nodes[static_cast<std::size_t>(i)] = -z;
    g.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    g.weights[static_cast<std::size_t>(i)] = w;
    g.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) g.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return g;
}

TriangleRule triangle_rule(int degree) {
  if (degree < 0) throw InvalidParameter("triangle rule degree must be >= 0");
  // The collapsed map adds one power of s through the Jacobian (1 - s).
  const int n = std::max(1, (degree + 2 + 1) / 2);
  const GaussLegendre g = gauss_legendre(n);
  TriangleRule rule;
  rule.polynomial_exactness = 2 * n - 2;
  for (int i = 0; i < n; ++i) {
    const double s = 0.5 * (1.0 + g.nodes[static_cast<std::size_t>(i)]);
    const double ws = 0.5 * g.weights[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const double t = 0.5 * (1.0 + g.nodes[static_cast<std::size_t>(j)]);
      const double wt = 0.5 * g.weights[static_cast<std::size_t>(j)];
      rule.points.push_back({s, t * (1.0 - s)});
      rule.weights.push_back(ws * wt * (1.0 - s));
    }
  }
  return rule;
}

SegmentRule segment_rule(int n_nodes) {
  const GaussLegendre g = gauss_legendre(n_nodes);
  SegmentRule rule;
  rule.polynomial_exactness = 2 * n_nodes - 1;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    rule.nodes.push_back(0.5 * (1.0 + g.nodes[i]));
    rule.weights.push_back(0.5 * g.weights[i]);
  }
  return rule;
}

IntegrationFeatures& IntegrationFeatures::merge(const IntegrationFeatures& o) {
  x1_breaks.insert(x1_breaks.end(), o.x1_breaks.begin(), o.x1_breaks.end());
  singular_points.insert(singular_points.end(), o.singular_points.begin(), o.singular_points.end());
  std::sort(x1_breaks.begin(), x1_breaks.end());
  x1_breaks.erase(std::unique(x1_breaks.begin(), x1_breaks.end()), x1_breaks.end());
  std::sort(singular_points.begin(), singular_points.end(),
            [](Point a, Point b) { return a.x1 < b.x1 || (a.x1 == b.x1 && a.x2 < b.x2); });
  singular_points.erase(std::unique(singular_points.begin(), singular_points.end(),
                                    [](Point a, Point b) { return a.x1 == b.x1 && a.x2 == b.x2; }),
                        singular_points.end());
  return *this;
}

double integrate_triangle(const AreaIntegrand& f, const Triangle& element, const TriangleRule& rule) {
  const std::size_t n = rule.points.size();
  std::vector<Point> pts(n);
  std::vector<double> vals(n);
  const Point& a = element.v[0];
  const Vec2 e1{element.v[1].x1 - a.x1, element.v[1].x2 - a.x2};
  const Vec2 e2{element.v[2].x1 - a.x1, element.v[2].x2 - a.x2};
  for (std::size_t k = 0; k < n; ++k) {
    const Point r = rule.points[k];
    pts[k] = {a.x1 + r.x1 * e1.x1 + r.x2 * e2.x1, a.x2 + r.x1 * e1.x2 + r.x2 * e2.x2};
  }
  f(pts, element.side, vals);
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(vals[k])) throw EvaluationError("non-finite integrand value", pts[k].x1, pts[k].x2);
  }
  return 2.0 * element.area() * simd::weighted_sum(rule.weights, vals);
}

namespace {

double plain_segment(const LineIntegrand& f, double lo, double hi, const SegmentRule& rule) {
  const std::size_t n = rule.nodes.size();
  std::vector<double> x(n);
  std::vector<double> vals(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = lo + (hi - lo) * rule.nodes[k];
  f(x, vals);
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(vals[k])) throw EvaluationError("non-finite integrand value", x[k], 0.0);
  }
  return (hi - lo) * simd::weighted_sum(rule.weights, vals);
}

// Nodes of the substitution x = c + sign * t^2 on [lo, hi], all on one side of c.
void substituted_nodes(double c, double lo, double hi, const SegmentRule& rule, LineNodes& out) {
  const bool left = hi <= c;
  const double t_lo = std::sqrt(left ? c - hi : lo - c);
  const double t_hi = std::sqrt(left ? c - lo : hi - c);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double t = t_lo + (t_hi - t_lo) * rule.nodes[k];
    out.x.push_back(left ? c - t * t : c + t * t);
    out.w.push_back((t_hi - t_lo) * rule.weights[k] * 2.0 * t);
  }
}

void plain_nodes(double lo, double hi, const SegmentRule& rule, LineNodes& out) {
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    out.x.push_back(lo + (hi - lo) * rule.nodes[k]);
    out.w.push_back((hi - lo) * rule.weights[k]);
  }
}

double sum_nodes(const LineIntegrand& f, const LineNodes& nodes) {
  std::vector<double> vals(nodes.x.size());
  f(nodes.x, vals);
  for (std::size_t k = 0; k < vals.size(); ++k) {
    if (!std::isfinite(vals[k])) throw EvaluationError("non-finite integrand value", nodes.x[k], 0.0);
  }
  return simd::weighted_sum(nodes.w, vals);
}

}  // namespace

double integrate_segment(const LineIntegrand& f, Interval segment, Interval manifold, const SegmentRule& rule,
                         SegmentWeight weight) {
  const double tol = 1e-14 * std::max(1.0, manifold.length());
  if (!(segment.lo <= segment.hi) || segment.lo < manifold.lo - tol || segment.hi > manifold.hi + tol) {
    throw InvalidParameter("segment lies outside the manifold");
  }
  switch (weight) {
    case SegmentWeight::none:
      return plain_segment(f, segment.lo, segment.hi, rule);
    case SegmentWeight::sqrt_negative_x1: {
      if (segment.hi > tol) throw InvalidParameter("sqrt(-x1) weight requires a segment in x1 <= 0");
      LineNodes nodes;
      substituted_nodes(0.0, segment.lo, std::min(segment.hi, 0.0), rule, nodes);
      return sum_nodes(f, nodes);
    }
    case SegmentWeight::sqrt_positive_x1: {
      if (segment.lo < -tol) throw InvalidParameter("sqrt(x1) weight requires a segment in x1 >= 0");
      LineNodes nodes;
      substituted_nodes(0.0, std::max(segment.lo, 0.0), segment.hi, rule, nodes);
      return sum_nodes(f, nodes);
    }
  }
  return 0.0;
}

LineNodes manifold_nodes(Interval manifold, const SegmentRule& rule, const IntegrationFeatures& features,
                         double height) {
  const double scale = std::max(1.0, manifold.length());
  std::vector<double> centers;
  for (const Point& p : features.singular_points) {
    if (std::abs(p.x2 - height) <= 1e-14 * scale && p.x1 >= manifold.lo && p.x1 <= manifold.hi) {
      centers.push_back(p.x1);
    }
  }
  std::vector<double> cuts{manifold.lo, manifold.hi};
  for (double b : features.x1_breaks) {
    if (b > manifold.lo && b < manifold.hi) cuts.push_back(b);
  }
  for (double c : centers) {
    if (c > manifold.lo && c < manifold.hi) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [scale](double p, double q) { return std::abs(p - q) <= 1e-14 * scale; }),
             cuts.end());
  LineNodes out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    if (centers.empty()) {
      plain_nodes(lo, hi, rule, out);
      continue;
    }
    double best = centers.front();
    double best_dist = INFINITY;
    for (double c : centers) {
      const double d = c >= hi ? c - hi : (c <= lo ? lo - c : 0.0);
      if (d < best_dist) {
        best_dist = d;
        best = c;
      }
    }
    substituted_nodes(best, lo, hi, rule, out);
  }
  return out;
}

double integrate_manifold(const LineIntegrand& f, Interval manifold, const SegmentRule& rule,
                          const IntegrationFeatures& features, double height) {
  return sum_nodes(f, manifold_nodes(manifold, rule, features, height));
}

namespace {

struct Polygon {
  std::vector<Point> v;
};

// Splits a convex polygon by x1 = c into the parts left and right of it.
void split_polygon(const Polygon& poly, double c, double eps, Polygon& left, Polygon& right) {
  left.v.clear();
  right.v.clear();
  const std::size_t n = poly.v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = poly.v[i];
    const Point q = poly.v[(i + 1) % n];
    const double dp = p.x1 - c;
    const double dq = q.x1 - c;
    if (dp <= eps) left.v.push_back(dp >= -eps ? Point{c, p.x2} : p);
    if (dp >= -eps) right.v.push_back(dp <= eps ? Point{c, p.x2} : p);
    if ((dp < -eps && dq > eps) || (dp > eps && dq < -eps)) {
      const double s = dp / (dp - dq);
      const Point x{c, p.x2 + s * (q.x2 - p.x2)};
      left.v.push_back(x);
      right.v.push_back(x);
    }
  }
}

double polygon_area(const Polygon& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    const Point& u = p.v[i];
    const Point& w = p.v[(i + 1) % p.v.size()];
    a += u.x1 * w.x2 - w.x1 * u.x2;
  }
  return 0.5 * std::abs(a);
}

std::vector<Triangle> cut_element(const Triangle& t, const std::vector<double>& breaks) {
  const double scale = std::max(1e-300, t.diameter());
  const double eps = 1e-13 * scale;
  std::vector<Polygon> pieces{Polygon{{t.v[0], t.v[1], t.v[2]}}};
  const double lo = std::min({t.v[0].x1, t.v[1].x1, t.v[2].x1});
  const double hi = std::max({t.v[0].x1, t.v[1].x1, t.v[2].x1});
  for (double c : breaks) {
    if (c <= lo + eps || c >= hi - eps) continue;
    std::vector<Polygon> next;
    for (const Polygon& p : pieces) {
      Polygon l;
      Polygon r;
      split_polygon(p, c, eps, l, r);
      if (l.v.size() >= 3 && polygon_area(l) > 1e-28 * scale * scale) next.push_back(std::move(l));
      if (r.v.size() >= 3 && polygon_area(r) > 1e-28 * scale * scale) next.push_back(std::move(r));
    }
    pieces = std::move(next);
  }
  std::vector<Triangle> out;
  for (const Polygon& p : pieces) {
    for (std::size_t k = 1; k + 1 < p.v.size(); ++k) {
      Triangle s{{p.v[0], p.v[k], p.v[k + 1]}, t.side};
      if (s.area() > 1e-28 * scale * scale) out.push_back(s);
    }
  }
  return out;
}

bool same_point(Point a, Point b, double eps) { return std::abs(a.x1 - b.x1) <= eps && std::abs(a.x2 - b.x2) <= eps; }

// Barycentric position of p; returns false when p is outside t.
bool locate(const Triangle& t, Point p, double eps, std::array<double, 3>& bary) {
  const double area2 = 2.0 * t.signed_area();
  auto sub = [&](Point a, Point b, Point c) {
    return (b.x1 - a.x1) * (c.x2 - a.x2) - (c.x1 - a.x1) * (b.x2 - a.x2);
  };
  bary[0] = sub(p, t.v[1], t.v[2]) / area2;
  bary[1] = sub(t.v[0], p, t.v[2]) / area2;
  bary[2] = sub(t.v[0], t.v[1], p) / area2;
  return bary[0] >= -eps && bary[1] >= -eps && bary[2] >= -eps;
}

struct ElementIntegrator {
  const AreaIntegrand& f;
  const TriangleRule& rule;
  const std::vector<Point>& singular;
  const QuadratureConfig& config;
  int max_depth = 0;
  std::size_t sub_triangles = 0;

  double rule_on(Point a, Point b, Point c, Side side) {
    ++sub_triangles;
    return integrate_triangle(f, Triangle{{a, b, c}, side}, rule);
  }

  // Triangle with the singular point at vertex o.
  double graded(Point o, Point b, Point c, Side side) {
    double total = 0.0;
    double whole = rule_on(o, b, c, side);
    for (int depth = 0;; ++depth) {
      const Point bm{0.5 * (o.x1 + b.x1), 0.5 * (o.x2 + b.x2)};
      const Point cm{0.5 * (o.x1 + c.x1), 0.5 * (o.x2 + c.x2)};
      const double trap = rule_on(bm, b, c, side) + rule_on(bm, c, cm, side);
      const double inner = rule_on(o, bm, cm, side);
      const double change = std::abs(whole - (trap + inner));
      if (change <= config.grading_tolerance * std::abs(total + trap + inner) || depth + 1 >= config.grading_max_depth) {
        max_depth = std::max(max_depth, depth + 1);
        return total + trap + inner;
      }
      total += trap;
      b = bm;
      c = cm;
      whole = inner;
    }
  }

  double triangle(const Triangle& t, std::size_t from) {
    const double eps = 1e-12 * std::max(1e-300, t.diameter());
    for (std::size_t s = from; s < singular.size(); ++s) {
      const Point p = singular[s];
      for (int k = 0; k < 3; ++k) {
        if (same_point(t.v[static_cast<std::size_t>(k)], p, eps)) {
          const auto& v = t.v;
          return graded(v[static_cast<std::size_t>(k)], v[static_cast<std::size_t>((k + 1) % 3)],
                        v[static_cast<std::size_t>((k + 2) % 3)], t.side);
        }
      }
      std::array<double, 3> bary{};
      if (!locate(t, p, 1e-12, bary)) continue;
      std::vector<Triangle> parts;
      for (int k = 0; k < 3; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const auto j = static_cast<std::size_t>((k + 1) % 3);
        const auto opposite = static_cast<std::size_t>((k + 2) % 3);
        // Edge (i, j) contains p when the opposite coordinate vanishes.
        if (std::abs(bary[opposite]) <= 1e-12) continue;
        parts.push_back({{t.v[i], t.v[j], p}, t.side});
      }
      double sum = 0.0;
      for (const Triangle& part : parts) sum += triangle(part, s);
      return sum;
    }
    return rule_on(t.v[0], t.v[1], t.v[2], t.side);
  }
};

}  // namespace

double integrate_mesh(const AreaIntegrand& f, const Mesh& mesh, const TriangleRule& rule,
                      const IntegrationFeatures& features, const QuadratureConfig& config, std::optional<Side> only,
                      QuadratureStats* stats) {
  std::vector<double> breaks = features.x1_breaks;
  std::vector<Point> singular;
  if (config.graded) {
    singular = features.singular_points;
    // Cutting through a singular point makes it a vertex of the pieces.
    for (const Point& p : singular) breaks.push_back(p.x1);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const std::size_t n = mesh.elements.size();
  std::vector<double> contributions(n, 0.0);
  std::vector<int> depth(n, 0);
  std::vector<std::size_t> subs(n, 0);
  parallel_for(n, [&](std::size_t e) {
    const Triangle& t = mesh.elements[e];
    if (only && t.side != *only) return;
    ElementIntegrator integrator{f, rule, singular, config};
    std::vector<double> parts;
    for (const Triangle& piece : cut_element(t, breaks)) parts.push_back(integrator.triangle(piece, 0));
    contributions[e] = simd::pairwise_sum(parts);
    depth[e] = integrator.max_depth;
    subs[e] = integrator.sub_triangles;
  });
  if (stats != nullptr) {
    stats->elements = n;
    stats->sub_triangles = 0;
    stats->max_grading_depth = 0;
    for (std::size_t e = 0; e < n; ++e) {
      stats->sub_triangles += subs[e];
      stats->max_grading_depth = std::max(stats->max_grading_depth, depth[e]);
    }
  }
  return simd::pairwise_sum(contributions);
}

double integrate_domain(const AreaIntegrand& f, const Domain2D& domain, int level, const TriangleRule& rule,
                        bool graded_at_origin) {
  QuadratureConfig config;
  config.graded = graded_at_origin;
  config.level = level;
  IntegrationFeatures features;
  if (graded_at_origin) features.singular_points.push_back({0.0, 0.0});
  return integrate_mesh(f, triangulate(domain, level), rule, features, config);
}

}  // namespace thinob
