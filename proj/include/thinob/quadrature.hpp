#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "thinob/geometry.hpp"

namespace thinob {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the three-term recurrence.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Rule on the reference triangle (0,0), (1,0), (0,1). Points are given in
/// reference coordinates; weights sum to 1/2.
struct TriangleRule {
  std::vector<Point> points;
  std::vector<double> weights;
  int polynomial_exactness = 0;
};

/// Collapsed (Duffy) tensor Gauss rule exact for total degree <= `degree`.
TriangleRule triangle_rule(int degree);

/// Rule on [0, 1]; weights sum to 1.
struct SegmentRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int polynomial_exactness = 0;
};
SegmentRule segment_rule(int n_nodes);

struct QuadratureConfig {
  int triangle_degree = 12;
  int segment_nodes = 16;
  bool graded = true;
  int level = 2;
  double grading_tolerance = 1e-12;
  int grading_max_depth = 40;
};

/// Where integrands lose smoothness. Elements are cut along the vertical
/// lines x1 = break and graded toward each singular point; manifold pieces
/// adjacent to a singular point are integrated after a square-root
/// substitution centered there.
struct IntegrationFeatures {
  std::vector<double> x1_breaks;
  std::vector<Point> singular_points;

  IntegrationFeatures& merge(const IntegrationFeatures& o);
};

struct QuadratureStats {
  std::size_t elements = 0;
  std::size_t sub_triangles = 0;
  int max_grading_depth = 0;
};

/// Batched integrands: fill out[k] with the value at pts[k] (or x1[k]).
using AreaIntegrand = std::function<void(std::span<const Point>, Side, std::span<double>)>;
using LineIntegrand = std::function<void(std::span<const double>, std::span<double>)>;

/// Affine-mapped rule on one triangle. Throws EvaluationError on a
/// non-finite integrand value.
double integrate_triangle(const AreaIntegrand& f, const Triangle& element, const TriangleRule& rule);

enum class SegmentWeight { none, sqrt_negative_x1, sqrt_positive_x1 };

/// Integral of f over `segment` (a piece of `manifold`). With a sqrt weight
/// the substitution x1 = -t^2 (or x1 = t^2) is applied; the weight itself
/// is part of f.
double integrate_segment(const LineIntegrand& f, Interval segment, Interval manifold, const SegmentRule& rule,
                         SegmentWeight weight = SegmentWeight::none);

/// Sum of per-element integrals with cuts and grading from `features`.
/// Per-element values are reduced pairwise in mesh order, so the result does
/// not depend on the worker count. `only` restricts to one side.
double integrate_mesh(const AreaIntegrand& f, const Mesh& mesh, const TriangleRule& rule,
                      const IntegrationFeatures& features, const QuadratureConfig& config,
                      std::optional<Side> only = std::nullopt, QuadratureStats* stats = nullptr);

/// Whole-domain integral on a fresh mesh of the given level.
double integrate_domain(const AreaIntegrand& f, const Domain2D& domain, int level, const TriangleRule& rule,
                        bool graded_at_origin);

/// Flattened nodes for integrals over a manifold interval at height x2 =
/// `height`, split at breaks and substituted near singular points.
struct LineNodes {
  std::vector<double> x;
  std::vector<double> w;
};
LineNodes manifold_nodes(Interval manifold, const SegmentRule& rule, const IntegrationFeatures& features,
                         double height = 0.0);

double integrate_manifold(const LineIntegrand& f, Interval manifold, const SegmentRule& rule,
                          const IntegrationFeatures& features, double height = 0.0);

}  // namespace thinob
