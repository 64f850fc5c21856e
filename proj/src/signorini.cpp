#include "thinob/signorini.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "thinob/errors.hpp"
#include "thinob/simd.hpp"

namespace thinob {

double SignoriniDomain::diameter() const { return std::hypot(x1_hi_ - x1_lo_, x2_hi_ - x2_lo_); }

Mesh SignoriniDomain::triangulate(int level) const {
  const Point sw{x1_lo_, x2_lo_};
  const Point se{x1_hi_, x2_lo_};
  const Point ne{x1_hi_, x2_hi_};
  const Point nw{x1_lo_, x2_hi_};
  Mesh mesh;
  mesh.refinement_level = level;
  mesh.elements = refine_uniform({{{sw, se, ne}, Side::plus}, {{sw, ne, nw}, Side::plus}}, level);
  const int n = 1 << level;
  for (int k = 0; k < n; ++k) {
    const double lo = x1_lo_ + (x1_hi_ - x1_lo_) * k / n;
    const double hi = k + 1 == n ? x1_hi_ : x1_lo_ + (x1_hi_ - x1_lo_) * (k + 1) / n;
    mesh.manifold_edges.push_back({lo, hi});
  }
  return mesh;
}

SignoriniDomain build_signorini_domain(double x1_lo, double x1_hi, double x2_lo, double x2_hi) {
  for (double v : {x1_lo, x1_hi, x2_lo, x2_hi}) {
    if (!std::isfinite(v)) throw InvalidParameter("rectangle bounds must be finite");
  }
  if (!(x1_hi > x1_lo) || !(x2_hi > x2_lo)) throw InvalidParameter("rectangle must have positive extent");
  SignoriniDomain d;
  d.x1_lo_ = x1_lo;
  d.x1_hi_ = x1_hi;
  d.x2_lo_ = x2_lo;
  d.x2_hi_ = x2_hi;
  d.dirichlet_ = {{
      {"right", Point{x1_hi, x2_lo}, Point{x1_hi, x2_hi}, Vec2{1.0, 0.0}, {1.0, 0.0, -x1_hi}, Side::plus},
      {"top", Point{x1_hi, x2_hi}, Point{x1_lo, x2_hi}, Vec2{0.0, 1.0}, {0.0, 1.0, -x2_hi}, Side::plus},
      {"left", Point{x1_lo, x2_hi}, Point{x1_lo, x2_lo}, Vec2{-1.0, 0.0}, {-1.0, 0.0, x1_lo}, Side::plus},
  }};
  return d;
}

AdmissibilityReport check_admissible_signorini(const ScalarField& v, const SignoriniProblem& problem) {
  if (!problem.psi || !problem.phi) throw InvalidParameter("problem needs an obstacle psi and boundary datum phi");
  const SignoriniDomain& d = problem.domain;
  AdmissibilityReport rep;
  rep.tolerance = problem.admissibility_tol;
  rep.min_gap_on_manifold = std::numeric_limits<double>::infinity();
  constexpr int n_m = 1025;
  for (int k = 0; k < n_m; ++k) {
    const Point p{d.x1_lo() + (d.x1_hi() - d.x1_lo()) * k / (n_m - 1), d.x2_lo()};
    rep.min_gap_on_manifold =
        std::min(rep.min_gap_on_manifold, v.value(p, Side::plus) - problem.psi->value(p, Side::plus));
  }
  constexpr int n_b = 257;
  for (const BoundaryPiece& piece : d.dirichlet_boundary()) {
    for (int k = 0; k < n_b; ++k) {
      const double t = static_cast<double>(k) / (n_b - 1);
      const Point p{piece.begin.x1 + t * (piece.end.x1 - piece.begin.x1),
                    piece.begin.x2 + t * (piece.end.x2 - piece.begin.x2)};
      rep.max_boundary_mismatch =
          std::max(rep.max_boundary_mismatch, std::abs(v.value(p, Side::plus) - problem.phi->value(p, Side::plus)));
    }
  }
  rep.admissible = rep.min_gap_on_manifold >= -rep.tolerance && rep.max_boundary_mismatch <= rep.tolerance;
  return rep;
}

ConstantSet assemble_signorini_constants(const SignoriniDomain& domain, const ConstantSet& overrides,
                                         const std::vector<ConstantId>& required) {
  ConstantSet out;
  out.set(ConstantId::signorini_poincare, {payne_weinberger(domain.diameter()), Provenance::payne_weinberger, "diam/pi"});
  for (const auto& [id, c] : overrides.entries()) {
    Constant copy = c;
    copy.provenance = Provenance::user_supplied;
    out.set(id, std::move(copy));
  }
  out.require(required);
  return out;
}

namespace {

struct Terms {
  double flux_misfit_sq = 0.0;
  double div_sq = 0.0;
  double div_mean = 0.0;
  double pairing = 0.0;
  double jump_residual_sq = 0.0;
  double manifold_mean = 0.0;
  QuadratureStats stats;
};

Terms compute(const SignoriniProblem& problem, const ScalarField& v, const FluxField& q, const MultiplierField& lambda) {
  const AdmissibilityReport adm = check_admissible_signorini(v, problem);
  if (!adm.admissible) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "approximation is not admissible: min(v - psi) on M = %.17g, max |v - phi| = %.17g",
                  adm.min_gap_on_manifold, adm.max_boundary_mismatch);
    throw Inadmissible(buf);
  }
  const SignoriniDomain& d = problem.domain;
  const QuadratureConfig& cfg = problem.quadrature;
  IntegrationFeatures feats = v.features();
  feats.merge(q.features());
  feats.merge(problem.psi->features());
  feats.merge(lambda.features());
  const Mesh mesh = d.triangulate(cfg.level);
  const TriangleRule rule = triangle_rule(cfg.triangle_degree);
  Terms t;
  const AreaIntegrand misfit = [&](std::span<const Point> pts, Side side, std::span<double> out) {
    std::vector<Vec2> gv(pts.size());
    std::vector<Vec2> qv(pts.size());
    v.gradients(pts, side, gv);
    q.values(pts, side, qv);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double d1 = gv[k].x1 - qv[k].x1;
      const double d2 = gv[k].x2 - qv[k].x2;
      out[k] = d1 * d1 + d2 * d2;
    }
  };
  t.flux_misfit_sq = integrate_mesh(misfit, mesh, rule, feats, cfg, std::nullopt, &t.stats);
  const AreaIntegrand div_sq = [&](std::span<const Point> pts, Side side, std::span<double> out) {
    q.divergences(pts, side, out);
    for (double& x : out) x *= x;
  };
  const AreaIntegrand div = [&](std::span<const Point> pts, Side side, std::span<double> out) {
    q.divergences(pts, side, out);
  };
  t.div_sq = integrate_mesh(div_sq, mesh, rule, feats, cfg);
  t.div_mean = integrate_mesh(div, mesh, rule, feats, cfg);

  const LineNodes nodes = manifold_nodes(d.contact(), segment_rule(cfg.segment_nodes), feats, d.x2_lo());
  const std::size_t n = nodes.x.size();
  std::vector<double> pair(n);
  std::vector<double> res(n);
  std::vector<double> res_sq(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Point p{nodes.x[k], d.x2_lo()};
    const double lam = lambda.value(nodes.x[k]);
    if (lam < -problem.admissibility_tol) throw Inadmissible("multiplier is negative at x1 = " + std::to_string(p.x1));
    const double gap = std::max(v.value(p, Side::plus) - problem.psi->value(p, Side::plus), 0.0);
    const double qn = -q.value(p, Side::plus).x2;
    pair[k] = lam * gap;
    res[k] = lam - qn;
    res_sq[k] = res[k] * res[k];
    if (!std::isfinite(pair[k]) || !std::isfinite(res[k])) throw EvaluationError("non-finite value on M", p.x1, p.x2);
  }
  t.pairing = simd::weighted_sum(nodes.w, pair);
  t.jump_residual_sq = simd::weighted_sum(nodes.w, res_sq);
  t.manifold_mean = simd::weighted_sum(nodes.w, res);
  return t;
}

double scaled(MajorantReport& r, const ConstantSet& c, ConstantId id, double norm) {
  if (norm == 0.0) return 0.0;
  r.constants_used[id] = c.get(id);
  return c.value(id) * norm;
}

MajorantReport assemble(const Terms& t, const ConstantSet& c, MajorantKind kind, ConstantId area_id,
                        ConstantId line_id) {
  MajorantReport r;
  r.kind = kind;
  r.quadrature = t.stats;
  const double a = std::sqrt(t.flux_misfit_sq);
  const double dv = std::sqrt(t.div_sq);
  const double jr = std::sqrt(t.jump_residual_sq);
  r.terms["flux_misfit"] = a;
  r.terms["manifold_pairing"] = t.pairing;
  r.terms["divergence_residual"] = dv;
  r.terms["jump_residual"] = jr;
  r.terms["mean_div"] = std::abs(t.div_mean);
  r.terms["manifold_mean"] = std::abs(t.manifold_mean);
  const double wd = scaled(r, c, area_id, dv);
  const double wj = scaled(r, c, line_id, jr);
  r.terms["weighted_divergence"] = wd;
  r.terms["weighted_jump"] = wj;
  r.value = a + std::sqrt(2.0 * std::max(t.pairing, 0.0)) + wd + wj;
  return r;
}

}  // namespace

double energy_error_signorini(const ScalarField& v, const ScalarField& u, const SignoriniProblem& problem) {
  IntegrationFeatures feats = v.features();
  feats.merge(u.features());
  const AreaIntegrand f = [&](std::span<const Point> pts, Side side, std::span<double> out) {
    std::vector<Vec2> gv(pts.size());
    std::vector<Vec2> gu(pts.size());
    v.gradients(pts, side, gv);
    u.gradients(pts, side, gu);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double d1 = gv[k].x1 - gu[k].x1;
      const double d2 = gv[k].x2 - gu[k].x2;
      out[k] = d1 * d1 + d2 * d2;
    }
  };
  const QuadratureConfig& cfg = problem.quadrature;
  const double sq = integrate_mesh(f, problem.domain.triangulate(cfg.level), triangle_rule(cfg.triangle_degree), feats, cfg);
  return std::sqrt(std::max(sq, 0.0));
}

MajorantReport majorant_signorini(const SignoriniProblem& problem, const ScalarField& v, const FluxField& q,
                                  const MultiplierField& lambda, const ConstantSet& constants) {
  return assemble(compute(problem, v, q, lambda), constants, MajorantKind::signorini, ConstantId::signorini_friedrichs,
                  ConstantId::signorini_trace);
}

MajorantReport majorant_signorini_poincare(const SignoriniProblem& problem, const ScalarField& v, const FluxField& q,
                                           const MultiplierField& lambda, const ConstantSet& constants) {
  const Terms t = compute(problem, v, q, lambda);
  std::vector<std::pair<std::string, double>> measured;
  if (std::abs(t.div_mean) > 1e-10) measured.emplace_back("mean_div", t.div_mean);
  if (std::abs(t.manifold_mean) > 1e-10) measured.emplace_back("manifold_mean", t.manifold_mean);
  if (!measured.empty()) {
    std::string what = "zero-mean condition violated:";
    char buf[80];
    for (const auto& [name, val] : measured) {
      std::snprintf(buf, sizeof buf, " %s = %.17g", name.c_str(), val);
      what += buf;
    }
    throw ConditionViolation(what, measured);
  }
  return assemble(t, constants, MajorantKind::signorini_poincare, ConstantId::signorini_poincare,
                  ConstantId::signorini_poincare_manifold);
}

MultiplierFieldPtr signorini_multiplier_from_flux(const FluxFieldPtr& q, double x2_contact) {
  if (!q) throw InvalidParameter("signorini_multiplier_from_flux: null flux");
  return std::make_shared<FunctionMultiplier>(
      "max(" + q->describe() + ".n, 0)",
      [q, x2_contact](double x1) { return std::max(-q->value({x1, x2_contact}, Side::plus).x2, 0.0); },
      q->features());
}

}  // namespace thinob
