#include "thinob/minimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

#include "thinob/errors.hpp"

namespace thinob {

namespace {

struct Basis {
  // Component polynomials per side: comps[side][component]
  std::vector<std::array<std::array<Polynomial, 2>, 2>> comps;
};

// x1 components and x2-divisible x2 components are independent per side;
// x2-free x2 components are shared so that [q.n] does not change.
Basis build_basis(int degree) {
  Basis b;
  for (int d = 0; d <= degree; ++d) {
    for (int j = 0; j <= d; ++j) {
      const Polynomial m = Polynomial::monomial(d - j, j);
      for (int s = 0; s < 2; ++s) {
        std::array<std::array<Polynomial, 2>, 2> f{};
        f[s][0] = m;
        b.comps.push_back(f);
      }
      if (j > 0) {
        for (int s = 0; s < 2; ++s) {
          std::array<std::array<Polynomial, 2>, 2> f{};
          f[s][1] = m;
          b.comps.push_back(f);
        }
      } else {
        std::array<std::array<Polynomial, 2>, 2> f{};
        f[0][1] = m;
        f[1][1] = m;
        b.comps.push_back(f);
      }
    }
  }
  return b;
}

struct Nodes {
  std::vector<Point> p;
  std::vector<double> w;
};

// Plain (ungraded) composite rule; exact for the polynomial Gram entries.
Nodes collect_nodes(const Mesh& mesh, const TriangleRule& rule, Side side) {
  Nodes n;
  for (const Triangle& t : mesh.elements) {
    if (t.side != side) continue;
    const double scale = 2.0 * t.area();
    const Vec2 e1{t.v[1].x1 - t.v[0].x1, t.v[1].x2 - t.v[0].x2};
    const Vec2 e2{t.v[2].x1 - t.v[0].x1, t.v[2].x2 - t.v[0].x2};
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
      const Point r = rule.points[k];
      n.p.push_back({t.v[0].x1 + r.x1 * e1.x1 + r.x2 * e2.x1, t.v[0].x2 + r.x1 * e1.x2 + r.x2 * e2.x2});
      n.w.push_back(scale * rule.weights[k]);
    }
  }
  return n;
}

struct SideSystem {
  Eigen::MatrixXd mass;
  Eigen::MatrixXd div;
  Eigen::VectorXd misfit;  // integral of (grad v - q0) . phi_k
  Eigen::VectorXd div0;    // integral of div q0 * div phi_k
};

SideSystem assemble_side(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q0,
                         const std::vector<PolynomialFlux>& basis, Side side) {
  const QuadratureConfig& cfg = problem.quadrature;
  const Mesh mesh = triangulate(problem.domain, cfg.level);
  const TriangleRule rule = triangle_rule(cfg.triangle_degree);
  const Nodes nodes = collect_nodes(mesh, rule, side);
  const std::size_t nb = basis.size();
  const std::size_t nn = nodes.p.size();
  std::vector<std::vector<Vec2>> val(nb, std::vector<Vec2>(nn));
  std::vector<std::vector<double>> dv(nb, std::vector<double>(nn));
  for (std::size_t k = 0; k < nb; ++k) {
    basis[k].values(nodes.p, side, val[k]);
    basis[k].divergences(nodes.p, side, dv[k]);
  }
  SideSystem s;
  s.mass = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nb));
  s.div = s.mass;
  for (std::size_t k = 0; k < nb; ++k) {
    for (std::size_t l = k; l < nb; ++l) {
      double m = 0.0;
      double d = 0.0;
      for (std::size_t n = 0; n < nn; ++n) {
        m += nodes.w[n] * dot(val[k][n], val[l][n]);
        d += nodes.w[n] * dv[k][n] * dv[l][n];
      }
      const auto i = static_cast<Eigen::Index>(k);
      const auto j = static_cast<Eigen::Index>(l);
      s.mass(i, j) = s.mass(j, i) = m;
      s.div(i, j) = s.div(j, i) = d;
    }
  }

  IntegrationFeatures feats = v.features();
  feats.merge(q0.features());
  s.misfit.resize(static_cast<Eigen::Index>(nb));
  s.div0.resize(static_cast<Eigen::Index>(nb));
  for (std::size_t k = 0; k < nb; ++k) {
    const PolynomialFlux& phi = basis[k];
    const AreaIntegrand mis = [&](std::span<const Point> pts, Side sd, std::span<double> out) {
      std::vector<Vec2> gv(pts.size());
      std::vector<Vec2> qv(pts.size());
      std::vector<Vec2> pv(pts.size());
      v.gradients(pts, sd, gv);
      q0.values(pts, sd, qv);
      phi.values(pts, sd, pv);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        out[i] = (gv[i].x1 - qv[i].x1) * pv[i].x1 + (gv[i].x2 - qv[i].x2) * pv[i].x2;
      }
    };
    const AreaIntegrand dd = [&](std::span<const Point> pts, Side sd, std::span<double> out) {
      std::vector<double> a(pts.size());
      q0.divergences(pts, sd, a);
      phi.divergences(pts, sd, out);
      for (std::size_t i = 0; i < pts.size(); ++i) out[i] *= a[i];
    };
    s.misfit(static_cast<Eigen::Index>(k)) = integrate_mesh(mis, mesh, rule, feats, cfg, side);
    s.div0(static_cast<Eigen::Index>(k)) = integrate_mesh(dd, mesh, rule, feats, cfg, side);
  }
  return s;
}

FluxFieldPtr corrected_flux(const FluxFieldPtr& q0, const Basis& basis, const Eigen::VectorXd& c) {
  std::array<Polynomial, 2> plus{};
  std::array<Polynomial, 2> minus{};
  for (std::size_t k = 0; k < basis.comps.size(); ++k) {
    const double ck = c(static_cast<Eigen::Index>(k));
    for (int comp = 0; comp < 2; ++comp) {
      plus[comp] = plus[comp] + basis.comps[k][0][comp] * ck;
      minus[comp] = minus[comp] + basis.comps[k][1][comp] * ck;
    }
  }
  auto correction = std::make_shared<PolynomialFlux>(plus, minus);
  return std::make_shared<SumFlux>(std::vector<std::pair<double, FluxFieldPtr>>{{1.0, q0}, {1.0, correction}});
}

}  // namespace

MinimizationResult minimize_majorant(const ThinObstacleProblem& problem, const ScalarFieldPtr& v,
                                     const FluxFieldPtr& q0, const ConstantSet& constants,
                                     const MinimizationOptions& options) {
  if (options.iterations < 1) throw InvalidParameter("minimize_majorant: iterations must be >= 1");
  if (options.flux_degree < 0) throw InvalidParameter("minimize_majorant: flux degree must be >= 0");
  if (!v || !q0) throw InvalidParameter("minimize_majorant: null input");
  constants.require({ConstantId::friedrichs_plus, ConstantId::friedrichs_minus});
  const double cf_plus = constants.value(ConstantId::friedrichs_plus);
  const double cf_minus = constants.value(ConstantId::friedrichs_minus);

  const Basis basis = build_basis(options.flux_degree);
  std::vector<PolynomialFlux> fluxes;
  for (const auto& f : basis.comps) fluxes.emplace_back(f[0], f[1]);
  const SideSystem sp = assemble_side(problem, *v, *q0, fluxes, Side::plus);
  const SideSystem sm = assemble_side(problem, *v, *q0, fluxes, Side::minus);

  MinimizationResult res;
  FluxFieldPtr q = q0;
  double b1 = 1.0;
  double b2 = 1.0;
  MajorantReport current = majorant_M4(problem, *v, *q, b1, b2, constants);
  res.initial_value = current.value;

  for (int it = 0; it < options.iterations; ++it) {
    // lambda-bar is implicit in M4 for the current (q, beta).
    const BetaSearchResult bs =
        optimize_betas(problem, *v, *q, nullptr, constants, BetaObjective::M4, std::pair{b1, b2});
    if (bs.report.value <= current.value) {
      b1 = bs.beta1;
      b2 = bs.beta2;
      current = bs.report;
    }

    const double bp = cf_plus * current.terms.at("divergence_residual_plus");
    const double bm = cf_minus * current.terms.at("divergence_residual_minus");
    const double t = std::clamp(bp + bm > 0.0 ? bp / (bp + bm) : 0.5, 1e-3, 1.0 - 1e-3);
    const double wa = 1.0 + b1;
    const double k = (1.0 + 1.0 / b1) * (1.0 + b2);
    const double wp = k * cf_plus * cf_plus / t;
    const double wm = k * cf_minus * cf_minus / (1.0 - t);
    const Eigen::MatrixXd g = wa * (sp.mass + sm.mass) + wp * sp.div + wm * sm.div;
    const Eigen::VectorXd rhs = wa * (sp.misfit + sm.misfit) - wp * sp.div0 - wm * sm.div0;
    const Eigen::VectorXd c = g.ldlt().solve(rhs);
    bool accepted = false;
    if (c.allFinite()) {
      FluxFieldPtr candidate = corrected_flux(q0, basis, c);
      MajorantReport cand = majorant_M4(problem, *v, *candidate, b1, b2, constants);
      if (cand.value <= current.value) {
        q = std::move(candidate);
        current = std::move(cand);
        accepted = true;
      }
    }
    res.flux_step_accepted.push_back(accepted);
    res.history.push_back(current.value);
  }

  double prev = res.initial_value;
  for (double h : res.history) {
    if (h > prev) throw InternalDefect("majorant minimization produced an increasing step");
    prev = h;
  }
  res.flux = q;
  res.multiplier = optimal_lambda(v, q, problem.psi, b1, b2, constants);
  res.beta1 = b1;
  res.beta2 = b2;
  res.report = current;
  res.report.parameters["iterations"] = options.iterations;
  return res;
}

}  // namespace thinob
