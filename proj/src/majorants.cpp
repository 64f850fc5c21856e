#include "thinob/majorants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "thinob/errors.hpp"
#include "thinob/simd.hpp"

namespace thinob {

namespace {

struct KindName {
  MajorantKind kind;
  const char* name;
  const char* notation;
};

constexpr KindName kKinds[] = {
    {MajorantKind::basic, "basic", "M_basic"},
    {MajorantKind::M, "M", "M"},
    {MajorantKind::M12, "M12", "sqrt(M1 + M2)"},
    {MajorantKind::M4, "M4", "M4 = sqrt(M1 + M3)"},
    {MajorantKind::M5, "M5", "M5"},
    {MajorantKind::M5_partial, "M5_partial", "M'3"},
    {MajorantKind::signorini, "signorini", "M^S"},
    {MajorantKind::signorini_poincare, "signorini_poincare", "M1^S"},
};

constexpr double kEquilibrationTol = 1e-10;
constexpr double kMeanTol = 1e-10;

}  // namespace

const char* to_string(MajorantKind kind) {
  for (const KindName& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

std::optional<MajorantKind> majorant_kind_from_string(const std::string& name) {
  for (const KindName& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  return std::nullopt;
}

const char* notation(MajorantKind kind) {
  for (const KindName& k : kKinds) {
    if (k.kind == kind) return k.notation;
  }
  return "?";
}

void MajorantReport::attach_exact_error(double error) {
  exact_error = error;
  if (error > 0.0) efficiency_index = value / error;
}

double c_beta(double beta1, double beta2) { return beta1 * beta2 / ((1.0 + beta1) * (1.0 + beta2)); }

namespace {

void check_betas(double beta1, double beta2) {
  if (!(beta1 > 0.0) || !(beta2 > 0.0) || !std::isfinite(beta1) || !std::isfinite(beta2)) {
    throw InvalidParameter("beta1 and beta2 must be positive and finite");
  }
}

struct AreaTerms {
  double flux_misfit_sq = 0.0;
  double div_sq[2] = {0.0, 0.0};  // plus, minus
  double div_mean[2] = {0.0, 0.0};
  QuadratureStats stats;
};

IntegrationFeatures features_of(const ScalarField& v, const FluxField& q, const ScalarField* psi) {
  IntegrationFeatures f = v.features();
  f.merge(q.features());
  if (psi != nullptr) f.merge(psi->features());
  return f;
}

void check_admissible_or_throw(const ThinObstacleProblem& problem, const ScalarField& v) {
  if (!problem.psi || !problem.phi) throw InvalidParameter("problem needs an obstacle psi and boundary datum phi");
  const AdmissibilityReport rep =
      check_admissible(v, problem.domain, *problem.psi, *problem.phi, problem.admissibility_tol);
  if (!rep.admissible) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "approximation is not admissible: min(v - psi) on M = %.17g, max |v - phi| = %.17g",
                  rep.min_gap_on_manifold, rep.max_boundary_mismatch);
    throw Inadmissible(buf);
  }
}

AreaTerms compute_area_terms(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q) {
  const QuadratureConfig& cfg = problem.quadrature;
  const Mesh mesh = triangulate(problem.domain, cfg.level);
  const TriangleRule rule = triangle_rule(cfg.triangle_degree);
  const IntegrationFeatures feats = features_of(v, q, nullptr);
  AreaTerms t;

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
    for (double& d : out) d *= d;
  };
  const AreaIntegrand div = [&](std::span<const Point> pts, Side side, std::span<double> out) {
    q.divergences(pts, side, out);
  };
  for (Side s : {Side::plus, Side::minus}) {
    const int i = s == Side::plus ? 0 : 1;
    t.div_sq[i] = integrate_mesh(div_sq, mesh, rule, feats, cfg, s);
    t.div_mean[i] = integrate_mesh(div, mesh, rule, feats, cfg, s);
  }
  return t;
}

void check_finite(const std::vector<double>& x, const std::vector<double>& vals, const char* what) {
  for (std::size_t k = 0; k < vals.size(); ++k) {
    if (!std::isfinite(vals[k])) throw EvaluationError(std::string("non-finite ") + what, x[k], 0.0);
  }
}

double sum_weighted(const std::vector<double>& w, const std::vector<double>& f) { return simd::weighted_sum(w, f); }

void record(MajorantReport& r, const ConstantSet& c, ConstantId id) { r.constants_used[id] = c.get(id); }

/// C * norm where the constant is requested only for a nonzero norm.
double scaled(MajorantReport& r, const ConstantSet& c, ConstantId id, double norm) {
  if (norm == 0.0) return 0.0;
  record(r, c, id);
  return c.value(id) * norm;
}

void fill_common_terms(MajorantReport& r, const ResidualTerms& t) {
  r.terms["flux_misfit"] = std::sqrt(t.flux_misfit_sq);
  r.terms["manifold_pairing"] = t.pairing;
  r.terms["divergence_residual_plus"] = std::sqrt(t.div_sq_plus);
  r.terms["divergence_residual_minus"] = std::sqrt(t.div_sq_minus);
  r.terms["jump_residual"] = std::sqrt(t.jump_residual_sq);
  r.quadrature = t.stats;
}

double kappa_of(double beta1, double beta2, double trace_constant) {
  return c_beta(beta1, beta2) / (trace_constant * trace_constant);
}

double lambda_bar(double g, double j, std::optional<double> kappa) {
  if (kappa) return j >= *kappa * g ? std::max(j - *kappa * g, 0.0) : 0.0;
  if (j < 0.0) return 0.0;
  if (g == 0.0) return j;
  if (j == 0.0) return 0.0;
  throw IncompleteConstants({to_string(ConstantId::trace_manifold)});
}

double rho(double g, double j, std::optional<double> kappa) {
  if (kappa) return j >= *kappa * g ? g * (2.0 * j - *kappa * g) : j * j / *kappa;
  if (g == 0.0 && j >= 0.0) return 0.0;
  if (j == 0.0 && g > 0.0) return 0.0;
  throw IncompleteConstants({to_string(ConstantId::trace_manifold)});
}

class OptimalMultiplier final : public MultiplierField {
 public:
  OptimalMultiplier(ScalarFieldPtr v, FluxFieldPtr q, ScalarFieldPtr psi, double beta1, double beta2,
                    std::optional<double> trace_constant)
      : v_(std::move(v)), q_(std::move(q)), psi_(std::move(psi)), beta1_(beta1), beta2_(beta2) {
    if (trace_constant) kappa_ = kappa_of(beta1, beta2, *trace_constant);
  }

  double value(double x1) const override {
    const double g = std::max(v_->value({x1, 0.0}, Side::plus) - psi_->value({x1, 0.0}, Side::plus), 0.0);
    return lambda_bar(g, q_->normal_jump(x1), kappa_);
  }

  IntegrationFeatures features() const override {
    IntegrationFeatures f = v_->features();
    f.merge(q_->features());
    f.merge(psi_->features());
    return f;
  }

  std::string describe() const override {
    char buf[96];
    std::snprintf(buf, sizeof buf, "lambda_bar(beta1=%.17g, beta2=%.17g)", beta1_, beta2_);
    return buf;
  }

 private:
  ScalarFieldPtr v_;
  FluxFieldPtr q_;
  ScalarFieldPtr psi_;
  double beta1_;
  double beta2_;
  std::optional<double> kappa_;
};

std::optional<double> trace_if_present(const ConstantSet& c) {
  if (c.has(ConstantId::trace_manifold)) return c.value(ConstantId::trace_manifold);
  return std::nullopt;
}

struct M1Parts {
  double a_sq = 0.0;
  double b = 0.0;
};

M1Parts m1_parts(MajorantReport& r, const ConstantSet& c, double flux_misfit_sq, double div_sq_plus,
                 double div_sq_minus) {
  M1Parts p;
  p.a_sq = flux_misfit_sq;
  p.b = scaled(r, c, ConstantId::friedrichs_plus, std::sqrt(div_sq_plus)) +
        scaled(r, c, ConstantId::friedrichs_minus, std::sqrt(div_sq_minus));
  return p;
}

double m1_value(const M1Parts& p, double beta1, double beta2) {
  return (1.0 + beta1) * p.a_sq + (1.0 + 1.0 / beta1) * (1.0 + beta2) * p.b * p.b;
}

MajorantReport report_M12(const ResidualTerms& t, const ConstantSet& c, double beta1, double beta2) {
  check_betas(beta1, beta2);
  MajorantReport r;
  r.kind = MajorantKind::M12;
  fill_common_terms(r, t);
  const M1Parts p = m1_parts(r, c, t.flux_misfit_sq, t.div_sq_plus, t.div_sq_minus);
  const double tr = scaled(r, c, ConstantId::trace_manifold, std::sqrt(t.jump_residual_sq));
  const double m1 = m1_value(p, beta1, beta2);
  const double m2 = (1.0 + 1.0 / beta1) * (1.0 + 1.0 / beta2) * tr * tr + 2.0 * std::max(t.pairing, 0.0);
  r.terms["M1"] = m1;
  r.terms["M2"] = m2;
  r.parameters["beta1"] = beta1;
  r.parameters["beta2"] = beta2;
  r.value = std::sqrt(m1 + m2);
  return r;
}

MajorantReport report_M4(const AreaTerms& a, const ManifoldSamples& s, const ConstantSet& c, double beta1,
                         double beta2) {
  check_betas(beta1, beta2);
  MajorantReport r;
  r.kind = MajorantKind::M4;
  r.terms["flux_misfit"] = std::sqrt(a.flux_misfit_sq);
  r.terms["divergence_residual_plus"] = std::sqrt(a.div_sq[0]);
  r.terms["divergence_residual_minus"] = std::sqrt(a.div_sq[1]);
  r.quadrature = a.stats;
  const M1Parts p = m1_parts(r, c, a.flux_misfit_sq, a.div_sq[0], a.div_sq[1]);
  std::optional<double> trace;
  if (rho_needs_trace_constant(s)) {
    record(r, c, ConstantId::trace_manifold);
    trace = c.value(ConstantId::trace_manifold);
  }
  const double m1 = m1_value(p, beta1, beta2);
  const double m3 = rho_integral(s, beta1, beta2, trace);
  r.terms["M1"] = m1;
  r.terms["rho_integral"] = m3;
  r.parameters["beta1"] = beta1;
  r.parameters["beta2"] = beta2;
  r.value = std::sqrt(m1 + m3);
  return r;
}

}  // namespace

ResidualTerms compute_residuals(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                                const MultiplierField& lambda) {
  check_admissible_or_throw(problem, v);
  const double tol = problem.admissibility_tol;
  const Interval m = problem.domain.manifold();
  if (const double lo = min_multiplier_on_grid(lambda, m); lo < -tol) {
    throw Inadmissible("multiplier is negative on M (min " + std::to_string(lo) + ")");
  }
  const AreaTerms a = compute_area_terms(problem, v, q);
  ResidualTerms t;
  t.flux_misfit_sq = a.flux_misfit_sq;
  t.div_sq_plus = a.div_sq[0];
  t.div_sq_minus = a.div_sq[1];
  t.div_mean_plus = a.div_mean[0];
  t.div_mean_minus = a.div_mean[1];
  t.stats = a.stats;

  const ManifoldSamples s = sample_manifold(problem, v, q, lambda.features());
  const std::size_t n = s.x.size();
  std::vector<double> lam(n);
  std::vector<double> pair(n);
  std::vector<double> res(n);
  std::vector<double> res_sq(n);
  for (std::size_t k = 0; k < n; ++k) {
    lam[k] = lambda.value(s.x[k]);
    if (lam[k] < -tol) throw Inadmissible("multiplier is negative at x1 = " + std::to_string(s.x[k]));
    pair[k] = lam[k] * s.gap[k];
    res[k] = lam[k] - s.jump[k];
    res_sq[k] = res[k] * res[k];
  }
  check_finite(s.x, lam, "multiplier value");
  t.pairing = sum_weighted(s.w, pair);
  t.jump_residual_sq = sum_weighted(s.w, res_sq);
  t.manifold_mean = sum_weighted(s.w, res);
  return t;
}

ManifoldSamples sample_manifold(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                                const IntegrationFeatures& extra) {
  IntegrationFeatures feats = features_of(v, q, problem.psi.get());
  feats.merge(extra);
  const LineNodes nodes = manifold_nodes(problem.domain.manifold(), segment_rule(problem.quadrature.segment_nodes), feats);
  ManifoldSamples s;
  s.x = nodes.x;
  s.w = nodes.w;
  s.gap.resize(s.x.size());
  s.jump.resize(s.x.size());
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    const Point p{s.x[k], 0.0};
    s.gap[k] = std::max(v.value(p, Side::plus) - problem.psi->value(p, Side::plus), 0.0);
    s.jump[k] = q.normal_jump(s.x[k]);
  }
  check_finite(s.x, s.gap, "gap v - psi");
  check_finite(s.x, s.jump, "normal jump");
  return s;
}

bool rho_needs_trace_constant(const ManifoldSamples& s) {
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    const double g = s.gap[k];
    const double j = s.jump[k];
    if (!((g == 0.0 && j >= 0.0) || (j == 0.0 && g > 0.0))) return true;
  }
  return false;
}

double rho_integral(const ManifoldSamples& s, double beta1, double beta2, std::optional<double> trace_constant) {
  check_betas(beta1, beta2);
  std::optional<double> kappa;
  if (trace_constant) kappa = kappa_of(beta1, beta2, *trace_constant);
  std::vector<double> vals(s.x.size());
  for (std::size_t k = 0; k < s.x.size(); ++k) vals[k] = rho(s.gap[k], s.jump[k], kappa);
  return sum_weighted(s.w, vals);
}

double energy_error(const ScalarField& v, const ScalarField& u, const Domain2D& domain, const QuadratureConfig& config,
                    QuadratureStats* stats) {
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
  const double sq = integrate_mesh(f, triangulate(domain, config.level), triangle_rule(config.triangle_degree), feats,
                                   config, std::nullopt, stats);
  return std::sqrt(std::max(sq, 0.0));
}

MajorantReport majorant_basic(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& y,
                              const MultiplierField& lambda, const ConstantSet&) {
  const ResidualTerms t = compute_residuals(problem, v, y, lambda);
  const double dp = std::sqrt(t.div_sq_plus);
  const double dm = std::sqrt(t.div_sq_minus);
  const double jr = std::sqrt(t.jump_residual_sq);
  if (dp > kEquilibrationTol || dm > kEquilibrationTol || jr > kEquilibrationTol) {
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "flux is not equilibrated (||div||+ = %.3g, ||div||- = %.3g, ||lambda - [y.n]|| = %.3g); "
                  "use majorant M",
                  dp, dm, jr);
    throw NotEquilibrated(buf, dp, dm, jr);
  }
  MajorantReport r;
  r.kind = MajorantKind::basic;
  fill_common_terms(r, t);
  r.value = std::sqrt(t.flux_misfit_sq + 2.0 * std::max(t.pairing, 0.0));
  return r;
}

MajorantReport majorant_M(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                          const MultiplierField& lambda, const ConstantSet& constants) {
  const ResidualTerms t = compute_residuals(problem, v, q, lambda);
  MajorantReport r;
  r.kind = MajorantKind::M;
  fill_common_terms(r, t);
  const double a = std::sqrt(t.flux_misfit_sq);
  const double pairing = std::sqrt(2.0 * std::max(t.pairing, 0.0));
  const double fp = scaled(r, constants, ConstantId::friedrichs_plus, std::sqrt(t.div_sq_plus));
  const double fm = scaled(r, constants, ConstantId::friedrichs_minus, std::sqrt(t.div_sq_minus));
  const double tr = scaled(r, constants, ConstantId::trace_manifold, std::sqrt(t.jump_residual_sq));
  r.terms["weighted_divergence_plus"] = fp;
  r.terms["weighted_divergence_minus"] = fm;
  r.terms["weighted_jump"] = tr;
  r.value = a + pairing + fp + fm + tr;
  return r;
}

MajorantReport majorant_M12(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                            const MultiplierField& lambda, double beta1, double beta2, const ConstantSet& constants) {
  check_betas(beta1, beta2);
  return report_M12(compute_residuals(problem, v, q, lambda), constants, beta1, beta2);
}

MultiplierFieldPtr optimal_lambda(const ScalarFieldPtr& v, const FluxFieldPtr& q, const ScalarFieldPtr& psi,
                                  double beta1, double beta2, const ConstantSet& constants) {
  check_betas(beta1, beta2);
  if (!v || !q || !psi) throw InvalidParameter("optimal_lambda: null input");
  return std::make_shared<OptimalMultiplier>(v, q, psi, beta1, beta2, trace_if_present(constants));
}

MajorantReport majorant_M4(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q, double beta1,
                           double beta2, const ConstantSet& constants) {
  check_betas(beta1, beta2);
  check_admissible_or_throw(problem, v);
  return report_M4(compute_area_terms(problem, v, q), sample_manifold(problem, v, q), constants, beta1, beta2);
}

double optimal_alpha(double d_plus, double d_minus, double m_plus, double m_minus) {
  const double den = m_plus * m_plus + m_minus * m_minus;
  if (den == 0.0) return 0.0;
  const double a = (m_plus * m_plus + d_plus * m_plus - d_minus * m_minus) / den;
  return std::clamp(a, 0.0, 1.0);
}

double alpha_bracket(double alpha, double d_plus, double d_minus, double m_plus, double m_minus) {
  const double l = d_minus + alpha * m_minus;
  const double r = d_plus + (1.0 - alpha) * m_plus;
  return l * l + r * r;
}

MajorantReport majorant_M5(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                           const MultiplierField& lambda, std::optional<double> alpha, const ConstantSet& constants,
                           M5Mode mode) {
  if (alpha && !(*alpha >= 0.0 && *alpha <= 1.0)) throw InvalidParameter("alpha must lie in [0, 1]");
  const ResidualTerms t = compute_residuals(problem, v, q, lambda);
  std::vector<std::pair<std::string, double>> measured;
  if (mode == M5Mode::full) {
    if (std::abs(t.div_mean_plus) > kMeanTol) measured.emplace_back("mean_div_plus", t.div_mean_plus);
    if (std::abs(t.div_mean_minus) > kMeanTol) measured.emplace_back("mean_div_minus", t.div_mean_minus);
  }
  if (std::abs(t.manifold_mean) > kMeanTol) measured.emplace_back("manifold_mean", t.manifold_mean);
  if (!measured.empty()) {
    std::string what = "zero-mean condition violated:";
    char buf[80];
    for (const auto& [name, val] : measured) {
      std::snprintf(buf, sizeof buf, " %s = %.17g", name.c_str(), val);
      what += buf;
    }
    throw ConditionViolation(what, measured);
  }
  MajorantReport r;
  r.kind = mode == M5Mode::full ? MajorantKind::M5 : MajorantKind::M5_partial;
  fill_common_terms(r, t);
  r.terms["mean_div_plus"] = std::abs(t.div_mean_plus);
  r.terms["mean_div_minus"] = std::abs(t.div_mean_minus);
  r.terms["manifold_mean"] = std::abs(t.manifold_mean);
  const ConstantId cp = mode == M5Mode::full ? ConstantId::poincare_plus : ConstantId::friedrichs_plus;
  const ConstantId cm = mode == M5Mode::full ? ConstantId::poincare_minus : ConstantId::friedrichs_minus;
  const double d_plus = scaled(r, constants, cp, std::sqrt(t.div_sq_plus));
  const double d_minus = scaled(r, constants, cm, std::sqrt(t.div_sq_minus));
  const double jr = std::sqrt(t.jump_residual_sq);
  const double m_plus = scaled(r, constants, ConstantId::poincare_manifold_plus, jr);
  const double m_minus = scaled(r, constants, ConstantId::poincare_manifold_minus, jr);
  const double al = alpha ? *alpha : optimal_alpha(d_plus, d_minus, m_plus, m_minus);
  r.terms["D_plus"] = d_plus;
  r.terms["D_minus"] = d_minus;
  r.terms["m_plus"] = m_plus;
  r.terms["m_minus"] = m_minus;
  r.parameters["alpha"] = al;
  r.value = std::sqrt(t.flux_misfit_sq) + std::sqrt(2.0 * std::max(t.pairing, 0.0)) +
            std::sqrt(alpha_bracket(al, d_plus, d_minus, m_plus, m_minus));
  return r;
}

namespace {

/// Golden-section search of f on [lo, hi] with exactly `evals` evaluations.
std::pair<double, double> golden_section(const std::function<double(double)>& f, double lo, double hi, int evals) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int k = 2; k < evals; ++k) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

BetaSearchResult optimize_betas(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                                const MultiplierField* lambda, const ConstantSet& constants, BetaObjective objective,
                                std::optional<std::pair<double, double>> start) {
  std::function<MajorantReport(double, double)> report;
  std::optional<ResidualTerms> terms;
  std::optional<AreaTerms> area;
  std::optional<ManifoldSamples> samples;
  if (objective == BetaObjective::M12_with_lambda) {
    if (lambda == nullptr) throw InvalidParameter("optimize_betas: M12 objective needs a multiplier");
    terms = compute_residuals(problem, v, q, *lambda);
    report = [&](double b1, double b2) { return report_M12(*terms, constants, b1, b2); };
  } else {
    check_admissible_or_throw(problem, v);
    area = compute_area_terms(problem, v, q);
    samples = sample_manifold(problem, v, q);
    report = [&](double b1, double b2) { return report_M4(*area, *samples, constants, b1, b2); };
  }

  BetaSearchResult best;
  int evals = 1;
  double lb1 = 0.0;
  double lb2 = 0.0;
  double best_value = report(1.0, 1.0).value;
  if (start) {
    check_betas(start->first, start->second);
    ++evals;
    const double v0 = report(start->first, start->second).value;
    if (v0 < best_value) {
      best_value = v0;
      lb1 = std::log10(start->first);
      lb2 = std::log10(start->second);
    }
  }
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (int coord = 0; coord < 2; ++coord) {
      const auto line = [&](double t) {
        ++evals;
        const double b1 = std::pow(10.0, coord == 0 ? t : lb1);
        const double b2 = std::pow(10.0, coord == 1 ? t : lb2);
        return report(b1, b2).value;
      };
      const auto [t, val] = golden_section(line, -4.0, 4.0, 60);
      if (val < best_value) {
        best_value = val;
        (coord == 0 ? lb1 : lb2) = t;
      }
    }
  }
  best.beta1 = std::pow(10.0, lb1);
  best.beta2 = std::pow(10.0, lb2);
  best.report = report(best.beta1, best.beta2);
  best.evaluations = evals;
  return best;
}

}  // namespace thinob
