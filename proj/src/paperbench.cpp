#include "thinob/paperbench.hpp"

#include <cmath>
#include <numbers>

#include "thinob/errors.hpp"

namespace thinob {

double exact_solution(double x1, double x2) { return ExactSolutionField(0.0).value({x1, x2}, Side::plus); }

double exact_jump(double x1) { return x1 < 0.0 ? 3.0 * std::sqrt(-x1) : 0.0; }

ScalarFieldPtr exact_field() { return std::make_shared<ExactSolutionField>(0.0); }

FluxFieldPtr exact_flux() { return std::make_shared<GradientFlux>(exact_field()); }

MultiplierFieldPtr exact_multiplier() {
  IntegrationFeatures f;
  f.singular_points.push_back({0.0, 0.0});
  return std::make_shared<FunctionMultiplier>("3 sqrt(-x1)_+", exact_jump, f);
}

ScalarFieldPtr zero_field() { return std::make_shared<PolynomialField>(Polynomial::constant(0.0)); }

const char* to_string(ExampleName name) {
  switch (name) {
    case ExampleName::v1: return "v1";
    case ExampleName::v2: return "v2";
    case ExampleName::v3eps: return "v3eps";
  }
  return "?";
}

std::optional<ExampleName> example_from_string(const std::string& name) {
  if (name == "v1") return ExampleName::v1;
  if (name == "v2") return ExampleName::v2;
  if (name == "v3eps") return ExampleName::v3eps;
  return std::nullopt;
}

namespace {

const Polynomial X1 = Polynomial::x1();
const Polynomial X2 = Polynomial::x2();

ScalarFieldPtr plus_u(ScalarFieldPtr extra) {
  return std::make_shared<SumField>(std::vector<std::pair<double, ScalarFieldPtr>>{{1.0, exact_field()}, {1.0, std::move(extra)}});
}

ScalarFieldPtr v1_field(double a) {
  const Polynomial plus = X2 * X2 * (X2 - X1 - a) * (X2 + X1 - a);
  const Polynomial minus = X2 * X2 * (X2 - X1 + a) * (X2 + X1 + a);
  return plus_u(std::make_shared<PolynomialField>(plus, minus));
}

ScalarFieldPtr v2_field(double a) {
  const Polynomial p = (X1 + X2 - a) * (X2 - X1 - a) * (X1 + X2 + a) * (X2 - X1 + a);
  return plus_u(std::make_shared<PolynomialField>(p));
}

ScalarFieldPtr v3_field(double a, double eps) {
  const Polynomial beta = (a - X1) * (X1 + eps) * (X1 + eps);
  const Polynomial left = eps * eps * beta * (a + X1 + X2) * (a + X1 - X2);
  const Polynomial right = eps * eps * beta * (a - X1 - X2) * (a - X1 + X2);
  const Polynomial zero = Polynomial::constant(0.0);
  return plus_u(std::make_shared<PiecewiseX1Field>(
      std::vector<double>{-eps, 0.0},
      std::vector<std::pair<Polynomial, Polynomial>>{{zero, zero}, {left, left}, {right, right}}));
}

void check_a(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParameter("half width a must be positive and finite");
}

}  // namespace

ExampleCase build_example(ExampleName name, double a, std::optional<double> eps) {
  check_a(a);
  ExampleCase c;
  c.name = name;
  c.a = a;
  c.oracle = exact_field();
  const double a4 = a * a * a * a;
  switch (name) {
    case ExampleName::v1:
      if (eps) throw InvalidParameter("eps applies to v3eps only");
      c.field = v1_field(a);
      c.exact_error_closed_form = 4.0 * std::sqrt(35.0) / 105.0 * a4;
      break;
    case ExampleName::v2:
      if (eps) throw InvalidParameter("eps applies to v3eps only");
      c.field = v2_field(a);
      c.exact_error_closed_form = 16.0 * std::sqrt(5.0) / 15.0 * a4;
      break;
    case ExampleName::v3eps:
      if (!eps) throw InvalidParameter("v3eps needs eps");
      if (!(*eps > 0.0 && *eps < a)) throw InvalidParameter("eps must lie in (0, a)");
      c.eps = eps;
      c.field = v3_field(a, *eps);
      break;
  }
  return c;
}

ThinObstacleProblem example_problem(double a, const QuadratureConfig& quadrature) {
  check_a(a);
  ThinObstacleProblem p;
  p.domain = build_domain(a);
  p.psi = zero_field();
  p.phi = exact_field();
  p.quadrature = quadrature;
  return p;
}

ScalarFieldPtr signorini_exact_field() { return std::make_shared<ExactSolutionField>(0.5); }

MultiplierFieldPtr signorini_exact_multiplier() {
  IntegrationFeatures f;
  f.singular_points.push_back({0.5, 0.0});
  return std::make_shared<FunctionMultiplier>(
      "1.5 sqrt(1/2 - x1)_+", [](double x1) { return x1 < 0.5 ? 1.5 * std::sqrt(0.5 - x1) : 0.0; }, f);
}

SignoriniProblem signorini_desk_problem(const QuadratureConfig& quadrature) {
  SignoriniProblem p;
  p.domain = build_signorini_domain(0.0, 1.0, 0.0, 1.0);
  p.psi = zero_field();
  p.phi = signorini_exact_field();
  p.quadrature = quadrature;
  return p;
}

ScalarFieldPtr registry_field(const std::string& name, double a, std::optional<double> eps) {
  if (name == "exact_u") return exact_field();
  if (name == "psi_zero") return zero_field();
  if (name == "signorini_exact") return signorini_exact_field();
  if (auto ex = example_from_string(name)) return build_example(*ex, a, eps).field;
  return nullptr;
}

std::vector<std::string> registry_names() { return {"exact_u", "psi_zero", "signorini_exact", "v1", "v2", "v3eps"}; }

const char* to_string(FluxChoice c) { return c == FluxChoice::gradient_of_v ? "gradient_of_v" : "gradient_of_u"; }

std::optional<FluxChoice> flux_choice_from_string(const std::string& name) {
  if (name == "gradient_of_v") return FluxChoice::gradient_of_v;
  if (name == "gradient_of_u") return FluxChoice::gradient_of_u;
  return std::nullopt;
}

namespace {

// Truncated series of the v3eps family: A and C lose their o(eps^2) tails.
std::map<std::string, double> series_trend(double a, double eps, FluxChoice flux) {
  const double A = std::sqrt(3 * std::pow(a, 10) + 30 * std::pow(a, 9) * eps + 135 * std::pow(a, 8) * eps * eps +
                             360 * std::pow(a, 7) * eps * eps * eps);
  const double B = std::sqrt(a * a * a / 35 - eps * a * a / 105 - eps * eps * a / 231 + eps * eps * eps / 429);
  const double C = std::sqrt(37 * std::pow(a, 8) + 296 * std::pow(a, 7) * eps + 2716 * std::pow(a, 6) * eps * eps -
                             1288 * std::pow(a, 5) * eps * eps * eps);
  const double sq = 30.0 * std::sqrt(42.0) * std::pow(eps, 0.75) * B / A;
  std::map<std::string, double> t;
  t["eps"] = eps;
  t["series_error"] = 2.0 / (15.0 * std::sqrt(7.0)) * eps * eps * A;
  t["series_sqrt_term"] = 4.0 * std::sqrt(6.0) * std::pow(eps, 2.75) * B;
  if (flux == FluxChoice::gradient_of_u) {
    t["series_efficiency"] = 1.0 + sq;
  } else {
    t["series_efficiency"] = sq + a * std::sqrt(10.0) / std::numbers::pi * C / A;
  }
  return t;
}

constexpr double kEquilibrated = 1e-10;

}  // namespace

Reproduction reproduce(ExampleName name, double a, std::optional<double> eps, const QuadratureConfig& quadrature,
                       FluxChoice flux) {
  Reproduction r;
  r.example = build_example(name, a, eps);
  r.flux = flux;
  const ThinObstacleProblem problem = example_problem(a, quadrature);
  const ScalarFieldPtr& v = r.example.field;
  FluxFieldPtr q;
  MultiplierFieldPtr lambda;
  if (flux == FluxChoice::gradient_of_v) {
    q = flux_from_gradient(v);
    lambda = multiplier_from_jump(q);
  } else {
    q = exact_flux();
    lambda = exact_multiplier();
  }
  const ConstantSet constants = assemble_constants(problem.domain, {});
  r.exact_error = energy_error(*v, *r.example.oracle, problem.domain, quadrature);

  MajorantReport m = majorant_M(problem, *v, *q, *lambda, constants);
  const bool manifold_clean = m.terms.at("jump_residual") <= kEquilibrated;
  const bool equilibrated = manifold_clean && m.terms.at("divergence_residual_plus") <= kEquilibrated &&
                            m.terms.at("divergence_residual_minus") <= kEquilibrated;
  m.attach_exact_error(r.exact_error);
  r.reports.push_back(std::move(m));
  if (equilibrated) {
    MajorantReport b = majorant_basic(problem, *v, *q, *lambda, constants);
    b.attach_exact_error(r.exact_error);
    r.reports.push_back(std::move(b));
  }
  if (manifold_clean) {
    MajorantReport p = majorant_M5(problem, *v, *q, *lambda, std::nullopt, constants, M5Mode::partial);
    p.attach_exact_error(r.exact_error);
    r.reports.push_back(std::move(p));
  }
  if (name == ExampleName::v3eps) r.trend = series_trend(a, *eps, flux);
  return r;
}

}  // namespace thinob
