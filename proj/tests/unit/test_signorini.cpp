#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "certified_constants.hpp"
#include "signorini_reference.hpp"
#include "thinob/errors.hpp"
#include "thinob/paperbench.hpp"
#include "thinob/signorini.hpp"

using namespace thinob;

namespace {

constexpr double pi = std::numbers::pi;

// x1 (1 - x1)(1 - x2): zero on right, top and left, positive on the contact edge
ScalarFieldPtr bump() {
  const Polynomial x = Polynomial::x1();
  const Polynomial y = Polynomial::x2();
  return std::make_shared<PolynomialField>(x * (1.0 - x) * (1.0 - y));
}

ScalarFieldPtr perturbed(double t) {
  return std::make_shared<SumField>(
      std::vector<std::pair<double, ScalarFieldPtr>>{{1.0, signorini_exact_field()}, {t, bump()}});
}

struct Fixture {
  SignoriniProblem problem = signorini_desk_problem();
  ConstantSet constants = assemble_signorini_constants(problem.domain, testing::signorini_unit_square_overrides());
};

}  // namespace

TEST_CASE("rectangle domain: contact edge, normals, mesh") {
  const SignoriniDomain d = build_signorini_domain(0.0, 2.0, -1.0, 0.5);
  CHECK(d.contact().length() == doctest::Approx(2.0));
  CHECK(d.contact_normal().x2 == -1.0);
  CHECK(d.area() == doctest::Approx(3.0));
  CHECK(d.diameter() == doctest::Approx(2.5));
  const Mesh m = d.triangulate(2);
  double area = 0.0;
  for (const Triangle& t : m.elements) area += t.area();
  CHECK(area == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(m.elements.size() == 32);
  CHECK(m.manifold_edges.size() == 4);
  for (const BoundaryPiece& b : d.dirichlet_boundary()) {
    CHECK(std::hypot(b.outward_normal.x1, b.outward_normal.x2) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(build_signorini_domain(0.0, 0.0, 0.0, 1.0), InvalidParameter);
}

TEST_CASE_FIXTURE(Fixture, "exact triple: zero for both forms") {
  const ScalarFieldPtr u = signorini_exact_field();
  const FluxFieldPtr q = flux_from_gradient(u);
  const MultiplierFieldPtr l = signorini_exact_multiplier();
  CHECK(check_admissible_signorini(*u, problem).admissible);
  const MajorantReport r = majorant_signorini(problem, *u, *q, *l, constants);
  CHECK(r.value == 0.0);
  CHECK(r.terms.at("jump_residual") < 1e-14);
  CHECK(majorant_signorini_poincare(problem, *u, *q, *l, constants).value == 0.0);
  // the clipped normal flux is the exact multiplier
  const MultiplierFieldPtr clip = signorini_multiplier_from_flux(q, 0.0);
  for (double x = 0.01; x < 1.0; x += 0.05) CHECK(clip->value(x) == doctest::Approx(l->value(x)).epsilon(1e-12));
}

TEST_CASE_FIXTURE(Fixture, "term isolation: zero multiplier with a harmonic flux") {
  // v harmonic, v > 0 on M would be needed for a zero pairing; with lambda = 0
  // the pairing vanishes and only the misfit-free jump term stays
  const ScalarFieldPtr v = signorini_exact_field();
  const FluxFieldPtr q = flux_from_gradient(v);
  const auto zero = std::make_shared<PolynomialMultiplier>(Polynomial::constant(0.0));
  const MajorantReport r = majorant_signorini(problem, *v, *q, *zero, constants);
  CHECK(r.terms.at("flux_misfit") == 0.0);
  CHECK(r.terms.at("manifold_pairing") == 0.0);
  CHECK(r.terms.at("divergence_residual") == 0.0);
  CHECK(r.value == doctest::Approx(constants.value(ConstantId::signorini_trace) * r.terms.at("jump_residual")));
  // ||q.n||_M^2 = int_0^{1/2} (9/4)(1/2 - x) dx = 9/32
  CHECK(r.terms.at("jump_residual") == doctest::Approx(std::sqrt(9.0 / 32.0)).epsilon(1e-10));
}

TEST_CASE_FIXTURE(Fixture, "poincare form agrees with the Friedrichs form for equal constants") {
  const ScalarFieldPtr v = signorini_exact_field();
  const FluxFieldPtr q = flux_from_gradient(v);
  const MultiplierFieldPtr l = signorini_exact_multiplier();
  // shift lambda by a zero-mean function so both conditions hold with nonzero residual
  const auto lam = std::make_shared<FunctionMultiplier>(
      "shifted", [l](double x) { return l->value(x) + 0.1 * (1.0 + std::cos(2.0 * pi * x)); }, l->features());
  const auto flux = std::make_shared<SumFlux>(std::vector<std::pair<double, FluxFieldPtr>>{
      {1.0, q},
      {1.0, std::make_shared<PolynomialFlux>(std::array<Polynomial, 2>{Polynomial{}, Polynomial::constant(-0.1)},
                                             std::array<Polynomial, 2>{Polynomial{}, Polynomial::constant(-0.1)})}});
  ConstantSet same = constants;
  same.set(ConstantId::signorini_poincare, constants.get(ConstantId::signorini_friedrichs));
  same.set(ConstantId::signorini_poincare_manifold, constants.get(ConstantId::signorini_trace));
  const double a = majorant_signorini(problem, *v, *flux, *lam, same).value;
  const double b = majorant_signorini_poincare(problem, *v, *flux, *lam, same).value;
  CHECK(a > 0.0);
  CHECK(a == doctest::Approx(b).epsilon(1e-14));
}

TEST_CASE_FIXTURE(Fixture, "poincare form reports violated means") {
  const ScalarFieldPtr v = perturbed(0.5);
  const FluxFieldPtr q = flux_from_gradient(v);
  try {
    majorant_signorini_poincare(problem, *v, *q, *signorini_multiplier_from_flux(q, 0.0), constants);
    FAIL("expected ConditionViolation");
  } catch (const ConditionViolation& e) {
    CHECK_FALSE(e.measured().empty());
  }
}

TEST_CASE_FIXTURE(Fixture, "inadmissible approximation and missing constants") {
  CHECK_THROWS_AS(majorant_signorini(problem, *perturbed(-0.5), *flux_from_gradient(perturbed(-0.5)),
                                     *signorini_exact_multiplier(), constants),
                  Inadmissible);
  const ConstantSet bare = assemble_signorini_constants(problem.domain, {});
  const ScalarFieldPtr v = perturbed(0.3);
  const FluxFieldPtr q = flux_from_gradient(v);
  CHECK_THROWS_AS(majorant_signorini(problem, *v, *q, *signorini_multiplier_from_flux(q, 0.0), bare),
                  IncompleteConstants);
}

TEST_CASE("certified constants match their eigenfunction quotients") {
  const ConstantSet c = testing::signorini_unit_square_overrides();
  CHECK(c.value(ConstantId::signorini_friedrichs) == doctest::Approx(2.0 / (std::sqrt(5.0) * pi)));
  // Rayleigh quotient of sin(pi x1) cos(pi x2 / 2): 1 / (pi^2 + pi^2/4)
  CHECK(std::pow(c.value(ConstantId::signorini_friedrichs), 2) == doctest::Approx(1.0 / (1.25 * pi * pi)));
  CHECK(std::pow(c.value(ConstantId::signorini_trace), 2) == doctest::Approx(std::tanh(pi) / pi));
  CHECK(std::pow(c.value(ConstantId::signorini_poincare_manifold), 2) == doctest::Approx(1.0 / (pi * std::tanh(pi))));
}

TEST_CASE("reference solver reproduces the exact solution to discretization accuracy") {
  const auto u = signorini_exact_field();
  const auto ref = testing::solve_signorini_reference(32, *u, *zero_field());
  CHECK(ref.step_residual < 1e-10);
  for (int i = 0; i <= 32; ++i) CHECK(ref.nodal(i, 0) >= -1e-14);
  const double d32 = ref.energy_distance(*u);
  const double d16 = testing::solve_signorini_reference(16, *u, *zero_field()).energy_distance(*u);
  CHECK(d32 < d16);
  CHECK(d32 < 0.05);
}

TEST_CASE_FIXTURE(Fixture, "energy error of the exact field is zero and grows with the perturbation") {
  const ScalarFieldPtr u = signorini_exact_field();
  CHECK(energy_error_signorini(*u, *u, problem) == 0.0);
  const double e1 = energy_error_signorini(*perturbed(0.1), *u, problem);
  const double e2 = energy_error_signorini(*perturbed(0.2), *u, problem);
  CHECK(e2 == doctest::Approx(2.0 * e1).epsilon(1e-12));
  // ||grad bump||^2 = 1/12 * ... computed by hand: int (1-2x)^2 (1-y)^2 + x^2(1-x)^2 = 1/9 + 1/30
  CHECK(e1 == doctest::Approx(0.1 * std::sqrt(1.0 / 9.0 + 1.0 / 30.0)).epsilon(1e-12));
}
