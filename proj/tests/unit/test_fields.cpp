#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "thinob/errors.hpp"
#include "thinob/fields.hpp"
#include "thinob/paperbench.hpp"

using namespace thinob;

namespace {

// random interior point of |x1| + |x2| < a on the requested side, away from M
Point probe(std::mt19937_64& rng, double a, Side side) {
  std::uniform_real_distribution<double> d(-a, a);
  for (;;) {
    const Point p{d(rng), std::abs(d(rng))};
    if (std::abs(p.x1) + p.x2 < 0.95 * a && p.x2 > 0.02 * a) return side == Side::plus ? p : Point{p.x1, -p.x2};
  }
}

Vec2 fd_gradient(const ScalarField& f, Point p, Side s, double h) {
  return {(f.value({p.x1 + h, p.x2}, s) - f.value({p.x1 - h, p.x2}, s)) / (2 * h),
          (f.value({p.x1, p.x2 + h}, s) - f.value({p.x1, p.x2 - h}, s)) / (2 * h)};
}

double fd_laplacian(const ScalarField& f, Point p, Side s, double h) {
  const double c = f.value(p, s);
  return (f.value({p.x1 + h, p.x2}, s) + f.value({p.x1 - h, p.x2}, s) + f.value({p.x1, p.x2 + h}, s) +
          f.value({p.x1, p.x2 - h}, s) - 4 * c) /
         (h * h);
}

double fd_divergence(const FluxField& q, Point p, Side s, double h) {
  return (q.value({p.x1 + h, p.x2}, s).x1 - q.value({p.x1 - h, p.x2}, s).x1) / (2 * h) +
         (q.value({p.x1, p.x2 + h}, s).x2 - q.value({p.x1, p.x2 - h}, s).x2) / (2 * h);
}

}  // namespace

TEST_CASE("exact solution: manifold traces and jump") {
  for (double x : {0.1, 0.5, 1.0}) {
    CHECK(exact_solution(x, 0.0) == doctest::Approx(std::pow(x, 1.5)).epsilon(1e-15));
    CHECK(exact_solution(-x, 0.0) == 0.0);
    CHECK(exact_jump(-x) == doctest::Approx(3.0 * std::sqrt(x)));
    CHECK(exact_jump(x) == 0.0);
  }
  CHECK(exact_solution(-1.0, 0.0) == 0.0);
  CHECK(exact_jump(-1.0) == doctest::Approx(3.0));
}

TEST_CASE("exact solution agrees with the polar form r^(3/2) cos(3 theta / 2)") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double x1 = d(rng);
    const double x2 = d(rng);
    const double r = std::hypot(x1, x2);
    const double th = std::atan2(std::abs(x2), x1);
    CHECK(exact_solution(x1, x2) == doctest::Approx(std::pow(r, 1.5) * std::cos(1.5 * th)).epsilon(1e-12));
  }
}

TEST_CASE("exact solution is harmonic: finite differences at 100 probes per side") {
  std::mt19937_64 rng(2);
  const ScalarFieldPtr u = exact_field();
  for (Side s : {Side::plus, Side::minus}) {
    for (int k = 0; k < 100; ++k) {
      const Point p = probe(rng, 1.0, s);
      // truncation error of the 5-point stencil scales like h^2 r^(-5/2)
      const double r = std::hypot(p.x1, p.x2);
      CHECK(std::abs(fd_laplacian(*u, p, s, 1e-3)) < 1e-7 * std::pow(r, -2.5) + 1e-8);
    }
  }
}

TEST_CASE("gradients agree with finite differences for every registry field") {
  std::mt19937_64 rng(3);
  for (const char* name : {"exact_u", "v1", "v2"}) {
    const ScalarFieldPtr f = registry_field(name, 1.0);
    for (Side s : {Side::plus, Side::minus}) {
      for (int k = 0; k < 50; ++k) {
        const Point p = probe(rng, 1.0, s);
        const Vec2 g = f->gradient(p, s);
        const Vec2 fd = fd_gradient(*f, p, s, 1e-5);
        const double scale = std::max(1.0, std::hypot(g.x1, g.x2));
        CHECK(std::abs(g.x1 - fd.x1) < 1e-6 * scale);
        CHECK(std::abs(g.x2 - fd.x2) < 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("flux_from_gradient: divergence equals a finite-difference Laplacian") {
  std::mt19937_64 rng(4);
  for (const char* name : {"v1", "v2", "exact_u"}) {
    const FluxFieldPtr q = flux_from_gradient(registry_field(name, 1.0));
    for (Side s : {Side::plus, Side::minus}) {
      for (int k = 0; k < 100; ++k) {
        const Point p = probe(rng, 1.0, s);
        CHECK(q->divergence(p, s) == doctest::Approx(fd_divergence(*q, p, s, 1e-5)).epsilon(1e-5).scale(1.0));
      }
    }
  }
}

TEST_CASE("v1: divergence formula per side and jump identical to the exact one") {
  const double a = 1.0;
  const FluxFieldPtr q = flux_from_gradient(registry_field("v1", a));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const Point p = probe(rng, a, Side::plus);
    CHECK(q->divergence(p, Side::plus) ==
          doctest::Approx(10 * p.x2 * p.x2 - 12 * p.x2 * a - 2 * p.x1 * p.x1 + 2 * a * a).epsilon(1e-12));
    const Point m{p.x1, -p.x2};
    CHECK(q->divergence(m, Side::minus) ==
          doctest::Approx(10 * m.x2 * m.x2 + 12 * m.x2 * a - 2 * m.x1 * m.x1 + 2 * a * a).epsilon(1e-12));
  }
  const FluxFieldPtr qu = exact_flux();
  for (double x = -0.99; x < 1.0; x += 0.07) {
    CHECK(q->normal_jump(x) == doctest::Approx(qu->normal_jump(x)).epsilon(1e-12));
    CHECK(qu->normal_jump(x) == doctest::Approx(exact_jump(x)).epsilon(1e-12));
  }
}

TEST_CASE("normal jump is -q+_2 + q-_2 from side-tagged values") {
  const Polynomial x = Polynomial::x1();
  const PolynomialFlux q({x, 2.0 * x + 1.0}, {x, Polynomial::constant(-1.0)});
  for (double s = -1.0; s <= 1.0; s += 0.25) {
    const double expect = -q.value({s, 0.0}, Side::plus).x2 + q.value({s, 0.0}, Side::minus).x2;
    CHECK(q.normal_jump(s) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("flux of a global linear field has zero divergence and jump") {
  const ScalarFieldPtr lin = std::make_shared<PolynomialField>(Polynomial::x1());
  const FluxFieldPtr q = flux_from_gradient(lin);
  CHECK(q->divergence({0.2, 0.3}, Side::plus) == 0.0);
  CHECK(q->normal_jump(0.4) == 0.0);
}

TEST_CASE("multiplier_from_jump clips negative jumps") {
  const MultiplierFieldPtr l = multiplier_from_jump(exact_flux());
  CHECK(l->value(-0.25) == doctest::Approx(1.5));
  CHECK(l->value(0.3) == 0.0);
  const auto neg = std::make_shared<PolynomialFlux>(std::array<Polynomial, 2>{Polynomial{}, Polynomial::constant(1.0)},
                                                    std::array<Polynomial, 2>{Polynomial{}, Polynomial{}});
  const MultiplierFieldPtr z = multiplier_from_jump(neg);
  for (double x = -1.0; x <= 1.0; x += 0.1) CHECK(z->value(x) == 0.0);
  CHECK(min_multiplier_on_grid(*multiplier_from_jump(flux_from_gradient(registry_field("v2", 1.0))), {-1.0, 1.0}) >= 0.0);
}

TEST_CASE("flux_from_gradient needs second derivatives") {
  const auto f = std::make_shared<FunctionField>(
      "no-laplacian", [](Point p, Side) { return p.x1; }, [](Point, Side) { return Vec2{1.0, 0.0}; });
  CHECK_THROWS_AS(flux_from_gradient(f), UnsupportedRepresentation);
}

TEST_CASE("check_admissible on the worked families and a violating field") {
  const Domain2D d = build_domain(1.0);
  const ScalarFieldPtr psi = zero_field();
  const ScalarFieldPtr phi = exact_field();
  const AdmissibilityReport ru = check_admissible(*exact_field(), d, *psi, *phi, 1e-10);
  CHECK(ru.admissible);
  CHECK(ru.min_gap_on_manifold == 0.0);
  CHECK(ru.max_boundary_mismatch == 0.0);
  for (const char* name : {"v1", "v2"}) {
    const AdmissibilityReport r = check_admissible(*registry_field(name, 1.0), d, *psi, *phi, 1e-10);
    CHECK(r.admissible);
    CHECK(r.max_boundary_mismatch < 1e-12);
  }
  for (double eps : {0.2, 0.05}) {
    CHECK(check_admissible(*registry_field("v3eps", 1.0, eps), d, *psi, *phi, 1e-10).admissible);
  }
  const auto shifted = std::make_shared<SumField>(std::vector<std::pair<double, ScalarFieldPtr>>{
      {1.0, exact_field()}, {-0.1, std::make_shared<PolynomialField>(Polynomial::constant(1.0))}});
  const AdmissibilityReport bad = check_admissible(*shifted, d, *psi, *phi, 1e-10);
  CHECK_FALSE(bad.admissible);
  CHECK(bad.min_gap_on_manifold == doctest::Approx(-0.1));
}

TEST_CASE("piecewise field picks the left strip at a break") {
  const PiecewiseX1Field f({0.0}, {{Polynomial::constant(1.0), Polynomial::constant(1.0)},
                                   {Polynomial::constant(2.0), Polynomial::constant(2.0)}});
  CHECK(f.value({0.0, 0.1}, Side::plus) == 1.0);
  CHECK(f.value({1e-12, 0.1}, Side::plus) == 2.0);
  CHECK(f.features().x1_breaks == std::vector<double>{0.0});
}

TEST_CASE("batched values and gradients equal pointwise ones") {
  std::mt19937_64 rng(6);
  std::vector<Point> pts;
  for (int k = 0; k < 33; ++k) pts.push_back(probe(rng, 1.0, Side::minus));
  for (const char* name : {"v1", "v2", "exact_u"}) {
    const ScalarFieldPtr f = registry_field(name, 1.0);
    std::vector<double> vals(pts.size());
    std::vector<Vec2> grads(pts.size());
    f->values(pts, Side::minus, vals);
    f->gradients(pts, Side::minus, grads);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      CHECK(vals[k] == doctest::Approx(f->value(pts[k], Side::minus)).epsilon(1e-14));
      CHECK(grads[k].x2 == doctest::Approx(f->gradient(pts[k], Side::minus).x2).epsilon(1e-14));
    }
  }
}
