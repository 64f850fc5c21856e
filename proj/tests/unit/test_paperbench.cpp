#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "thinob/errors.hpp"
#include "thinob/paperbench.hpp"

using namespace thinob;

namespace {

const MajorantReport* find(const Reproduction& r, MajorantKind k) {
  for (const MajorantReport& m : r.reports) {
    if (m.kind == k) return &m;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("build_example rejects bad parameters") {
  CHECK_THROWS_AS(build_example(ExampleName::v1, 0.0), InvalidParameter);
  CHECK_THROWS_AS(build_example(ExampleName::v2, -1.0), InvalidParameter);
  CHECK_THROWS_AS(build_example(ExampleName::v1, 1.0, 0.1), InvalidParameter);
  CHECK_THROWS_AS(build_example(ExampleName::v3eps, 1.0), InvalidParameter);
  CHECK_THROWS_AS(build_example(ExampleName::v3eps, 1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(build_example(ExampleName::v3eps, 1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(build_example(ExampleName::v1, NAN), InvalidParameter);
}

TEST_CASE("names round-trip and the registry is complete") {
  for (ExampleName n : {ExampleName::v1, ExampleName::v2, ExampleName::v3eps}) {
    CHECK(example_from_string(to_string(n)) == n);
  }
  CHECK_FALSE(example_from_string("v4").has_value());
  for (const std::string& name : registry_names()) {
    const std::optional<double> eps = name == "v3eps" ? std::optional<double>(0.1) : std::nullopt;
    CHECK(registry_field(name, 1.0, eps) != nullptr);
  }
  CHECK(registry_field("nope", 1.0) == nullptr);
  CHECK(flux_choice_from_string(to_string(FluxChoice::gradient_of_u)) == FluxChoice::gradient_of_u);
}

TEST_CASE("coincidence sets on M") {
  const double a = 1.0;
  const ScalarFieldPtr u = exact_field();
  const ScalarFieldPtr v1 = registry_field("v1", a);
  const ScalarFieldPtr v2 = registry_field("v2", a);
  const ScalarFieldPtr v3 = registry_field("v3eps", a, 0.2);
  for (double x = -0.98; x < 1.0; x += 0.02) {
    const Point p{x, 0.0};
    CHECK(v1->value(p, Side::plus) == doctest::Approx(u->value(p, Side::plus)).epsilon(1e-14));
    // v2 lies strictly above the solution inside M
    CHECK(v2->value(p, Side::plus) > u->value(p, Side::plus));
    if (x <= -0.2) CHECK(v3->value(p, Side::plus) == doctest::Approx(u->value(p, Side::plus)).epsilon(1e-14));
  }
}

TEST_CASE("closed-form errors agree with quadrature at several half widths") {
  for (double a : {0.5, 1.0, 2.0}) {
    const ThinObstacleProblem p = example_problem(a);
    for (ExampleName n : {ExampleName::v1, ExampleName::v2}) {
      const ExampleCase c = build_example(n, a);
      REQUIRE(c.exact_error_closed_form.has_value());
      CHECK(energy_error(*c.field, *c.oracle, p.domain, p.quadrature) ==
            doctest::Approx(*c.exact_error_closed_form).epsilon(1e-10));
    }
  }
  CHECK(*build_example(ExampleName::v1, 1.0).exact_error_closed_form == doctest::Approx(0.22537446792760446));
  CHECK(*build_example(ExampleName::v2, 1.0).exact_error_closed_form == doctest::Approx(2.3851391759997758));
}

TEST_CASE("reproduce v1 with grad v1: M and M'3, no basic") {
  const Reproduction r = reproduce(ExampleName::v1, 1.0, std::nullopt, {}, FluxChoice::gradient_of_v);
  CHECK(r.exact_error == doctest::Approx(0.22537446792760446).epsilon(1e-10));
  const MajorantReport* m = find(r, MajorantKind::M);
  const MajorantReport* p = find(r, MajorantKind::M5_partial);
  REQUIRE(m);
  REQUIRE(p);
  CHECK(find(r, MajorantKind::basic) == nullptr);
  CHECK(m->value == doctest::Approx(0.75921337964498892).epsilon(1e-10));
  CHECK(p->value == doctest::Approx(0.53684492911452841).epsilon(1e-10));
  CHECK(*m->efficiency_index == doctest::Approx(4.0 * std::sqrt(7.0) / std::numbers::pi).epsilon(1e-9));
  CHECK(r.trend.empty());
}

TEST_CASE("reproduce v1 with grad u: every estimate is sharp") {
  const Reproduction r = reproduce(ExampleName::v1, 1.0, std::nullopt, {}, FluxChoice::gradient_of_u);
  REQUIRE(r.reports.size() == 3);
  for (const MajorantReport& m : r.reports) CHECK(*m.efficiency_index == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("reproduce v2: M only") {
  const Reproduction r = reproduce(ExampleName::v2, 1.0, std::nullopt, {}, FluxChoice::gradient_of_v);
  const MajorantReport* m = find(r, MajorantKind::M);
  REQUIRE(m);
  CHECK(m->value == doctest::Approx(4.8503431433962731).epsilon(1e-10));
  CHECK(*m->efficiency_index == doctest::Approx(2.0335681842813895).epsilon(1e-9));
}

TEST_CASE("reproduce v3eps: trend row and efficiencies") {
  const Reproduction a = reproduce(ExampleName::v3eps, 1.0, 0.2, {}, FluxChoice::gradient_of_u);
  CHECK(a.trend.at("eps") == 0.2);
  CHECK(a.trend.count("series_efficiency") == 1);
  CHECK(*find(a, MajorantKind::M)->efficiency_index == doctest::Approx(2.23608).epsilon(1e-5));
  const Reproduction b = reproduce(ExampleName::v3eps, 1.0, 0.05, {}, FluxChoice::gradient_of_u);
  CHECK(*find(b, MajorantKind::M)->efficiency_index == doctest::Approx(1.89940).epsilon(1e-5));
  const Reproduction c = reproduce(ExampleName::v3eps, 1.0, 0.05, {}, FluxChoice::gradient_of_v);
  CHECK(*find(c, MajorantKind::M)->efficiency_index == doctest::Approx(4.37836).epsilon(1e-5));
  CHECK(*find(c, MajorantKind::M5_partial)->efficiency_index == doctest::Approx(3.35939).epsilon(1e-5));
}
