#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thinob/fields.hpp"
#include "thinob/majorants.hpp"
#include "thinob/signorini.hpp"

namespace thinob {

/// Re((x1 + i|x2|)^(3/2)) in polar form.
double exact_solution(double x1, double x2);
/// [du/dn] on M: 3 sqrt(-x1) for x1 < 0, else 0.
double exact_jump(double x1);

ScalarFieldPtr exact_field();
FluxFieldPtr exact_flux();
MultiplierFieldPtr exact_multiplier();
ScalarFieldPtr zero_field();

enum class ExampleName { v1, v2, v3eps };

const char* to_string(ExampleName name);
std::optional<ExampleName> example_from_string(const std::string& name);

struct ExampleCase {
  ExampleName name = ExampleName::v1;
  double a = 1.0;
  std::optional<double> eps;
  ScalarFieldPtr field;
  ScalarFieldPtr oracle;
  std::optional<double> exact_error_closed_form;
};

/// Throws InvalidParameter for a <= 0, for eps outside (0, a) with v3eps,
/// and for eps given with v1 or v2.
ExampleCase build_example(ExampleName name, double a, std::optional<double> eps = std::nullopt);

/// psi = 0 and phi = u on the split square of half width a.
ThinObstacleProblem example_problem(double a, const QuadratureConfig& quadrature = {});

/// Field by registry name: exact_u, v1, v2, v3eps, psi_zero, signorini_exact.
/// Returns nullptr for an unknown name.
ScalarFieldPtr registry_field(const std::string& name, double a, std::optional<double> eps = std::nullopt);
std::vector<std::string> registry_names();

enum class FluxChoice { gradient_of_v, gradient_of_u };

const char* to_string(FluxChoice c);
std::optional<FluxChoice> flux_choice_from_string(const std::string& name);

struct Reproduction {
  ExampleCase example;
  FluxChoice flux = FluxChoice::gradient_of_v;
  double exact_error = 0.0;
  /// M always; basic when the flux is equilibrated; M5_partial when the
  /// manifold residual vanishes.
  std::vector<MajorantReport> reports;
  /// v3eps only: efficiency predicted by the truncated epsilon series.
  std::map<std::string, double> trend;
};

Reproduction reproduce(ExampleName name, double a, std::optional<double> eps, const QuadratureConfig& quadrature,
                       FluxChoice flux);

/// Unit square with contact on the bottom edge, psi = 0 and the datum of
/// Re((x1 - 1/2 + i x2)^(3/2)), which is also the solution.
SignoriniProblem signorini_desk_problem(const QuadratureConfig& quadrature = {});
ScalarFieldPtr signorini_exact_field();
/// du/dn on the contact edge of the desk case.
MultiplierFieldPtr signorini_exact_multiplier();

}  // namespace thinob
