#pragma once

#include <cmath>
#include <numbers>

#include "thinob/constants.hpp"
#include "thinob/geometry.hpp"

namespace thinob::testing {

// Upper bounds with a short derivation in the source string; used where the
// library has no closed form.
inline ConstantSet split_square_overrides(double a) {
  const double pi = std::numbers::pi;
  ConstantSet c;
  // w(x1,0) = -int_0^h d2w with h <= a, Cauchy-Schwarz in x2
  const Constant tr{std::sqrt(a), Provenance::user_supplied, "sqrt(a): vertical-line trace bound, legs Dirichlet"};
  c.set(ConstantId::trace_plus, tr);
  c.set(ConstantId::trace_minus, tr);
  // edge trace identity on a triangle with apex distance sqrt2 a, plus
  // Payne-Weinberger 2a/pi for the area mean
  const Constant pm{std::sqrt(a * (8.0 / (pi * pi) + 4.0 * std::sqrt(2.0) / pi)), Provenance::user_supplied,
                    "sqrt(a(8/pi^2 + 4 sqrt2/pi)): simplex trace identity with Payne-Weinberger"};
  c.set(ConstantId::poincare_manifold_plus, pm);
  c.set(ConstantId::poincare_manifold_minus, pm);
  return c;
}

inline ConstantSet split_square_constants(double a) {
  return assemble_constants(build_domain(a), split_square_overrides(a));
}

// Unit square, Dirichlet on right, top and left, contact on the bottom edge.
inline ConstantSet signorini_unit_square_overrides() {
  const double pi = std::numbers::pi;
  ConstantSet c;
  c.set(ConstantId::signorini_friedrichs,
        {2.0 / (std::sqrt(5.0) * pi), Provenance::user_supplied, "first mixed eigenvalue 5 pi^2/4"});
  c.set(ConstantId::signorini_trace,
        {1.0 / std::sqrt(pi / std::tanh(pi)), Provenance::user_supplied, "Steklov mode sin(pi x1) sinh(pi(1-x2))"});
  c.set(ConstantId::signorini_poincare_manifold,
        {1.0 / std::sqrt(pi * std::tanh(pi)), Provenance::user_supplied, "sloshing mode cos(pi x1) cosh(pi(1-x2))"});
  c.set(ConstantId::signorini_poincare, {std::sqrt(2.0) / pi, Provenance::user_supplied, "Payne-Weinberger diam/pi"});
  return c;
}

}  // namespace thinob::testing
