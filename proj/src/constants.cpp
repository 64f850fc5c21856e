#include "thinob/constants.hpp"

#include <cmath>
#include <numbers>

#include "thinob/errors.hpp"

namespace thinob {

namespace {

struct Name {
  ConstantId id;
  const char* name;
};

constexpr Name kNames[] = {
    {ConstantId::friedrichs_plus, "friedrichs_plus"},
    {ConstantId::friedrichs_minus, "friedrichs_minus"},
    {ConstantId::trace_plus, "trace_plus"},
    {ConstantId::trace_minus, "trace_minus"},
    {ConstantId::trace_manifold, "trace_manifold"},
    {ConstantId::poincare_plus, "poincare_plus"},
    {ConstantId::poincare_minus, "poincare_minus"},
    {ConstantId::poincare_manifold_plus, "poincare_manifold_plus"},
    {ConstantId::poincare_manifold_minus, "poincare_manifold_minus"},
    {ConstantId::signorini_friedrichs, "signorini_friedrichs"},
    {ConstantId::signorini_trace, "signorini_trace"},
    {ConstantId::signorini_poincare, "signorini_poincare"},
    {ConstantId::signorini_poincare_manifold, "signorini_poincare_manifold"},
};

}  // namespace

const char* to_string(ConstantId id) {
  for (const Name& n : kNames) {
    if (n.id == id) return n.name;
  }
  return "?";
}

std::optional<ConstantId> constant_from_string(const std::string& name) {
  for (const Name& n : kNames) {
    if (name == n.name) return n.id;
  }
  return std::nullopt;
}

const std::vector<ConstantId>& all_constant_ids() {
  static const std::vector<ConstantId> ids = [] {
    std::vector<ConstantId> v;
    for (const Name& n : kNames) v.push_back(n.id);
    return v;
  }();
  return ids;
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::closed_form:
      return "closed_form";
    case Provenance::payne_weinberger:
      return "payne_weinberger";
    case Provenance::user_supplied:
      return "user_supplied";
  }
  return "?";
}

const Constant& ConstantSet::get(ConstantId id) const {
  const auto it = values_.find(id);
  if (it == values_.end()) throw IncompleteConstants({to_string(id)});
  return it->second;
}

void ConstantSet::set(ConstantId id, Constant c) {
  if (!(c.value > 0.0) || !std::isfinite(c.value)) {
    throw InvalidParameter(std::string("constant ") + to_string(id) + " must be positive and finite");
  }
  values_[id] = std::move(c);
}

void ConstantSet::require(const std::vector<ConstantId>& ids) const {
  std::vector<std::string> missing;
  for (ConstantId id : ids) {
    if (!has(id)) missing.emplace_back(to_string(id));
  }
  if (!missing.empty()) throw IncompleteConstants(std::move(missing));
}

double friedrichs_example_triangle(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParameter("friedrichs_example_triangle: a must be positive");
  return a / std::numbers::pi;
}

double payne_weinberger(double diameter) {
  if (!(diameter > 0.0) || !std::isfinite(diameter)) throw InvalidParameter("payne_weinberger: diameter must be positive");
  return diameter / std::numbers::pi;
}

ConstantSet assemble_constants(const Domain2D& domain, const ConstantSet& overrides,
                               const std::vector<ConstantId>& required) {
  ConstantSet out;
  const double a = domain.half_width();
  const Constant cf{friedrichs_example_triangle(a), Provenance::closed_form, "a/pi"};
  out.set(ConstantId::friedrichs_plus, cf);
  out.set(ConstantId::friedrichs_minus, cf);
  out.set(ConstantId::poincare_plus,
          {payne_weinberger(domain.subdomain_plus().diameter()), Provenance::payne_weinberger, "diam/pi"});
  out.set(ConstantId::poincare_minus,
          {payne_weinberger(domain.subdomain_minus().diameter()), Provenance::payne_weinberger, "diam/pi"});
  for (const auto& [id, c] : overrides.entries()) {
    Constant copy = c;
    copy.provenance = Provenance::user_supplied;
    out.set(id, std::move(copy));
  }
  if (!overrides.has(ConstantId::trace_manifold)) {
    const bool p = out.has(ConstantId::trace_plus);
    const bool m = out.has(ConstantId::trace_minus);
    if (p || m) {
      const Constant& best = !m || (p && out.value(ConstantId::trace_plus) <= out.value(ConstantId::trace_minus))
                                 ? out.get(ConstantId::trace_plus)
                                 : out.get(ConstantId::trace_minus);
      Constant c = best;
      c.source = "min(trace_plus, trace_minus): " + best.source;
      out.set(ConstantId::trace_manifold, std::move(c));
    }
  }
  out.require(required);
  return out;
}

}  // namespace thinob
