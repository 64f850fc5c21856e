#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thinob/geometry.hpp"

namespace thinob {

/// Every constant a majorant may multiply a residual with. The trace
/// candidates are one-sided bounds; trace_manifold is their minimum.
enum class ConstantId {
  friedrichs_plus,
  friedrichs_minus,
  trace_plus,
  trace_minus,
  trace_manifold,
  poincare_plus,
  poincare_minus,
  poincare_manifold_plus,
  poincare_manifold_minus,
  // contact problem on a region with M on its boundary
  signorini_friedrichs,
  signorini_trace,
  signorini_poincare,
  signorini_poincare_manifold,
};

const char* to_string(ConstantId id);
std::optional<ConstantId> constant_from_string(const std::string& name);
const std::vector<ConstantId>& all_constant_ids();

enum class Provenance { closed_form, payne_weinberger, user_supplied };
const char* to_string(Provenance p);

struct Constant {
  double value = 0.0;
  Provenance provenance = Provenance::user_supplied;
  std::string source;
};

/// Partial map of constants. `get` throws IncompleteConstants for an absent
/// entry, so a majorant asks only for what it actually multiplies.
class ConstantSet {
 public:
  bool has(ConstantId id) const { return values_.count(id) != 0; }
  const Constant& get(ConstantId id) const;
  double value(ConstantId id) const { return get(id).value; }
  /// Throws InvalidParameter unless value is positive and finite.
  void set(ConstantId id, Constant c);
  const std::map<ConstantId, Constant>& entries() const { return values_; }

  /// Throws one IncompleteConstants naming every absent id.
  void require(const std::vector<ConstantId>& ids) const;

 private:
  std::map<ConstantId, Constant> values_;
};

/// C_F = a / pi for the example triangles (Dirichlet on both legs).
double friedrichs_example_triangle(double a);

/// diam / pi, an upper bound of the zero-mean Poincare constant of a convex set.
double payne_weinberger(double diameter);

/// Closed forms for the split square plus user overrides. Overrides win over
/// closed forms; trace_manifold is the minimum of the supplied trace
/// candidates unless it is overridden itself. Ids in `required` that remain
/// absent raise IncompleteConstants.
ConstantSet assemble_constants(const Domain2D& domain, const ConstantSet& overrides,
                               const std::vector<ConstantId>& required = {});

}  // namespace thinob
