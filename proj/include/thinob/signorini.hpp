#pragma once

#include <array>

#include "thinob/constants.hpp"
#include "thinob/fields.hpp"
#include "thinob/majorants.hpp"

namespace thinob {

/// Axis-aligned rectangle whose bottom edge is the contact part M; the
/// other three sides carry the Dirichlet datum.
class SignoriniDomain {
 public:
  double x1_lo() const { return x1_lo_; }
  double x1_hi() const { return x1_hi_; }
  double x2_lo() const { return x2_lo_; }
  double x2_hi() const { return x2_hi_; }
  /// M as an interval in x1 at height x2_lo.
  Interval contact() const { return {x1_lo_, x1_hi_}; }
  /// Outward unit normal on M.
  Vec2 contact_normal() const { return {0.0, -1.0}; }
  /// Right, top and left sides (counter-clockwise).
  const std::array<BoundaryPiece, 3>& dirichlet_boundary() const { return dirichlet_; }
  double diameter() const;
  double area() const { return (x1_hi_ - x1_lo_) * (x2_hi_ - x2_lo_); }
  /// Two triangles split along the SW-NE diagonal, refined `level` times.
  Mesh triangulate(int level) const;

 private:
  friend SignoriniDomain build_signorini_domain(double x1_lo, double x1_hi, double x2_lo, double x2_hi);
  double x1_lo_ = 0.0;
  double x1_hi_ = 1.0;
  double x2_lo_ = 0.0;
  double x2_hi_ = 1.0;
  std::array<BoundaryPiece, 3> dirichlet_;
};

/// Throws InvalidParameter for an empty or non-finite rectangle.
SignoriniDomain build_signorini_domain(double x1_lo, double x1_hi, double x2_lo, double x2_hi);

struct SignoriniProblem {
  SignoriniDomain domain;
  ScalarFieldPtr psi;
  ScalarFieldPtr phi;
  QuadratureConfig quadrature;
  double admissibility_tol = 1e-10;
};

/// v - psi on 1025 points of M and |v - phi| on 257 points per Dirichlet side.
AdmissibilityReport check_admissible_signorini(const ScalarField& v, const SignoriniProblem& problem);

/// Payne-Weinberger bound for signorini_poincare plus user overrides. The
/// Friedrichs, trace and sloshing constants of this geometry have no
/// built-in value.
ConstantSet assemble_signorini_constants(const SignoriniDomain& domain, const ConstantSet& overrides,
                                         const std::vector<ConstantId>& required = {});

double energy_error_signorini(const ScalarField& v, const ScalarField& u, const SignoriniProblem& problem);

/// ||grad v - q|| + sqrt(2) (int_M lambda (v - psi))^(1/2) + C_F ||div q||
///   + C_Tr ||lambda - q.n||_M
MajorantReport majorant_signorini(const SignoriniProblem& problem, const ScalarField& v, const FluxField& q,
                                  const MultiplierField& lambda, const ConstantSet& constants);

/// Same form with the Poincare constants; needs int div q = 0 and
/// int_M (lambda - q.n) = 0 to 1e-10, else ConditionViolation.
MajorantReport majorant_signorini_poincare(const SignoriniProblem& problem, const ScalarField& v, const FluxField& q,
                                           const MultiplierField& lambda, const ConstantSet& constants);

/// max(q.n, 0) on M with n = (0, -1).
MultiplierFieldPtr signorini_multiplier_from_flux(const FluxFieldPtr& q, double x2_contact);

}  // namespace thinob
