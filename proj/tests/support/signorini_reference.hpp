#pragma once

#include <vector>

#include "thinob/fields.hpp"

namespace thinob::testing {

// P1 Signorini solve on the unit square: n x n cells split along the SW-NE
// diagonal, Dirichlet data phi on right/top/left, u >= psi on the bottom
// edge. Primal-dual active set iteration, one sparse solve per sweep.
struct SignoriniReference {
  int n = 0;
  std::vector<double> u;  // nodal values, index i + (n + 1) j
  int iterations = 0;
  double step_residual = 0.0;  // sup norm of the KKT residual at exit

  double nodal(int i, int j) const { return u[static_cast<std::size_t>(i + (n + 1) * j)]; }
  // || grad(v - u_h) || with a degree-`degree` rule per element
  double energy_distance(const ScalarField& v, int degree = 12) const;
};

SignoriniReference solve_signorini_reference(int n, const ScalarField& phi, const ScalarField& psi,
                                             double tol = 1e-11, int max_iterations = 200);

}  // namespace thinob::testing
