#pragma once

#include <vector>

#include "thinob/majorants.hpp"

namespace thinob {

struct MinimizationOptions {
  int iterations = 10;
  /// Total degree of the per-subdomain polynomial flux correction.
  int flux_degree = 2;
};

struct MinimizationResult {
  FluxFieldPtr flux;
  MultiplierFieldPtr multiplier;
  MajorantReport report;
  double beta1 = 1.0;
  double beta2 = 1.0;
  double initial_value = 0.0;
  /// M4 value after each iteration.
  std::vector<double> history;
  std::vector<bool> flux_step_accepted;
};

/// Coordinate descent on M4 over (lambda, beta, q). The flux moves in
/// q0 + span{polynomial fields}; the span leaves [q.n] untouched, and each
/// q-step minimizes a quadratic majorizer of M1. A step that would raise M4
/// is rejected, so the history is non-increasing; a violation of that is an
/// InternalDefect.
MinimizationResult minimize_majorant(const ThinObstacleProblem& problem, const ScalarFieldPtr& v,
                                     const FluxFieldPtr& q0, const ConstantSet& constants,
                                     const MinimizationOptions& options = {});

}  // namespace thinob
