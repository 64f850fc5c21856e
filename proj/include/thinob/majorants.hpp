#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thinob/constants.hpp"
#include "thinob/fields.hpp"
#include "thinob/geometry.hpp"
#include "thinob/quadrature.hpp"

namespace thinob {

/// Everything about the thin obstacle problem except the approximation:
/// geometry, obstacle psi on M, Dirichlet datum phi and how to integrate.
struct ThinObstacleProblem {
  Domain2D domain;
  ScalarFieldPtr psi;
  ScalarFieldPtr phi;
  QuadratureConfig quadrature;
  double admissibility_tol = 1e-10;
};

enum class MajorantKind { basic, M, M12, M4, M5, M5_partial, signorini, signorini_poincare };

const char* to_string(MajorantKind kind);
std::optional<MajorantKind> majorant_kind_from_string(const std::string& name);
/// Conventional symbol of the kind (M5_partial is usually written M'3).
const char* notation(MajorantKind kind);

struct MajorantReport {
  MajorantKind kind = MajorantKind::M;
  double value = 0.0;
  std::map<std::string, double> terms;
  std::map<std::string, double> parameters;
  std::map<ConstantId, Constant> constants_used;
  std::optional<double> exact_error;
  std::optional<double> efficiency_index;
  double quadrature_slack = 1e-8;
  QuadratureStats quadrature;

  void attach_exact_error(double error);
};

/// Integrals a majorant is assembled from, for one (v, q, lambda).
struct ResidualTerms {
  double flux_misfit_sq = 0.0;   // ||grad v - q||^2 over Omega
  double div_sq_plus = 0.0;      // ||div q||^2 over Omega+
  double div_sq_minus = 0.0;
  double div_mean_plus = 0.0;    // integral of div q over Omega+
  double div_mean_minus = 0.0;
  double pairing = 0.0;          // integral of lambda (v - psi) over M
  double jump_residual_sq = 0.0; // ||lambda - [q.n]||^2 over M
  double manifold_mean = 0.0;    // integral of lambda - [q.n] over M
  QuadratureStats stats;
};

/// Checks v against the obstacle and boundary datum and lambda >= 0, then
/// integrates. Throws Inadmissible on a failed check.
ResidualTerms compute_residuals(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                                const MultiplierField& lambda);

/// ||grad(v - u)|| with graded quadrature.
double energy_error(const ScalarField& v, const ScalarField& u, const Domain2D& domain,
                    const QuadratureConfig& config, QuadratureStats* stats = nullptr);

/// Flux assumed equilibrated: ||div y|| <= 1e-10 per side and
/// ||lambda - [y.n]|| <= 1e-10, else NotEquilibrated.
MajorantReport majorant_basic(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& y,
                              const MultiplierField& lambda, const ConstantSet& constants);

MajorantReport majorant_M(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                          const MultiplierField& lambda, const ConstantSet& constants);

MajorantReport majorant_M12(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                            const MultiplierField& lambda, double beta1, double beta2, const ConstantSet& constants);

/// c_beta = beta1 beta2 / ((1 + beta1)(1 + beta2))
double c_beta(double beta1, double beta2);

/// Pointwise minimizer of the manifold part for fixed (v, q, beta). Where
/// the trace constant is absent the value is still defined if it does not
/// depend on it (gap 0 with jump >= 0, or jump 0); otherwise evaluation
/// throws IncompleteConstants.
MultiplierFieldPtr optimal_lambda(const ScalarFieldPtr& v, const FluxFieldPtr& q, const ScalarFieldPtr& psi,
                                  double beta1, double beta2, const ConstantSet& constants);

MajorantReport majorant_M4(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q, double beta1,
                           double beta2, const ConstantSet& constants);

enum class M5Mode { full, partial };

/// alpha = nullopt selects optimal_alpha.
MajorantReport majorant_M5(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                           const MultiplierField& lambda, std::optional<double> alpha, const ConstantSet& constants,
                           M5Mode mode);

double optimal_alpha(double d_plus, double d_minus, double m_plus, double m_minus);

/// (D- + alpha m-)^2 + (D+ + (1 - alpha) m+)^2
double alpha_bracket(double alpha, double d_plus, double d_minus, double m_plus, double m_minus);

enum class BetaObjective { M12_with_lambda, M4 };

struct BetaSearchResult {
  double beta1 = 1.0;
  double beta2 = 1.0;
  MajorantReport report;
  int evaluations = 0;
};

/// Alternating golden-section searches on log10(beta) in [-4, 4]: 3 sweeps,
/// 60 evaluations per line search. Never worse than (1, 1), nor than
/// `start` when given. lambda is used only for M12_with_lambda.
BetaSearchResult optimize_betas(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                                const MultiplierField* lambda, const ConstantSet& constants, BetaObjective objective,
                                std::optional<std::pair<double, double>> start = std::nullopt);

/// Samples on M reused across beta values: quadrature weights, gap
/// max(v - psi, 0) and the normal jump of q.
struct ManifoldSamples {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> gap;
  std::vector<double> jump;
};

ManifoldSamples sample_manifold(const ThinObstacleProblem& problem, const ScalarField& v, const FluxField& q,
                                const IntegrationFeatures& extra = {});

/// Integral of rho over M for the given samples; trace constant optional
/// as in optimal_lambda.
double rho_integral(const ManifoldSamples& s, double beta1, double beta2, std::optional<double> trace_constant);

/// True if some sample needs the trace constant for rho or lambda-bar.
bool rho_needs_trace_constant(const ManifoldSamples& s);

}  // namespace thinob
