#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thinob/geometry.hpp"
#include "thinob/polynomial.hpp"
#include "thinob/quadrature.hpp"

namespace thinob {

enum class Smoothness { polynomial, analytic_singular, piecewise };

const char* to_string(Smoothness s);

/// Evaluable scalar function on the closure of Omega. The side tag selects
/// the one-sided limit for points on M; away from M it is ignored by
/// continuous fields but must match the subdomain for per-side ones.
class ScalarField {
 public:
  virtual ~ScalarField() = default;

  virtual double value(Point p, Side side) const = 0;
  virtual Vec2 gradient(Point p, Side side) const = 0;
  /// Throws UnsupportedRepresentation when second derivatives are unknown.
  virtual double laplacian(Point p, Side side) const;
  virtual bool has_laplacian() const { return true; }
  virtual Smoothness smoothness() const = 0;
  virtual IntegrationFeatures features() const { return {}; }
  virtual std::string describe() const = 0;

  virtual void values(std::span<const Point> pts, Side side, std::span<double> out) const;
  virtual void gradients(std::span<const Point> pts, Side side, std::span<Vec2> out) const;
};

using ScalarFieldPtr = std::shared_ptr<const ScalarField>;

/// One polynomial per subdomain.
class PolynomialField final : public ScalarField {
 public:
  PolynomialField(Polynomial plus, Polynomial minus);
  explicit PolynomialField(const Polynomial& both) : PolynomialField(both, both) {}

  double value(Point p, Side side) const override;
  Vec2 gradient(Point p, Side side) const override;
  double laplacian(Point p, Side side) const override;
  Smoothness smoothness() const override { return Smoothness::polynomial; }
  std::string describe() const override;
  void values(std::span<const Point> pts, Side side, std::span<double> out) const override;
  void gradients(std::span<const Point> pts, Side side, std::span<Vec2> out) const override;

  const Polynomial& on(Side side) const { return side == Side::plus ? plus_ : minus_; }

 private:
  Polynomial plus_;
  Polynomial minus_;
  Polynomial dplus_[2];
  Polynomial dminus_[2];
  Polynomial lplus_;
  Polynomial lminus_;
};

/// Re((x1 - c + i|x2|)^(3/2)), harmonic off the half line {x1 <= c, x2 = 0}.
/// Evaluated through half-angle identities of the polar form so that no
/// cancellation occurs near the negative x1 axis.
class ExactSolutionField final : public ScalarField {
 public:
  explicit ExactSolutionField(double center = 0.0) : c_(center) {}

  double value(Point p, Side side) const override;
  Vec2 gradient(Point p, Side side) const override;
  double laplacian(Point, Side) const override { return 0.0; }
  Smoothness smoothness() const override { return Smoothness::analytic_singular; }
  IntegrationFeatures features() const override;
  std::string describe() const override;

  double center() const { return c_; }

 private:
  double c_;
};

/// sum_k c_k f_k
class SumField final : public ScalarField {
 public:
  explicit SumField(std::vector<std::pair<double, ScalarFieldPtr>> parts);

  double value(Point p, Side side) const override;
  Vec2 gradient(Point p, Side side) const override;
  double laplacian(Point p, Side side) const override;
  bool has_laplacian() const override;
  Smoothness smoothness() const override;
  IntegrationFeatures features() const override;
  std::string describe() const override;
  void values(std::span<const Point> pts, Side side, std::span<double> out) const override;
  void gradients(std::span<const Point> pts, Side side, std::span<Vec2> out) const override;

 private:
  std::vector<std::pair<double, ScalarFieldPtr>> parts_;
};

/// Polynomials on vertical strips. Strip k is breaks[k-1] < x1 <= breaks[k];
/// the first and last strips are unbounded. pieces[k] holds {plus, minus}.
class PiecewiseX1Field final : public ScalarField {
 public:
  PiecewiseX1Field(std::vector<double> breaks, std::vector<std::pair<Polynomial, Polynomial>> pieces);

  double value(Point p, Side side) const override;
  Vec2 gradient(Point p, Side side) const override;
  double laplacian(Point p, Side side) const override;
  Smoothness smoothness() const override { return Smoothness::piecewise; }
  IntegrationFeatures features() const override;
  std::string describe() const override;

 private:
  const PolynomialField& strip(double x1) const;

  std::vector<double> breaks_;
  std::vector<PolynomialField> strips_;
};

/// Field given by callables; the Laplacian is optional.
class FunctionField final : public ScalarField {
 public:
  using ValueFn = std::function<double(Point, Side)>;
  using GradFn = std::function<Vec2(Point, Side)>;

  FunctionField(std::string name, ValueFn value, GradFn gradient, ValueFn laplacian = {},
                Smoothness smoothness = Smoothness::analytic_singular, IntegrationFeatures features = {});

  double value(Point p, Side side) const override { return value_(p, side); }
  Vec2 gradient(Point p, Side side) const override { return gradient_(p, side); }
  double laplacian(Point p, Side side) const override;
  bool has_laplacian() const override { return static_cast<bool>(laplacian_); }
  Smoothness smoothness() const override { return smoothness_; }
  IntegrationFeatures features() const override { return features_; }
  std::string describe() const override { return name_; }

 private:
  std::string name_;
  ValueFn value_;
  GradFn gradient_;
  ValueFn laplacian_;
  Smoothness smoothness_;
  IntegrationFeatures features_;
};

/// Vector field in H(Omega+-, div).
class FluxField {
 public:
  virtual ~FluxField() = default;

  virtual Vec2 value(Point p, Side side) const = 0;
  virtual double divergence(Point p, Side side) const = 0;
  /// [q.n](x1) = q+(x1,0).n+ + q-(x1,0).n- with n+ = (0,-1), n- = (0,1).
  virtual double normal_jump(double x1) const;
  virtual IntegrationFeatures features() const { return {}; }
  virtual std::string describe() const = 0;

  virtual void values(std::span<const Point> pts, Side side, std::span<Vec2> out) const;
  virtual void divergences(std::span<const Point> pts, Side side, std::span<double> out) const;
};

using FluxFieldPtr = std::shared_ptr<const FluxField>;

class GradientFlux final : public FluxField {
 public:
  explicit GradientFlux(ScalarFieldPtr v) : v_(std::move(v)) {}

  Vec2 value(Point p, Side side) const override { return v_->gradient(p, side); }
  double divergence(Point p, Side side) const override { return v_->laplacian(p, side); }
  IntegrationFeatures features() const override { return v_->features(); }
  std::string describe() const override { return "grad(" + v_->describe() + ")"; }
  void values(std::span<const Point> pts, Side side, std::span<Vec2> out) const override {
    v_->gradients(pts, side, out);
  }

  const ScalarFieldPtr& potential() const { return v_; }

 private:
  ScalarFieldPtr v_;
};

/// Componentwise polynomials per subdomain: plus = {q1, q2}, minus = {q1, q2}.
class PolynomialFlux final : public FluxField {
 public:
  PolynomialFlux(std::array<Polynomial, 2> plus, std::array<Polynomial, 2> minus);

  Vec2 value(Point p, Side side) const override;
  double divergence(Point p, Side side) const override;
  std::string describe() const override;
  void values(std::span<const Point> pts, Side side, std::span<Vec2> out) const override;
  void divergences(std::span<const Point> pts, Side side, std::span<double> out) const override;

  const std::array<Polynomial, 2>& on(Side side) const { return side == Side::plus ? plus_ : minus_; }

 private:
  std::array<Polynomial, 2> plus_;
  std::array<Polynomial, 2> minus_;
  Polynomial div_plus_;
  Polynomial div_minus_;
};

class SumFlux final : public FluxField {
 public:
  explicit SumFlux(std::vector<std::pair<double, FluxFieldPtr>> parts);

  Vec2 value(Point p, Side side) const override;
  double divergence(Point p, Side side) const override;
  double normal_jump(double x1) const override;
  IntegrationFeatures features() const override;
  std::string describe() const override;
  void values(std::span<const Point> pts, Side side, std::span<Vec2> out) const override;
  void divergences(std::span<const Point> pts, Side side, std::span<double> out) const override;

 private:
  std::vector<std::pair<double, FluxFieldPtr>> parts_;
};

/// Function on M; members of the multiplier set are nonnegative.
class MultiplierField {
 public:
  virtual ~MultiplierField() = default;
  virtual double value(double x1) const = 0;
  virtual IntegrationFeatures features() const { return {}; }
  virtual std::string describe() const = 0;
};

using MultiplierFieldPtr = std::shared_ptr<const MultiplierField>;

/// max([q.n], 0)
class ClippedJump final : public MultiplierField {
 public:
  explicit ClippedJump(FluxFieldPtr q) : q_(std::move(q)) {}
  double value(double x1) const override;
  IntegrationFeatures features() const override { return q_->features(); }
  std::string describe() const override { return "max([" + q_->describe() + ".n], 0)"; }

 private:
  FluxFieldPtr q_;
};

class PolynomialMultiplier final : public MultiplierField {
 public:
  /// p(x1) given as a polynomial with j = 0 terms only.
  explicit PolynomialMultiplier(Polynomial p);
  double value(double x1) const override { return p_(x1, 0.0); }
  std::string describe() const override { return p_.to_string(); }

 private:
  Polynomial p_;
};

class FunctionMultiplier final : public MultiplierField {
 public:
  FunctionMultiplier(std::string name, std::function<double(double)> f, IntegrationFeatures features = {})
      : name_(std::move(name)), f_(std::move(f)), features_(std::move(features)) {}
  double value(double x1) const override { return f_(x1); }
  IntegrationFeatures features() const override { return features_; }
  std::string describe() const override { return name_; }

 private:
  std::string name_;
  std::function<double(double)> f_;
  IntegrationFeatures features_;
};

/// Gradient flux of v. Throws UnsupportedRepresentation when v carries no
/// second derivatives.
FluxFieldPtr flux_from_gradient(const ScalarFieldPtr& v);

/// Clipped normal jump of q.
MultiplierFieldPtr multiplier_from_jump(const FluxFieldPtr& q);

struct AdmissibilityReport {
  double min_gap_on_manifold = 0.0;
  double max_boundary_mismatch = 0.0;
  double tolerance = 0.0;
  bool admissible = false;
};

/// Samples v - psi at 1025 equispaced points of M (both traces) and v - phi
/// at 257 points per boundary piece.
AdmissibilityReport check_admissible(const ScalarField& v, const Domain2D& domain, const ScalarField& psi,
                                     const ScalarField& phi, double tol);

/// Smallest multiplier value over the same 1025-point manifold grid.
double min_multiplier_on_grid(const MultiplierField& lambda, Interval manifold);

}  // namespace thinob
