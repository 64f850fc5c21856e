#include "thinob/fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "thinob/errors.hpp"

namespace thinob {

const char* to_string(Smoothness s) {
  switch (s) {
    case Smoothness::polynomial:
      return "polynomial";
    case Smoothness::analytic_singular:
      return "analytic_singular";
    case Smoothness::piecewise:
      return "piecewise";
  }
  return "?";
}

double ScalarField::laplacian(Point, Side) const {
  throw UnsupportedRepresentation("field '" + describe() + "' has no second derivatives");
}

void ScalarField::values(std::span<const Point> pts, Side side, std::span<double> out) const {
  for (std::size_t k = 0; k < pts.size(); ++k) out[k] = value(pts[k], side);
}

void ScalarField::gradients(std::span<const Point> pts, Side side, std::span<Vec2> out) const {
  for (std::size_t k = 0; k < pts.size(); ++k) out[k] = gradient(pts[k], side);
}

namespace {

void split_coordinates(std::span<const Point> pts, std::vector<double>& x, std::vector<double>& y) {
  x.resize(pts.size());
  y.resize(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    x[k] = pts[k].x1;
    y[k] = pts[k].x2;
  }
}

}  // namespace

// ---- PolynomialField

PolynomialField::PolynomialField(Polynomial plus, Polynomial minus)
    : plus_(std::move(plus)),
      minus_(std::move(minus)),
      dplus_{plus_.d_dx1(), plus_.d_dx2()},
      dminus_{minus_.d_dx1(), minus_.d_dx2()},
      lplus_(plus_.laplacian()),
      lminus_(minus_.laplacian()) {}

double PolynomialField::value(Point p, Side side) const { return on(side)(p.x1, p.x2); }

Vec2 PolynomialField::gradient(Point p, Side side) const {
  const Polynomial* d = side == Side::plus ? dplus_ : dminus_;
  return {d[0](p.x1, p.x2), d[1](p.x1, p.x2)};
}

double PolynomialField::laplacian(Point p, Side side) const {
  return (side == Side::plus ? lplus_ : lminus_)(p.x1, p.x2);
}

std::string PolynomialField::describe() const {
  return "poly{plus: " + plus_.to_string() + "; minus: " + minus_.to_string() + "}";
}

void PolynomialField::values(std::span<const Point> pts, Side side, std::span<double> out) const {
  std::vector<double> x;
  std::vector<double> y;
  split_coordinates(pts, x, y);
  on(side).eval(x, y, out);
}

void PolynomialField::gradients(std::span<const Point> pts, Side side, std::span<Vec2> out) const {
  std::vector<double> x;
  std::vector<double> y;
  split_coordinates(pts, x, y);
  std::vector<double> g1(pts.size());
  std::vector<double> g2(pts.size());
  const Polynomial* d = side == Side::plus ? dplus_ : dminus_;
  d[0].eval(x, y, g1);
  d[1].eval(x, y, g2);
  for (std::size_t k = 0; k < pts.size(); ++k) out[k] = {g1[k], g2[k]};
}

// ---- ExactSolutionField

namespace {

struct HalfAngles {
  double r = 0.0;
  double r_plus = 0.0;   // r + X
  double r_minus = 0.0;  // r - X
};

HalfAngles half_angles(double X, double x2) {
  HalfAngles h;
  h.r = std::hypot(X, x2);
  if (X < 0.0) {
    h.r_minus = h.r - X;
    h.r_plus = x2 * x2 / h.r_minus;
  } else if (h.r > 0.0) {
    h.r_plus = h.r + X;
    h.r_minus = x2 * x2 / h.r_plus;
  }
  return h;
}

}  // namespace

double ExactSolutionField::value(Point p, Side) const {
  const double X = p.x1 - c_;
  const HalfAngles h = half_angles(X, p.x2);
  if (h.r == 0.0) return 0.0;
  return std::sqrt(0.5 * h.r_plus) * (2.0 * X - h.r);
}

Vec2 ExactSolutionField::gradient(Point p, Side side) const {
  const double X = p.x1 - c_;
  const HalfAngles h = half_angles(X, p.x2);
  if (h.r == 0.0) return {0.0, 0.0};
  const double s = p.x2 > 0.0 ? 1.0 : (p.x2 < 0.0 ? -1.0 : (side == Side::plus ? 1.0 : -1.0));
  return {1.5 * std::sqrt(0.5 * h.r_plus), -s * 1.5 * std::sqrt(0.5 * h.r_minus)};
}

IntegrationFeatures ExactSolutionField::features() const {
  IntegrationFeatures f;
  f.singular_points.push_back({c_, 0.0});
  return f;
}

std::string ExactSolutionField::describe() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "exact_u(center=%.17g)", c_);
  return buf;
}

// ---- SumField

SumField::SumField(std::vector<std::pair<double, ScalarFieldPtr>> parts) : parts_(std::move(parts)) {
  for (const auto& [c, f] : parts_) {
    if (!f) throw InvalidParameter("SumField: null summand");
  }
}

double SumField::value(Point p, Side side) const {
  double s = 0.0;
  for (const auto& [c, f] : parts_) s += c * f->value(p, side);
  return s;
}

Vec2 SumField::gradient(Point p, Side side) const {
  Vec2 g;
  for (const auto& [c, f] : parts_) {
    const Vec2 d = f->gradient(p, side);
    g.x1 += c * d.x1;
    g.x2 += c * d.x2;
  }
  return g;
}

double SumField::laplacian(Point p, Side side) const {
  double s = 0.0;
  for (const auto& [c, f] : parts_) s += c * f->laplacian(p, side);
  return s;
}

bool SumField::has_laplacian() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const auto& part) { return part.second->has_laplacian(); });
}

Smoothness SumField::smoothness() const {
  Smoothness s = Smoothness::polynomial;
  for (const auto& [c, f] : parts_) {
    const Smoothness t = f->smoothness();
    if (t == Smoothness::piecewise) return t;
    if (t == Smoothness::analytic_singular) s = t;
  }
  return s;
}

IntegrationFeatures SumField::features() const {
  IntegrationFeatures out;
  for (const auto& [c, f] : parts_) out.merge(f->features());
  return out;
}

std::string SumField::describe() const {
  std::string s;
  char buf[40];
  for (const auto& [c, f] : parts_) {
    std::snprintf(buf, sizeof buf, "%s%.17g*", s.empty() ? "" : " + ", c);
    s += buf + f->describe();
  }
  return s;
}

void SumField::values(std::span<const Point> pts, Side side, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> tmp(pts.size());
  for (const auto& [c, f] : parts_) {
    f->values(pts, side, tmp);
    for (std::size_t k = 0; k < pts.size(); ++k) out[k] += c * tmp[k];
  }
}

void SumField::gradients(std::span<const Point> pts, Side side, std::span<Vec2> out) const {
  std::fill(out.begin(), out.end(), Vec2{});
  std::vector<Vec2> tmp(pts.size());
  for (const auto& [c, f] : parts_) {
    f->gradients(pts, side, tmp);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      out[k].x1 += c * tmp[k].x1;
      out[k].x2 += c * tmp[k].x2;
    }
  }
}

// ---- PiecewiseX1Field

PiecewiseX1Field::PiecewiseX1Field(std::vector<double> breaks, std::vector<std::pair<Polynomial, Polynomial>> pieces)
    : breaks_(std::move(breaks)) {
  if (pieces.size() != breaks_.size() + 1) {
    throw InvalidParameter("piecewise field needs one more piece than breaks");
  }
  if (!std::is_sorted(breaks_.begin(), breaks_.end())) throw InvalidParameter("piecewise breaks must be sorted");
  for (auto& [plus, minus] : pieces) strips_.emplace_back(std::move(plus), std::move(minus));
}

const PolynomialField& PiecewiseX1Field::strip(double x1) const {
  const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x1);
  return strips_[static_cast<std::size_t>(it - breaks_.begin())];
}

double PiecewiseX1Field::value(Point p, Side side) const { return strip(p.x1).value(p, side); }
Vec2 PiecewiseX1Field::gradient(Point p, Side side) const { return strip(p.x1).gradient(p, side); }
double PiecewiseX1Field::laplacian(Point p, Side side) const { return strip(p.x1).laplacian(p, side); }

IntegrationFeatures PiecewiseX1Field::features() const {
  IntegrationFeatures f;
  f.x1_breaks = breaks_;
  return f;
}

std::string PiecewiseX1Field::describe() const {
  std::string s = "piecewise{";
  char buf[40];
  for (std::size_t k = 0; k < strips_.size(); ++k) {
    if (k > 0) {
      std::snprintf(buf, sizeof buf, " | x1 > %.17g: ", breaks_[k - 1]);
      s += buf;
    }
    s += strips_[k].describe();
  }
  return s + "}";
}

// ---- FunctionField

FunctionField::FunctionField(std::string name, ValueFn value, GradFn gradient, ValueFn laplacian,
                             Smoothness smoothness, IntegrationFeatures features)
    : name_(std::move(name)),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      laplacian_(std::move(laplacian)),
      smoothness_(smoothness),
      features_(std::move(features)) {
  if (!value_ || !gradient_) throw InvalidParameter("FunctionField needs value and gradient");
}

double FunctionField::laplacian(Point p, Side side) const {
  if (!laplacian_) return ScalarField::laplacian(p, side);
  return laplacian_(p, side);
}

// ---- fluxes

double FluxField::normal_jump(double x1) const {
  return -value({x1, 0.0}, Side::plus).x2 + value({x1, 0.0}, Side::minus).x2;
}

void FluxField::values(std::span<const Point> pts, Side side, std::span<Vec2> out) const {
  for (std::size_t k = 0; k < pts.size(); ++k) out[k] = value(pts[k], side);
}

void FluxField::divergences(std::span<const Point> pts, Side side, std::span<double> out) const {
  for (std::size_t k = 0; k < pts.size(); ++k) out[k] = divergence(pts[k], side);
}

PolynomialFlux::PolynomialFlux(std::array<Polynomial, 2> plus, std::array<Polynomial, 2> minus)
    : plus_(std::move(plus)),
      minus_(std::move(minus)),
      div_plus_(plus_[0].d_dx1() + plus_[1].d_dx2()),
      div_minus_(minus_[0].d_dx1() + minus_[1].d_dx2()) {}

Vec2 PolynomialFlux::value(Point p, Side side) const {
  const auto& q = on(side);
  return {q[0](p.x1, p.x2), q[1](p.x1, p.x2)};
}

double PolynomialFlux::divergence(Point p, Side side) const {
  return (side == Side::plus ? div_plus_ : div_minus_)(p.x1, p.x2);
}

std::string PolynomialFlux::describe() const {
  return "polyflux{plus: (" + plus_[0].to_string() + ", " + plus_[1].to_string() + "); minus: (" +
         minus_[0].to_string() + ", " + minus_[1].to_string() + ")}";
}

void PolynomialFlux::values(std::span<const Point> pts, Side side, std::span<Vec2> out) const {
  std::vector<double> x;
  std::vector<double> y;
  split_coordinates(pts, x, y);
  std::vector<double> a(pts.size());
  std::vector<double> b(pts.size());
  on(side)[0].eval(x, y, a);
  on(side)[1].eval(x, y, b);
  for (std::size_t k = 0; k < pts.size(); ++k) out[k] = {a[k], b[k]};
}

void PolynomialFlux::divergences(std::span<const Point> pts, Side side, std::span<double> out) const {
  std::vector<double> x;
  std::vector<double> y;
  split_coordinates(pts, x, y);
  (side == Side::plus ? div_plus_ : div_minus_).eval(x, y, out);
}

SumFlux::SumFlux(std::vector<std::pair<double, FluxFieldPtr>> parts) : parts_(std::move(parts)) {
  for (const auto& [c, q] : parts_) {
    if (!q) throw InvalidParameter("SumFlux: null summand");
  }
}

Vec2 SumFlux::value(Point p, Side side) const {
  Vec2 s;
  for (const auto& [c, q] : parts_) {
    const Vec2 v = q->value(p, side);
    s.x1 += c * v.x1;
    s.x2 += c * v.x2;
  }
  return s;
}

double SumFlux::divergence(Point p, Side side) const {
  double s = 0.0;
  for (const auto& [c, q] : parts_) s += c * q->divergence(p, side);
  return s;
}

double SumFlux::normal_jump(double x1) const {
  double s = 0.0;
  for (const auto& [c, q] : parts_) s += c * q->normal_jump(x1);
  return s;
}

IntegrationFeatures SumFlux::features() const {
  IntegrationFeatures out;
  for (const auto& [c, q] : parts_) out.merge(q->features());
  return out;
}

std::string SumFlux::describe() const {
  std::string s;
  char buf[40];
  for (const auto& [c, q] : parts_) {
    std::snprintf(buf, sizeof buf, "%s%.17g*", s.empty() ? "" : " + ", c);
    s += buf + q->describe();
  }
  return s;
}

void SumFlux::values(std::span<const Point> pts, Side side, std::span<Vec2> out) const {
  std::fill(out.begin(), out.end(), Vec2{});
  std::vector<Vec2> tmp(pts.size());
  for (const auto& [c, q] : parts_) {
    q->values(pts, side, tmp);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      out[k].x1 += c * tmp[k].x1;
      out[k].x2 += c * tmp[k].x2;
    }
  }
}

void SumFlux::divergences(std::span<const Point> pts, Side side, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> tmp(pts.size());
  for (const auto& [c, q] : parts_) {
    q->divergences(pts, side, tmp);
    for (std::size_t k = 0; k < pts.size(); ++k) out[k] += c * tmp[k];
  }
}

// ---- multipliers

double ClippedJump::value(double x1) const { return std::max(q_->normal_jump(x1), 0.0); }

PolynomialMultiplier::PolynomialMultiplier(Polynomial p) : p_(std::move(p)) {
  for (const auto& t : p_.terms()) {
    if (t.j != 0) throw InvalidParameter("multiplier polynomial must not depend on x2");
  }
}

FluxFieldPtr flux_from_gradient(const ScalarFieldPtr& v) {
  if (!v) throw InvalidParameter("flux_from_gradient: null field");
  if (!v->has_laplacian()) {
    throw UnsupportedRepresentation("field '" + v->describe() + "' has no second derivatives; cannot form its flux");
  }
  return std::make_shared<GradientFlux>(v);
}

MultiplierFieldPtr multiplier_from_jump(const FluxFieldPtr& q) {
  if (!q) throw InvalidParameter("multiplier_from_jump: null flux");
  return std::make_shared<ClippedJump>(q);
}

// ---- admissibility

namespace {

constexpr int kManifoldSamples = 1025;
constexpr int kBoundarySamples = 257;

}  // namespace

AdmissibilityReport check_admissible(const ScalarField& v, const Domain2D& domain, const ScalarField& psi,
                                     const ScalarField& phi, double tol) {
  if (!(tol >= 0.0)) throw InvalidParameter("admissibility tolerance must be >= 0");
  AdmissibilityReport rep;
  rep.tolerance = tol;
  rep.min_gap_on_manifold = std::numeric_limits<double>::infinity();
  const Interval m = domain.manifold();
  for (int k = 0; k < kManifoldSamples; ++k) {
    const double x1 = m.lo + m.length() * k / (kManifoldSamples - 1);
    for (Side s : {Side::plus, Side::minus}) {
      const double gap = v.value({x1, 0.0}, s) - psi.value({x1, 0.0}, s);
      rep.min_gap_on_manifold = std::min(rep.min_gap_on_manifold, gap);
    }
  }
  for (const BoundaryPiece& piece : domain.boundary()) {
    for (int k = 0; k < kBoundarySamples; ++k) {
      const double t = static_cast<double>(k) / (kBoundarySamples - 1);
      const Point p{piece.begin.x1 + t * (piece.end.x1 - piece.begin.x1),
                    piece.begin.x2 + t * (piece.end.x2 - piece.begin.x2)};
      rep.max_boundary_mismatch =
          std::max(rep.max_boundary_mismatch, std::abs(v.value(p, piece.side) - phi.value(p, piece.side)));
    }
  }
  rep.admissible = rep.min_gap_on_manifold >= -tol && rep.max_boundary_mismatch <= tol;
  return rep;
}

double min_multiplier_on_grid(const MultiplierField& lambda, Interval manifold) {
  double lo = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kManifoldSamples; ++k) {
    lo = std::min(lo, lambda.value(manifold.lo + manifold.length() * k / (kManifoldSamples - 1)));
  }
  return lo;
}

}  // namespace thinob
