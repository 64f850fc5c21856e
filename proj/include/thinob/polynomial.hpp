#pragma once

#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "thinob/simd.hpp"

namespace thinob {

/// Sparse bivariate polynomial sum c * x1^i * x2^j with terms kept sorted by
/// (i, j) and zero coefficients dropped.
class Polynomial {
 public:
  struct Term {
    int i = 0;
    int j = 0;
    double c = 0.0;
  };

  Polynomial() = default;
  explicit Polynomial(std::vector<Term> terms);

  static Polynomial constant(double c);
  static Polynomial x1();
  static Polynomial x2();
  /// c * x1^i * x2^j
  static Polynomial monomial(int i, int j, double c = 1.0);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  double operator()(double x1, double x2) const;
  void eval(std::span<const double> x1, std::span<const double> x2, std::span<double> out) const;

  Polynomial d_dx1() const;
  Polynomial d_dx2() const;
  Polynomial laplacian() const;
  /// p(x1, 0) as a polynomial in x1 (j = 0 terms).
  Polynomial restrict_x2_zero() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;
  Polynomial operator-() const { return *this * -1.0; }

  std::string to_string() const;

 private:
  void compile();

  std::vector<Term> terms_;
  std::vector<int> ex_;
  std::vector<int> ey_;
  std::vector<double> coeff_;
  int max_ex_ = 0;
  int max_ey_ = 0;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p * s; }
inline Polynomial operator+(const Polynomial& p, double c) { return p + Polynomial::constant(c); }
inline Polynomial operator+(double c, const Polynomial& p) { return p + Polynomial::constant(c); }
inline Polynomial operator-(const Polynomial& p, double c) { return p - Polynomial::constant(c); }
inline Polynomial operator-(double c, const Polynomial& p) { return Polynomial::constant(c) - p; }

}  // namespace thinob
