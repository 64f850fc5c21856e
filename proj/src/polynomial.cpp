#include "thinob/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <map>

namespace thinob {

namespace {

std::vector<Polynomial::Term> normalize(const std::map<std::pair<int, int>, double>& acc) {
  std::vector<Polynomial::Term> out;
  out.reserve(acc.size());
  for (const auto& [key, c] : acc) {
    if (c != 0.0) out.push_back({key.first, key.second, c});
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(std::vector<Term> terms) {
  std::map<std::pair<int, int>, double> acc;
  for (const Term& t : terms) {
    assert(t.i >= 0 && t.j >= 0);
    acc[{t.i, t.j}] += t.c;
  }
  terms_ = normalize(acc);
  compile();
}

Polynomial Polynomial::constant(double c) { return Polynomial({{0, 0, c}}); }
Polynomial Polynomial::x1() { return Polynomial({{1, 0, 1.0}}); }
Polynomial Polynomial::x2() { return Polynomial({{0, 1, 1.0}}); }
Polynomial Polynomial::monomial(int i, int j, double c) { return Polynomial({{i, j, c}}); }

void Polynomial::compile() {
  ex_.clear();
  ey_.clear();
  coeff_.clear();
  max_ex_ = 0;
  max_ey_ = 0;
  for (const Term& t : terms_) {
    ex_.push_back(t.i);
    ey_.push_back(t.j);
    coeff_.push_back(t.c);
    max_ex_ = std::max(max_ex_, t.i);
    max_ey_ = std::max(max_ey_, t.j);
  }
}

int Polynomial::degree() const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, t.i + t.j);
  return d;
}

double Polynomial::operator()(double x1, double x2) const {
  double out = 0.0;
  eval(std::span<const double>(&x1, 1), std::span<const double>(&x2, 1), std::span<double>(&out, 1));
  return out;
}

void Polynomial::eval(std::span<const double> x1, std::span<const double> x2, std::span<double> out) const {
  if (terms_.empty()) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  simd::eval_monomials({ex_, ey_, coeff_, max_ex_, max_ey_}, x1, x2, out);
}

Polynomial Polynomial::d_dx1() const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (t.i > 0) out.push_back({t.i - 1, t.j, t.c * t.i});
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::d_dx2() const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (t.j > 0) out.push_back({t.i, t.j - 1, t.c * t.j});
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::laplacian() const { return d_dx1().d_dx1() + d_dx2().d_dx2(); }

Polynomial Polynomial::restrict_x2_zero() const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (t.j == 0) out.push_back(t);
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return Polynomial(std::move(all));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (o * -1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<Term> all;
  all.reserve(terms_.size() * o.terms_.size());
  for (const Term& a : terms_) {
    for (const Term& b : o.terms_) all.push_back({a.i + b.i, a.j + b.j, a.c * b.c});
  }
  return Polynomial(std::move(all));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.c *= s;
  return Polynomial(std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  char buf[64];
  for (const Term& t : terms_) {
    std::snprintf(buf, sizeof buf, "%s%.17g*x1^%d*x2^%d", s.empty() ? "" : " + ", t.c, t.i, t.j);
    s += buf;
  }
  return s;
}

}  // namespace thinob
