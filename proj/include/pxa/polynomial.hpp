#pragma once

#include "pxa/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pxa {

/// Dense univariate polynomial over Q, coefficients stored low-to-high with
/// no trailing zeros. The zero polynomial has an empty coefficient vector and
/// degree() == -1.
class Polynomial {
public:
  Polynomial() = default;
  Polynomial(const Rational& c) { if (!c.is_zero()) c_.push_back(c); }
  Polynomial(int c) : Polynomial(Rational(c)) {}
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs)
      : c_(coeffs.begin(), coeffs.end()) { trim(); }

  static Polynomial x() { return Polynomial({Rational(0), Rational(1)}); }
  static Polynomial monomial(int deg, Rational coeff = Rational(1)) {
    if (coeff.is_zero()) return Polynomial();
    std::vector<Rational> c(static_cast<std::size_t>(deg) + 1);
    c.back() = std::move(coeff);
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  const Rational& coeff(std::size_t i) const {
    static const Rational zero;
    return i < c_.size() ? c_[i] : zero;
  }
  const Rational& leading_coeff() const {
    if (c_.empty()) throw std::domain_error("Polynomial: leading coefficient of zero");
    return c_.back();
  }
  const std::vector<Rational>& coeffs() const { return c_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(c));
  }
  Polynomial operator-() const {
    std::vector<Rational> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    if (s.is_zero()) return Polynomial();
    std::vector<Rational> c(p.c_.size());
    for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] = s * p.c_[i];
    return Polynomial(std::move(c));
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Horner evaluation.
  Rational operator()(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  std::string to_string(const std::string& var = "x") const;

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

struct DivRem {
  Polynomial quotient;
  Polynomial remainder;
};

inline DivRem divrem(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("Polynomial: division by zero polynomial");
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<Rational> rem(a.coeffs());
  const int db = b.degree();
  const Rational lead_inv = b.leading_coeff().reciprocal();
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db) + 1);
  for (int i = a.degree(); i >= db; --i) {
    if (rem[static_cast<std::size_t>(i)].is_zero()) continue;
    Rational f = rem[static_cast<std::size_t>(i)] * lead_inv;
    quo[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(static_cast<std::size_t>(j));
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

inline Polynomial operator/(const Polynomial& a, const Polynomial& b) {
  return divrem(a, b).quotient;
}
inline Polynomial operator%(const Polynomial& a, const Polynomial& b) {
  return divrem(a, b).remainder;
}

inline bool divides(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.is_zero();
  return divrem(b, a).remainder.is_zero();
}

inline Polynomial make_monic(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("Polynomial: cannot normalize zero");
  return p.leading_coeff().reciprocal() * p;
}

/// Monic greatest common divisor; gcd(0, 0) is a domain error.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero())
    throw std::domain_error("Polynomial: gcd(0, 0) undefined");
  Polynomial f = a, g = b;
  while (!g.is_zero()) {
    Polynomial r = f % g;
    f = std::move(g);
    g = std::move(r);
  }
  return make_monic(f);
}

inline Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  return make_monic((a * b) / gcd(a, b));
}

inline Polynomial derivative(const Polynomial& p) {
  if (p.degree() < 1) return Polynomial();
  std::vector<Rational> c(static_cast<std::size_t>(p.degree()));
  for (int i = 1; i <= p.degree(); ++i)
    c[static_cast<std::size_t>(i - 1)] = Rational(i) * p.coeff(static_cast<std::size_t>(i));
  return Polynomial(std::move(c));
}

/// Product of the distinct irreducible factors, monic.
inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("Polynomial: squarefree part of zero");
  if (p.degree() == 0) return Polynomial(1);
  return make_monic(p / gcd(p, derivative(p)));
}

inline Polynomial pow(const Polynomial& base, int e) {
  if (e < 0) throw std::domain_error("Polynomial: negative power");
  Polynomial acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    if (e >>= 1) b *= b;
  }
  return acc;
}

inline Polynomial compose(const Polynomial& p, const Polynomial& q) {
  Polynomial acc;
  for (int i = p.degree(); i >= 0; --i)
    acc = acc * q + Polynomial(p.coeff(static_cast<std::size_t>(i)));
  return acc;
}

/// Res(a, b) via the Euclidean recurrence. Zero iff a and b share a complex
/// root; by convention any zero argument gives 0 and two nonzero constants
/// give 1.
inline Rational resultant(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Rational(0);
  if (a.degree() == 0) return pow(a.leading_coeff(), b.degree());
  if (b.degree() == 0) return pow(b.leading_coeff(), a.degree());
  // Res(a, b) = (-1)^{da db} lc(b)^{da - dr} Res(r, b) with r = a mod b.
  Polynomial r = a % b;
  int da = a.degree(), db = b.degree();
  Rational sign = (da % 2 == 1 && db % 2 == 1) ? Rational(-1) : Rational(1);
  if (r.is_zero()) return Rational(0);
  return sign * pow(b.leading_coeff(), da - r.degree()) * resultant(b, r);
}

/// Canonical ordering used for deterministic output: by degree, then by
/// coefficients from the constant term up.
inline bool operator<(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    const Rational &x = a.coeff(static_cast<std::size_t>(i)),
                   &y = b.coeff(static_cast<std::size_t>(i));
    if (x != y) return x < y;
  }
  return false;
}

inline std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeff(static_cast<std::size_t>(i));
    if (c.is_zero()) continue;
    const bool first = out.empty();
    Rational mag = c.abs();
    if (!first) out += c.sign() < 0 ? " - " : " + ";
    else if (c.sign() < 0) out += "-";
    if (i == 0 || !mag.is_one()) out += mag.to_string();
    if (i > 0) {
      if (!mag.is_one()) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  return os << p.to_string();
}

} // namespace pxa
