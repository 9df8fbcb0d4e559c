#pragma once

#include "pxa/factorization.hpp"
#include "pxa/polynomial.hpp"

#include <memory>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pxa {

class NumberFieldElement;

/// The simple extension Q[x]/(g) for a monic irreducible g. Degree 1
/// degenerates to Q itself. Copies share the modulus.
class NumberField {
public:
  explicit NumberField(Polynomial modulus) {
    if (!modulus.is_monic() || modulus.degree() < 1)
      throw std::domain_error("NumberField: modulus must be monic of degree >= 1");
    if (modulus.degree() > 1 && !is_irreducible(modulus))
      throw std::domain_error("NumberField: modulus must be irreducible");
    g_ = std::make_shared<const Polynomial>(std::move(modulus));
  }

  const Polynomial& modulus() const { return *g_; }
  std::size_t degree() const { return static_cast<std::size_t>(g_->degree()); }

  bool same(const NumberField& o) const { return g_ == o.g_ || *g_ == *o.g_; }

  NumberFieldElement element(std::vector<Rational> coords) const;
  NumberFieldElement from_polynomial(const Polynomial& p) const;
  /// The residue class of x, a root of the modulus.
  NumberFieldElement generator() const;
  NumberFieldElement zero() const;
  NumberFieldElement one() const;

private:
  std::shared_ptr<const Polynomial> g_;
};

/// Residue class q(x) mod g(x); coords are the coefficients of 1, x, ...,
/// x^{k-1}, stored zero-padded to length k.
class NumberFieldElement {
public:
  NumberFieldElement(NumberField field, std::vector<Rational> coords)
      : field_(std::move(field)), coords_(std::move(coords)) {
    if (coords_.size() != field_.degree())
      throw std::invalid_argument("NumberFieldElement: coordinate length mismatch");
  }

  const NumberField& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const {
    for (const Rational& c : coords_)
      if (!c.is_zero()) return false;
    return true;
  }

  Polynomial to_polynomial() const { return Polynomial(coords_); }

  friend NumberFieldElement operator+(const NumberFieldElement& a,
                                      const NumberFieldElement& b) {
    a.require_same_field(b);
    std::vector<Rational> c(a.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] + b.coords_[i];
    return NumberFieldElement(a.field_, std::move(c));
  }
  friend NumberFieldElement operator-(const NumberFieldElement& a,
                                      const NumberFieldElement& b) {
    a.require_same_field(b);
    std::vector<Rational> c(a.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] - b.coords_[i];
    return NumberFieldElement(a.field_, std::move(c));
  }
  NumberFieldElement operator-() const {
    std::vector<Rational> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
    return NumberFieldElement(field_, std::move(c));
  }
  friend NumberFieldElement operator*(const NumberFieldElement& a,
                                      const NumberFieldElement& b) {
    a.require_same_field(b);
    return a.field_.from_polynomial(a.to_polynomial() * b.to_polynomial());
  }
  friend NumberFieldElement operator*(const Rational& s, const NumberFieldElement& a) {
    std::vector<Rational> c(a.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a.coords_[i];
    return NumberFieldElement(a.field_, std::move(c));
  }

  friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
    return a.field_.same(b.field_) && a.coords_ == b.coords_;
  }
  friend bool operator!=(const NumberFieldElement& a, const NumberFieldElement& b) {
    return !(a == b);
  }

  /// Lexicographic order on coordinate vectors; used for deterministic root
  /// enumeration.
  friend bool operator<(const NumberFieldElement& a, const NumberFieldElement& b) {
    for (std::size_t i = 0; i < a.coords_.size(); ++i) {
      if (a.coords_[i] != b.coords_[i]) return a.coords_[i] < b.coords_[i];
    }
    return false;
  }

  std::string to_string() const { return to_polynomial().to_string(); }

private:
  void require_same_field(const NumberFieldElement& o) const {
    if (!field_.same(o.field_))
      throw std::domain_error("NumberFieldElement: field mismatch");
  }

  NumberField field_;
  std::vector<Rational> coords_;
};

inline NumberFieldElement NumberField::element(std::vector<Rational> coords) const {
  if (coords.size() > degree())
    throw std::invalid_argument("NumberField: too many coordinates");
  coords.resize(degree());
  return NumberFieldElement(*this, std::move(coords));
}

inline NumberFieldElement NumberField::from_polynomial(const Polynomial& p) const {
  Polynomial r = p % *g_;
  std::vector<Rational> c(r.coeffs());
  c.resize(degree());
  return NumberFieldElement(*this, std::move(c));
}

inline NumberFieldElement NumberField::generator() const {
  return from_polynomial(Polynomial::x());
}
inline NumberFieldElement NumberField::zero() const {
  return NumberFieldElement(*this, std::vector<Rational>(degree()));
}
inline NumberFieldElement NumberField::one() const {
  return from_polynomial(Polynomial(1));
}

/// Multiplicative inverse via the extended Euclidean algorithm against the
/// modulus.
inline NumberFieldElement inverse(const NumberFieldElement& a) {
  if (a.is_zero()) throw std::domain_error("NumberFieldElement: inverse of zero");
  const Polynomial& g = a.field().modulus();
  Polynomial r0 = g, r1 = a.to_polynomial();
  Polynomial t0, t1(1);
  while (!r1.is_zero()) {
    auto [q, r2] = divrem(r0, r1);
    Polynomial t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 = gcd(g, a) is a nonzero constant since g is irreducible and a != 0.
  if (r0.degree() != 0)
    throw std::logic_error("NumberFieldElement: modulus not coprime to element");
  return a.field().from_polynomial(r0.leading_coeff().reciprocal() * t0);
}

inline NumberFieldElement operator/(const NumberFieldElement& a,
                                    const NumberFieldElement& b) {
  return a * inverse(b);
}

/// Horner evaluation of a rational polynomial at a field element.
inline NumberFieldElement evaluate(const Polynomial& p, const NumberFieldElement& mu) {
  NumberFieldElement acc = mu.field().zero();
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * mu;
    const Rational& c = p.coeff(static_cast<std::size_t>(i));
    if (!c.is_zero()) acc = acc + c * mu.field().one();
  }
  return acc;
}

inline std::ostream& operator<<(std::ostream& os, const NumberFieldElement& e) {
  return os << e.to_string();
}

namespace detail {

// Polynomials over a number field K, coefficients low-to-high, trimmed.
struct KPoly {
  NumberField field;
  std::vector<NumberFieldElement> c;

  explicit KPoly(NumberField f) : field(std::move(f)) {}
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  const NumberFieldElement& lc() const { return c.back(); }
};

inline KPoly kpoly_from_rational(const Polynomial& p, const NumberField& k) {
  KPoly f(k);
  for (int i = 0; i <= p.degree(); ++i)
    f.c.push_back(p.coeff(static_cast<std::size_t>(i)) * k.one());
  f.trim();
  return f;
}

inline KPoly kpoly_mul(const KPoly& a, const KPoly& b) {
  KPoly out(a.field);
  if (a.is_zero() || b.is_zero()) return out;
  out.c.assign(a.c.size() + b.c.size() - 1, a.field.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j)
      out.c[i + j] = out.c[i + j] + a.c[i] * b.c[j];
  out.trim();
  return out;
}

inline KPoly kpoly_sub(const KPoly& a, const KPoly& b) {
  KPoly out(a.field);
  std::size_t n = std::max(a.c.size(), b.c.size());
  out.c.assign(n, a.field.zero());
  for (std::size_t i = 0; i < n; ++i) {
    NumberFieldElement x = i < a.c.size() ? a.c[i] : a.field.zero();
    NumberFieldElement y = i < b.c.size() ? b.c[i] : a.field.zero();
    out.c[i] = x - y;
  }
  out.trim();
  return out;
}

inline KPoly kpoly_scale(const NumberFieldElement& s, const KPoly& a) {
  KPoly out(a.field);
  out.c.reserve(a.c.size());
  for (const auto& x : a.c) out.c.push_back(s * x);
  out.trim();
  return out;
}

inline void kpoly_divrem(const KPoly& a, const KPoly& b, KPoly& quo, KPoly& rem) {
  if (b.is_zero()) throw std::domain_error("KPoly: division by zero");
  quo = KPoly(a.field);
  rem = a;
  rem.trim();
  int db = b.degree();
  if (rem.degree() < db) return;
  NumberFieldElement lead_inv = inverse(b.lc());
  quo.c.assign(static_cast<std::size_t>(rem.degree() - db) + 1, a.field.zero());
  for (int i = rem.degree(); i >= db; --i) {
    NumberFieldElement f = rem.c[static_cast<std::size_t>(i)] * lead_inv;
    if (!f.is_zero()) {
      quo.c[static_cast<std::size_t>(i - db)] = f;
      for (int j = 0; j <= db; ++j)
        rem.c[static_cast<std::size_t>(i - db + j)] =
            rem.c[static_cast<std::size_t>(i - db + j)] - f * b.c[static_cast<std::size_t>(j)];
    }
    rem.c.pop_back();
  }
  rem.trim();
}

inline KPoly kpoly_make_monic(const KPoly& a) {
  if (a.is_zero()) throw std::domain_error("KPoly: cannot normalize zero");
  return kpoly_scale(inverse(a.lc()), a);
}

inline KPoly kpoly_gcd(KPoly a, KPoly b) {
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    KPoly quo(a.field), rem(a.field);
    kpoly_divrem(a, b, quo, rem);
    a = std::move(b);
    b = std::move(rem);
  }
  return kpoly_make_monic(a);
}

inline KPoly kpoly_derivative(const KPoly& a) {
  KPoly out(a.field);
  if (a.c.size() <= 1) return out;
  for (std::size_t i = 1; i < a.c.size(); ++i)
    out.c.push_back(Rational(static_cast<long long>(i)) * a.c[i]);
  out.trim();
  return out;
}

// Substitute t -> t + c.
inline KPoly kpoly_shift(const KPoly& a, const NumberFieldElement& c) {
  KPoly lin(a.field); // t + c
  lin.c = {c, a.field.one()};
  KPoly acc(a.field);
  for (int i = a.degree(); i >= 0; --i) {
    acc = kpoly_mul(acc, lin);
    if (acc.c.empty()) acc.c.push_back(a.field.zero());
    acc.c[0] = acc.c[0] + a.c[static_cast<std::size_t>(i)];
    acc.trim();
  }
  return acc;
}

// Norm of a monic f in K[t] down to Q[t] by resultant interpolation:
// N(t) = Res_x(g(x), f(t) with the generator replaced by x), evaluated at
// deg(g)*deg(f) + 1 points and interpolated exactly.
inline Polynomial kpoly_norm(const KPoly& f) {
  const Polynomial& g = f.field.modulus();
  const int k = g.degree();
  const int d = f.degree();
  const int n = k * d;
  std::vector<Rational> xs, ys;
  long t = 0;
  while (static_cast<int>(xs.size()) < n + 1) {
    // q_t(x) = sum_i coeff_i(x) * t^i
    Polynomial q;
    Rational tv(t);
    for (int i = d; i >= 0; --i)
      q = tv * q + f.c[static_cast<std::size_t>(i)].to_polynomial();
    xs.push_back(tv);
    ys.push_back(resultant(g, q));
    t = t >= 0 ? -(t + 1) : -t; // 0, -1, 1, -2, 2, ...
  }
  // Lagrange interpolation.
  Polynomial result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial basis(1);
    Rational denom(1);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      basis *= Polynomial({-xs[j], Rational(1)});
      denom *= xs[i] - xs[j];
    }
    result += (ys[i] / denom) * basis;
  }
  return result;
}

} // namespace detail

/// All mu in K = Q[x]/(g) with p(mu) equal to the residue class of x, in
/// lexicographic coordinate order. Implemented by Trager's method: shift by
/// integer multiples of the generator until the resultant norm is squarefree,
/// factor the norm over Q, and map factors back by gcd over K.
inline std::vector<NumberFieldElement> roots_in_extension(const Polynomial& p,
                                                          const Polynomial& g) {
  if (p.degree() < 1) throw std::domain_error("roots_in_extension: p must be nonconstant");
  NumberField k{g}; // validates monic irreducible
  const NumberFieldElement alpha = k.generator();

  // f(t) = p(t) - alpha, made monic and squarefree over K.
  detail::KPoly f = detail::kpoly_from_rational(p, k);
  if (f.c.empty()) f.c.push_back(k.zero());
  f.c[0] = f.c[0] - alpha;
  f.trim();
  f = detail::kpoly_make_monic(f);
  if (f.degree() >= 1) {
    detail::KPoly df = detail::kpoly_derivative(f);
    if (!df.is_zero()) {
      detail::KPoly red = detail::kpoly_gcd(f, df);
      if (red.degree() >= 1) {
        detail::KPoly quo(k), rem(k);
        detail::kpoly_divrem(f, red, quo, rem);
        f = detail::kpoly_make_monic(quo);
      }
    }
  }

  // Shift search: s = 0, 1, -1, 2, -2, ... until the norm is squarefree.
  long s = 0;
  detail::KPoly shifted(k);
  Polynomial norm;
  for (;;) {
    shifted = detail::kpoly_shift(f, Rational(s) * alpha);
    norm = detail::kpoly_norm(shifted);
    if (gcd(norm, derivative(norm)).degree() == 0) break;
    s = s > 0 ? -s : -s + 1;
  }

  std::vector<NumberFieldElement> roots;
  Factorization nf = factor_over_Q(norm);
  for (const auto& [factor, mult] : nf.factors) {
    (void)mult; // squarefree norm
    detail::KPoly h = detail::kpoly_gcd(shifted, detail::kpoly_from_rational(factor, k));
    if (h.degree() == 1) {
      // h = t - nu with shifted(t) = f(t + s*alpha), so the root of f is
      // nu + s*alpha.
      NumberFieldElement mu = -h.c[0] + Rational(s) * alpha;
      if (evaluate(p, mu) != alpha)
        throw std::logic_error("roots_in_extension: unsound root");
      roots.push_back(std::move(mu));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

} // namespace pxa
