#pragma once

#include "pxa/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pxa {

/// Complete factorization over Q: unit * prod factors[i].first ^ factors[i].second
/// reproduces the input exactly; factors are monic, irreducible, pairwise
/// distinct and sorted canonically.
struct Factorization {
  Rational unit;
  std::vector<std::pair<Polynomial, int>> factors;

  Polynomial expand() const {
    Polynomial acc(unit);
    for (const auto& [f, m] : factors) acc *= pow(f, m);
    return acc;
  }
};

namespace detail {

// ---------------------------------------------------------------------------
// Integer polynomials (low-to-high, trimmed)
// ---------------------------------------------------------------------------

using IntPoly = std::vector<Int>;

inline void ipoly_trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int ipoly_degree(const IntPoly& f) { return static_cast<int>(f.size()) - 1; }

inline IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline Int ipoly_content(const IntPoly& f) {
  Int g = 0;
  for (const Int& c : f) g = boost::multiprecision::gcd(g, c);
  return g;
}

// Exact division by a monic divisor; returns false when it does not divide.
inline bool ipoly_monic_trial_divide(const IntPoly& f, const IntPoly& g, IntPoly& quo) {
  if (g.empty() || g.back() != 1) throw std::logic_error("trial divide: divisor not monic");
  IntPoly rem = f;
  ipoly_trim(rem);
  int df = ipoly_degree(rem), dg = ipoly_degree(g);
  if (df < dg) return false;
  quo.assign(static_cast<std::size_t>(df - dg) + 1, Int(0));
  for (int i = df; i >= dg; --i) {
    Int c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    quo[static_cast<std::size_t>(i - dg)] = c;
    for (int j = 0; j <= dg; ++j)
      rem[static_cast<std::size_t>(i - dg + j)] -= c * g[static_cast<std::size_t>(j)];
  }
  for (const Int& c : rem)
    if (c != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Arithmetic in F_q[x] for a small odd prime q (q < 2^31)
// ---------------------------------------------------------------------------

using ZpPoly = std::vector<std::uint64_t>;

inline void zp_trim(ZpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint64_t zp_pow_scalar(std::uint64_t b, std::uint64_t e, std::uint64_t q) {
  std::uint64_t acc = 1 % q;
  b %= q;
  while (e) {
    if (e & 1) acc = acc * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return acc;
}

inline std::uint64_t zp_inv_scalar(std::uint64_t a, std::uint64_t q) {
  return zp_pow_scalar(a, q - 2, q);
}

inline ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, std::uint64_t q) {
  if (a.empty() || b.empty()) return {};
  ZpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % q;
  }
  zp_trim(c);
  return c;
}

inline void zp_divrem(const ZpPoly& a, const ZpPoly& b, std::uint64_t q, ZpPoly& quo,
                      ZpPoly& rem) {
  rem = a;
  zp_trim(rem);
  quo.clear();
  int db = static_cast<int>(b.size()) - 1;
  if (db < 0) throw std::domain_error("zp_divrem: division by zero");
  int da = static_cast<int>(rem.size()) - 1;
  if (da < db) return;
  quo.assign(static_cast<std::size_t>(da - db) + 1, 0);
  std::uint64_t inv = zp_inv_scalar(b.back(), q);
  for (int i = da; i >= db; --i) {
    std::uint64_t c = rem[static_cast<std::size_t>(i)];
    if (!c) continue;
    std::uint64_t f = c * inv % q;
    quo[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) {
      std::uint64_t sub = f * b[static_cast<std::size_t>(j)] % q;
      std::uint64_t& r = rem[static_cast<std::size_t>(i - db + j)];
      r = (r + q - sub) % q;
    }
  }
  zp_trim(rem);
}

inline ZpPoly zp_mod(const ZpPoly& a, const ZpPoly& f, std::uint64_t q) {
  ZpPoly quo, rem;
  zp_divrem(a, f, q, quo, rem);
  return rem;
}

inline ZpPoly zp_make_monic(const ZpPoly& a, std::uint64_t q) {
  ZpPoly r = a;
  zp_trim(r);
  if (r.empty()) return r;
  std::uint64_t inv = zp_inv_scalar(r.back(), q);
  for (auto& c : r) c = c * inv % q;
  return r;
}

inline ZpPoly zp_gcd(ZpPoly a, ZpPoly b, std::uint64_t q) {
  zp_trim(a);
  zp_trim(b);
  while (!b.empty()) {
    ZpPoly quo, rem;
    zp_divrem(a, b, q, quo, rem);
    a = std::move(b);
    b = std::move(rem);
  }
  return zp_make_monic(a, q);
}

inline ZpPoly zp_derivative(const ZpPoly& a, std::uint64_t q) {
  if (a.size() <= 1) return {};
  ZpPoly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] % q * (i % q) % q;
  zp_trim(d);
  return d;
}

inline ZpPoly zp_pow_mod(const ZpPoly& base, Int e, const ZpPoly& f, std::uint64_t q) {
  ZpPoly acc{1};
  ZpPoly b = zp_mod(base, f, q);
  while (e > 0) {
    if ((e & 1) != 0) acc = zp_mod(zp_mul(acc, b, q), f, q);
    e >>= 1;
    if (e > 0) b = zp_mod(zp_mul(b, b, q), f, q);
  }
  return acc;
}

inline ZpPoly zp_sub(const ZpPoly& a, const ZpPoly& b, std::uint64_t q) {
  ZpPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    c[i] = (x + q - y) % q;
  }
  zp_trim(c);
  return c;
}

// Cantor-Zassenhaus equal-degree splitting: f is a monic squarefree product
// of irreducibles all of degree d. Appends the irreducible factors to out.
inline void zp_equal_degree(const ZpPoly& f, int d, std::uint64_t q,
                            std::mt19937_64& rng, std::vector<ZpPoly>& out) {
  int deg = static_cast<int>(f.size()) - 1;
  if (deg == d) {
    out.push_back(f);
    return;
  }
  const Int half = (boost::multiprecision::pow(Int(q), static_cast<unsigned>(d)) - 1) / 2;
  for (;;) {
    ZpPoly a(static_cast<std::size_t>(deg), 0);
    for (auto& c : a) c = rng() % q;
    zp_trim(a);
    if (a.empty()) continue;
    ZpPoly b = zp_pow_mod(a, half, f, q);
    b = zp_sub(b, ZpPoly{1}, q);
    ZpPoly g = zp_gcd(b, f, q);
    int dg = static_cast<int>(g.size()) - 1;
    if (dg <= 0 || dg >= deg) continue;
    ZpPoly quo, rem;
    zp_divrem(f, g, q, quo, rem);
    zp_equal_degree(g, d, q, rng, out);
    zp_equal_degree(zp_make_monic(quo, q), d, q, rng, out);
    return;
  }
}

// Distinct-degree then equal-degree factorization of a monic squarefree
// polynomial over F_q.
inline std::vector<ZpPoly> zp_factor_squarefree(ZpPoly f, std::uint64_t q,
                                                std::mt19937_64& rng) {
  std::vector<ZpPoly> out;
  const ZpPoly x{0, 1};
  ZpPoly h = x; // x^{q^d} mod f, updated incrementally
  int d = 0;
  while (static_cast<int>(f.size()) - 1 > 0) {
    ++d;
    if (2 * d > static_cast<int>(f.size()) - 1) {
      out.push_back(f);
      break;
    }
    h = zp_pow_mod(h, Int(q), f, q);
    ZpPoly g = zp_gcd(zp_sub(h, x, q), f, q);
    if (static_cast<int>(g.size()) - 1 > 0) {
      zp_equal_degree(g, d, q, rng, out);
      ZpPoly quo, rem;
      zp_divrem(f, g, q, quo, rem);
      f = zp_make_monic(quo, q);
      h = zp_mod(h, f, q);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting of a factorization mod q to mod q^e
// ---------------------------------------------------------------------------

inline IntPoly ipoly_reduce(const IntPoly& f, const Int& m) {
  IntPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    r[i] = f[i] % m;
    if (r[i] < 0) r[i] += m;
  }
  ipoly_trim(r);
  return r;
}

inline ZpPoly ipoly_to_zp(const IntPoly& f, std::uint64_t q) {
  ZpPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Int c = f[i] % q;
    if (c < 0) c += q;
    r[i] = static_cast<std::uint64_t>(c);
  }
  zp_trim(r);
  return r;
}

inline IntPoly zp_to_ipoly(const ZpPoly& f) {
  IntPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  return r;
}

// Extended Euclid over F_q: s*a + t*b = 1 for coprime a, b.
inline void zp_bezout(const ZpPoly& a, const ZpPoly& b, std::uint64_t q, ZpPoly& s,
                      ZpPoly& t) {
  ZpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  zp_trim(r0);
  zp_trim(r1);
  while (!r1.empty()) {
    ZpPoly quo, rem;
    zp_divrem(r0, r1, q, quo, rem);
    ZpPoly s2 = zp_sub(s0, zp_mul(quo, s1, q), q);
    ZpPoly t2 = zp_sub(t0, zp_mul(quo, t1, q), q);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (static_cast<int>(r0.size()) - 1 != 0)
    throw std::logic_error("zp_bezout: inputs not coprime");
  std::uint64_t inv = zp_inv_scalar(r0[0], q);
  s = s0;
  t = t0;
  for (auto& c : s) c = c * inv % q;
  for (auto& c : t) c = c * inv % q;
}

// Lift F = G*H (mod q) to mod q^e, all monic. Linear lifting with the fixed
// Bezout pair s*G0 + t*H0 = 1 (mod q).
inline void hensel_pair(const IntPoly& F, const ZpPoly& G0, const ZpPoly& H0,
                        std::uint64_t q, int e, IntPoly& G, IntPoly& H) {
  ZpPoly s, t;
  zp_bezout(G0, H0, q, s, t);
  G = zp_to_ipoly(G0);
  H = zp_to_ipoly(H0);
  Int mod = q;
  for (int j = 1; j < e; ++j) {
    IntPoly prod = ipoly_mul(G, H);
    IntPoly diff(std::max(F.size(), prod.size()), Int(0));
    for (std::size_t i = 0; i < diff.size(); ++i) {
      Int x = i < F.size() ? F[i] : Int(0);
      Int y = i < prod.size() ? prod[i] : Int(0);
      diff[i] = (x - y) / mod; // exact: F = G*H (mod q^j)
    }
    ZpPoly d = ipoly_to_zp(diff, q);
    // u*H0 + v*G0 = d (mod q) with deg u < deg G0; v is then exact.
    ZpPoly quo, u;
    zp_divrem(zp_mul(d, t, q), G0, q, quo, u);
    ZpPoly v, rem;
    zp_divrem(zp_sub(d, zp_mul(u, H0, q), q), G0, q, v, rem);
    if (!rem.empty()) throw std::logic_error("hensel_pair: inexact correction");
    IntPoly ui = zp_to_ipoly(u), vi = zp_to_ipoly(v);
    if (G.size() < ui.size()) G.resize(ui.size(), Int(0));
    if (H.size() < vi.size()) H.resize(vi.size(), Int(0));
    for (std::size_t i = 0; i < ui.size(); ++i) G[i] += mod * ui[i];
    for (std::size_t i = 0; i < vi.size(); ++i) H[i] += mod * vi[i];
    ipoly_trim(G);
    ipoly_trim(H);
    mod *= q;
  }
}

// Lift the factorization F = prod(factors) (mod q) to mod q^e (F monic).
inline std::vector<IntPoly> hensel_lift_list(const IntPoly& F,
                                             const std::vector<ZpPoly>& factors,
                                             std::uint64_t q, int e, const Int& modulus) {
  if (factors.size() == 1) return {ipoly_reduce(F, modulus)};
  std::size_t half = factors.size() / 2;
  ZpPoly G0{1}, H0{1};
  for (std::size_t i = 0; i < half; ++i) G0 = zp_mul(G0, factors[i], q);
  for (std::size_t i = half; i < factors.size(); ++i) H0 = zp_mul(H0, factors[i], q);
  IntPoly G, H;
  hensel_pair(F, G0, H0, q, e, G, H);
  std::vector<ZpPoly> left(factors.begin(), factors.begin() + half);
  std::vector<ZpPoly> right(factors.begin() + half, factors.end());
  std::vector<IntPoly> out = hensel_lift_list(G, left, q, e, modulus);
  std::vector<IntPoly> out2 = hensel_lift_list(H, right, q, e, modulus);
  out.insert(out.end(), out2.begin(), out2.end());
  return out;
}

// ---------------------------------------------------------------------------
// Zassenhaus
// ---------------------------------------------------------------------------

inline IntPoly ipoly_symmetric(const IntPoly& f, const Int& m) {
  IntPoly r = ipoly_reduce(f, m);
  Int half = m / 2;
  for (auto& c : r)
    if (c > half) c -= m;
  ipoly_trim(r);
  return r;
}

inline const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    for (std::uint64_t cand = 2; out.size() < 500; ++cand) {
      bool ok = true;
      for (std::uint64_t p : out) {
        if (p * p > cand) break;
        if (cand % p == 0) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(cand);
    }
    return out;
  }();
  return primes;
}

inline bool next_combination(std::vector<std::size_t>& pick, std::size_t n) {
  std::size_t k = pick.size();
  for (std::size_t i = k; i-- > 0;) {
    if (pick[i] < n - k + i) {
      ++pick[i];
      for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Factor a primitive squarefree integer polynomial (positive leading
// coefficient, degree >= 1) into monic irreducible rational polynomials.
inline std::vector<Polynomial> factor_squarefree_integer(const IntPoly& s_in) {
  IntPoly S = s_in;
  ipoly_trim(S);
  const int n = ipoly_degree(S);
  auto to_monic_q = [](const IntPoly& f) {
    std::vector<Rational> c(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = Rational(f[i]);
    return make_monic(Polynomial(std::move(c)));
  };
  if (n == 1) return {to_monic_q(S)};

  // Monicize: F(y) = L^{n-1} S(y/L) with L = lc(S). Factors of S correspond
  // to factors of F under y = L x.
  const Int L = S.back();
  IntPoly F(S.size());
  F[static_cast<std::size_t>(n)] = 1;
  Int scale = 1;
  for (int i = n - 1; i >= 0; --i) {
    F[static_cast<std::size_t>(i)] = S[static_cast<std::size_t>(i)] * scale;
    scale *= L;
  }
  auto map_back = [&](const IntPoly& g) {
    IntPoly h(g.size());
    Int sc = 1;
    for (std::size_t i = 0; i < g.size(); ++i) {
      h[i] = g[i] * sc;
      sc *= L;
    }
    return to_monic_q(h);
  };

  // Prime selection: the image of F mod q must remain squarefree.
  std::uint64_t q = 0;
  ZpPoly Fq;
  for (std::uint64_t cand : small_primes()) {
    if (cand == 2) continue;
    ZpPoly fq = ipoly_to_zp(F, cand);
    ZpPoly g = zp_gcd(fq, zp_derivative(fq, cand), cand);
    if (static_cast<int>(g.size()) - 1 == 0) {
      q = cand;
      Fq = fq;
      break;
    }
  }
  if (q == 0) throw std::logic_error("factor: no squarefree prime image found");

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::vector<ZpPoly> modular = zp_factor_squarefree(Fq, q, rng);
  if (modular.size() == 1) return {to_monic_q(S)};

  // Landau-Mignotte: coefficients of any monic factor of monic F are at most
  // 2^n * ||F||_2 in absolute value.
  Int norm2 = 0;
  for (const Int& c : F) norm2 += c * c;
  Int bound = (Int(1) << n) * (boost::multiprecision::sqrt(norm2) + 1);
  int e = 1;
  Int modulus = q;
  while (modulus <= 2 * bound) {
    modulus *= q;
    ++e;
  }

  std::vector<IntPoly> lifted =
      hensel_lift_list(ipoly_reduce(F, modulus), modular, q, e, modulus);

  std::vector<Polynomial> out;
  IntPoly rest = F;
  std::vector<std::size_t> alive(lifted.size());
  std::iota(alive.begin(), alive.end(), std::size_t{0});

  auto try_subset = [&](const std::vector<std::size_t>& subset) -> bool {
    IntPoly cand{1};
    for (std::size_t idx : subset)
      cand = ipoly_reduce(ipoly_mul(cand, lifted[idx]), modulus);
    cand = ipoly_symmetric(cand, modulus);
    if (!rest.empty() && rest.front() != 0 && !cand.empty() && cand.front() != 0 &&
        rest.front() % cand.front() != 0)
      return false;
    IntPoly quo;
    if (!ipoly_monic_trial_divide(rest, cand, quo)) return false;
    out.push_back(map_back(cand));
    rest = std::move(quo);
    std::vector<std::size_t> next;
    for (std::size_t idx : alive)
      if (std::find(subset.begin(), subset.end(), idx) == subset.end())
        next.push_back(idx);
    alive = std::move(next);
    return true;
  };

  std::size_t size = 1;
  while (!alive.empty() && 2 * size <= alive.size()) {
    std::vector<std::size_t> pick(size);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    bool found = false;
    do {
      std::vector<std::size_t> subset(size);
      for (std::size_t i = 0; i < size; ++i) subset[i] = alive[pick[i]];
      if (try_subset(subset)) {
        found = true;
        break;
      }
    } while (next_combination(pick, alive.size()));
    if (!found) ++size;
  }
  if (ipoly_degree(rest) >= 1) out.push_back(map_back(rest));
  return out;
}

// Yun's squarefree decomposition of a monic polynomial: f = prod a_i^i with
// the a_i squarefree, monic and pairwise coprime.
inline std::vector<std::pair<Polynomial, int>> yun_decomposition(const Polynomial& f) {
  std::vector<std::pair<Polynomial, int>> out;
  Polynomial df = derivative(f);
  Polynomial g = gcd(f, df);
  Polynomial c = f / g;
  Polynomial d = df / g - derivative(c);
  int i = 1;
  while (c.degree() > 0) {
    Polynomial a = gcd(c, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    c = c / a;
    d = (d - derivative(c) * a) / a;
    ++i;
  }
  return out;
}

} // namespace detail

/// Complete factorization into monic irreducibles over Q with multiplicities.
/// Deterministic factor ordering: (degree, coefficients low-to-high).
inline Factorization factor_over_Q(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("factor_over_Q: zero polynomial");
  Factorization result;
  result.unit = p.leading_coeff();
  if (p.degree() == 0) return result;
  Polynomial f = make_monic(p);

  for (const auto& [part, mult] : detail::yun_decomposition(f)) {
    // Clear denominators to a primitive integer polynomial.
    Int den_lcm = 1;
    for (const Rational& c : part.coeffs())
      den_lcm = boost::multiprecision::lcm(den_lcm, c.den());
    detail::IntPoly s(part.coeffs().size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = (Rational(den_lcm) * part.coeff(i)).num();
    Int content = detail::ipoly_content(s);
    if (content > 1)
      for (Int& c : s) c /= content;

    for (const Polynomial& irr : detail::factor_squarefree_integer(s))
      result.factors.emplace_back(irr, mult);
  }

  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return result;
}

/// True iff p is irreducible over Q. Requires deg(p) >= 1.
inline bool is_irreducible(const Polynomial& p) {
  if (p.degree() < 1) throw std::domain_error("is_irreducible: constant input");
  Factorization f = factor_over_Q(p);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

} // namespace pxa
