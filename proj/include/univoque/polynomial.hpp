#pragma once

/**
 * @file polynomial.hpp
 * @brief Exact integer and rational polynomials used to pin down algebraic bases.
 */

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace univoque {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline BigInt ceil(const Rational& x) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

inline BigInt floor(const Rational& x) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

inline std::strong_ordering three_way(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

inline std::string to_string(const Rational& x) {
  return x.get_den() == 1 ? x.get_num().get_str() : x.get_str();
}

/// Parses "p", "p/q" or a plain decimal "1.25" exactly.
inline bool parse_rational(const std::string& text, Rational& out) {
  if (text.empty()) return false;
  std::string s = text;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) return false;
  auto all_digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) return false;
    BigInt den(d);
    if (den == 0) return false;
    out = make_rational(BigInt(n), den);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp))) return false;
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    out = make_rational(BigInt(ip + fp), den);
  } else {
    if (!all_digits(s)) return false;
    out = Rational(BigInt(s));
  }
  if (negative) out = -out;
  return true;
}

/// Integer polynomial, coefficients c[0] + c[1] x + ..., no trailing zeros.
struct Polynomial {
  std::vector<BigInt> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<BigInt> c) : coeffs(std::move(c)) { trim(); }

  static Polynomial monomial(std::size_t degree, BigInt c = 1) {
    std::vector<BigInt> v(degree + 1, BigInt(0));
    v[degree] = std::move(c);
    return Polynomial(std::move(v));
  }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }
  bool is_zero() const noexcept { return coeffs.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  const BigInt& leading() const { return coeffs.back(); }
  bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }

  bool operator==(const Polynomial&) const = default;
};

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs.size(), b.coeffs.size()), BigInt(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
  return Polynomial(std::move(c));
}

inline Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs.size(), b.coeffs.size()), BigInt(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] -= b.coeffs[i];
  return Polynomial(std::move(c));
}

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs.size() + b.coeffs.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return Polynomial(std::move(c));
}

inline Polynomial shifted_up(const Polynomial& a, std::size_t k = 1) {
  if (a.is_zero()) return {};
  std::vector<BigInt> c(k, BigInt(0));
  c.insert(c.end(), a.coeffs.begin(), a.coeffs.end());
  return Polynomial(std::move(c));
}

inline Polynomial minus_constant(Polynomial a, const BigInt& t) {
  if (a.coeffs.empty()) a.coeffs.push_back(0);
  a.coeffs[0] -= t;
  a.trim();
  return a;
}

inline Polynomial derivative(const Polynomial& a) {
  if (a.coeffs.size() <= 1) return {};
  std::vector<BigInt> c(a.coeffs.size() - 1);
  for (std::size_t i = 1; i < a.coeffs.size(); ++i) c[i - 1] = a.coeffs[i] * static_cast<unsigned long>(i);
  return Polynomial(std::move(c));
}

inline BigInt content(const Polynomial& a) {
  BigInt g = 0;
  for (const auto& c : a.coeffs) g = gcd(g, c);
  return g;
}

/// Divides by the content and makes the leading coefficient positive.
inline Polynomial primitive_part(Polynomial a) {
  if (a.is_zero()) return a;
  BigInt g = content(a);
  if (a.leading() < 0) g = -g;
  for (auto& c : a.coeffs) c /= g;
  return a;
}

/// Remainder modulo a monic polynomial; stays in Z[x].
inline Polynomial reduce_mod_monic(Polynomial a, const Polynomial& monic) {
  const int d = monic.degree();
  for (int i = a.degree(); i >= d; --i) {
    BigInt lead = a.coeffs[static_cast<std::size_t>(i)];
    if (lead == 0) continue;
    for (int j = 0; j <= d; ++j)
      a.coeffs[static_cast<std::size_t>(i - d + j)] -= lead * monic.coeffs[static_cast<std::size_t>(j)];
  }
  a.trim();
  return a;
}

/// Sign of a(x) for rational x, via Σ c_i p^i q^{d-i}.
inline int sign_at(const Polynomial& a, const Rational& x) {
  if (a.is_zero()) return 0;
  const BigInt& p = x.get_num();
  const BigInt& q = x.get_den();
  BigInt acc = a.coeffs.back();
  BigInt qpow = 1;
  for (int i = a.degree() - 1; i >= 0; --i) {
    qpow *= q;
    acc = acc * p + a.coeffs[static_cast<std::size_t>(i)] * qpow;
  }
  return sgn(acc);
}

inline Rational evaluate(const Polynomial& a, const Rational& x) {
  Rational acc = 0;
  for (int i = a.degree(); i >= 0; --i) acc = acc * x + a.coeffs[static_cast<std::size_t>(i)];
  return acc;
}

/// Range enclosure of a on [lo, hi] with 0 < lo <= hi, splitting a = a⁺ − a⁻.
inline std::pair<Rational, Rational> enclose(const Polynomial& a, const Rational& lo,
                                             const Rational& hi) {
  Rational pos_lo = 0, pos_hi = 0, neg_lo = 0, neg_hi = 0;
  for (int i = a.degree(); i >= 0; --i) {
    const BigInt& c = a.coeffs[static_cast<std::size_t>(i)];
    pos_lo *= lo;
    pos_hi *= hi;
    neg_lo *= lo;
    neg_hi *= hi;
    if (c > 0) {
      pos_lo += c;
      pos_hi += c;
    } else if (c < 0) {
      neg_lo -= c;
      neg_hi -= c;
    }
  }
  return {pos_lo - neg_hi, pos_hi - neg_lo};
}

// ---------------------------------------------------------------- rational polynomials

namespace detail {

using QPoly = std::vector<Rational>;

inline void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline QPoly to_q(const Polynomial& a) { return QPoly(a.coeffs.begin(), a.coeffs.end()); }

inline Polynomial to_z(QPoly a) {
  trim(a);
  if (a.empty()) return {};
  BigInt l = 1;
  for (const auto& c : a) l = lcm(l, BigInt(c.get_den()));
  std::vector<BigInt> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational v = a[i] * l;
    out[i] = v.get_num();
  }
  return primitive_part(Polynomial(std::move(out)));
}

/// a mod b over Q; b nonzero.
inline QPoly rem(QPoly a, const QPoly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= f * b[j];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline QPoly quot(QPoly a, const QPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  QPoly q(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    a.pop_back();
    trim(a);
  }
  return q;
}

}  // namespace detail

/// Primitive gcd over Q[x].
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  Polynomial x = primitive_part(a), y = primitive_part(b);
  while (!y.is_zero()) {
    Polynomial r = detail::to_z(detail::rem(detail::to_q(x), detail::to_q(y)));
    x = std::move(y);
    y = std::move(r);
  }
  return primitive_part(x);
}

inline Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  return detail::to_z(detail::quot(detail::to_q(a), detail::to_q(b)));
}

inline Polynomial squarefree_part(const Polynomial& a) {
  Polynomial g = gcd(a, derivative(a));
  if (g.degree() <= 0) return primitive_part(a);
  return exact_quotient(a, g);
}

/// Number of distinct real roots of a in (lo, hi], by Sturm's theorem.
inline int count_roots(const Polynomial& a, const Rational& lo, const Rational& hi) {
  Polynomial f = squarefree_part(a);
  if (f.degree() <= 0) return 0;
  std::vector<detail::QPoly> chain{detail::to_q(f), detail::to_q(derivative(f))};
  while (true) {
    detail::QPoly r = detail::rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  auto variations = [&](const Rational& x) {
    int count = 0, last = 0;
    for (const auto& p : chain) {
      Rational v = 0;
      for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
      int s = sgn(v);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return variations(lo) - variations(hi);
}

}  // namespace univoque
