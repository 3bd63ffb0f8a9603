#pragma once

/**
 * @file bases.hpp
 * @brief Exact bases, quasi-greedy expansions α(q) and the inverse map α ↦ q.
 *
 * A base is either an exact rational or the unique real root of an integer
 * polynomial inside an isolating interval (low, high]. Digit decisions are
 * made by exact sign tests; nothing here rounds through floating point.
 */

#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>

#include "univoque/polynomial.hpp"
#include "univoque/words.hpp"

namespace univoque {

/// Closed rational interval [lo, hi].
struct RealApprox {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  double lo_double() const { return lo.get_d(); }
  double hi_double() const { return hi.get_d(); }
};

/// Bits of interval refinement spent on one undecided comparison before giving
/// up. UNIVOQUE_PRECISION_BITS overrides the default of 256.
inline unsigned precision_bits() {
  if (const char* env = std::getenv("UNIVOQUE_PRECISION_BITS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 16 && v <= 1u << 20) return static_cast<unsigned>(v);
  }
  return 256;
}

inline Rational pow2_inverse(unsigned bits) {
  BigInt den = 1;
  den <<= bits;
  return make_rational(1, den);
}

class Base {
 public:
  static Base rational(Rational q) {
    if (q <= 0) throw Error(ErrorKind::OutOfRange, "base must be positive");
    Base b;
    b.lo_ = q;
    b.hi_ = std::move(q);
    return b;
  }

  /// Root of f in (low, high]; the interval must isolate exactly one root.
  static Base algebraic(Polynomial f, Rational low, Rational high) {
    f = primitive_part(std::move(f));
    if (f.degree() < 1) throw Error(ErrorKind::OutOfRange, "polynomial must have a root");
    if (!(0 < low && low < high)) throw Error(ErrorKind::OutOfRange, "need 0 < low < high");
    if (count_roots(f, low, high) != 1)
      throw Error(ErrorKind::OutOfRange, "interval does not isolate exactly one root");
    Polynomial sqf = squarefree_part(f);
    return from_isolated(std::move(f), std::move(sqf), std::move(low), std::move(high));
  }

  /// Caller guarantees bisect has a single sign-changing root in (low, high].
  static Base from_isolated(Polynomial f, Polynomial bisect, Rational low, Rational high) {
    if (sign_at(bisect, high) == 0) return rational(std::move(high));
    Base b;
    b.poly_ = std::move(f);
    b.bisect_ = std::move(bisect);
    b.sign_lo_ = sign_at(b.bisect_, low);
    b.lo_ = std::move(low);
    b.hi_ = std::move(high);
    if (b.sign_lo_ == 0) throw Error(ErrorKind::OutOfRange, "low endpoint is a root");
    return b;
  }

  bool is_rational() const noexcept { return poly_.is_zero(); }
  const Rational& value() const {
    if (!is_rational()) throw Error(ErrorKind::OutOfRange, "base is not rational");
    return lo_;
  }
  /// Defining polynomial (content removed); empty for rational bases.
  const Polynomial& polynomial() const noexcept { return poly_; }
  /// Polynomial with a simple root at the base; used for bisection and tie tests.
  const Polynomial& root_polynomial() const noexcept { return bisect_; }
  const Rational& low() const noexcept { return lo_; }
  const Rational& high() const noexcept { return hi_; }
  RealApprox approx() const { return {lo_, hi_}; }

  /// One bisection of the isolating interval; may collapse to a rational.
  Base bisected() const {
    if (is_rational()) return *this;
    Rational mid = (lo_ + hi_) / 2;
    int s = sign_at(bisect_, mid);
    Base b = *this;
    if (s == 0) return rational(mid);
    if (s == sign_lo_) b.lo_ = std::move(mid);
    else b.hi_ = std::move(mid);
    return b;
  }

  Base refined(const Rational& max_width) const {
    Base b = *this;
    while (!b.is_rational() && b.hi_ - b.lo_ > max_width) b = b.bisected();
    return b;
  }

  Base refined_bits(unsigned bits) const { return refined(pow2_inverse(bits)); }

  double to_double() const {
    if (is_rational()) return lo_.get_d();
    Base b = refined_bits(80);
    return b.approx().midpoint().get_d();
  }

  /// Decimal with `digits` places, rounded from an enclosure 1000x narrower
  /// than the last place.
  std::string to_decimal(int digits) const {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Base b = refined(make_rational(1, scale * 1000));
    Rational x = b.approx().midpoint() * scale;
    BigInt n = floor(x + Rational(1, 2));
    std::string s = n.get_str();
    if (digits == 0) return s;
    if (s.size() <= static_cast<std::size_t>(digits))
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return s;
  }

 private:
  Base() = default;

  Polynomial poly_;
  Polynomial bisect_;
  int sign_lo_ = 0;
  Rational lo_;
  Rational hi_;
};

namespace detail {

/// True iff root_poly and g share the (unique) root of root_poly in (lo, hi].
inline bool shares_root(const Polynomial& root_poly, const Polynomial& g, const Rational& lo,
                        const Rational& hi) {
  Polynomial h = gcd(root_poly, g);
  if (h.degree() < 1) return false;
  int slo = sign_at(h, lo), shi = sign_at(h, hi);
  return shi == 0 || (slo != 0 && slo != shi);
}

}  // namespace detail

/// Sign of g at the base, via refinement and an exact common-root test.
inline int sign_at(const Polynomial& g, Base& q, unsigned budget_bits) {
  if (q.is_rational()) return sign_at(g, q.value());
  bool tie_checked = false;
  const Rational cap = (q.high() - q.low()) * pow2_inverse(budget_bits);
  const Rational tie_width = (q.high() - q.low()) * pow2_inverse(std::min(budget_bits, 48u));
  while (true) {
    if (q.is_rational()) return sign_at(g, q.value());
    auto [a, b] = enclose(g, q.low(), q.high());
    if (a > 0) return 1;
    if (b < 0) return -1;
    Rational width = q.high() - q.low();
    if (!tie_checked && width <= tie_width) {
      tie_checked = true;
      if (detail::shares_root(q.root_polynomial(), g, q.low(), q.high())) return 0;
    }
    if (width <= cap) {
      if (!tie_checked && detail::shares_root(q.root_polynomial(), g, q.low(), q.high())) return 0;
      throw Error(ErrorKind::PrecisionExhausted, "sign undecided within precision budget");
    }
    for (int i = 0; i < 4 && !q.is_rational(); ++i) q = q.bisected();
  }
}

inline std::strong_ordering compare(const Base& x, const Base& y) {
  if (x.is_rational() && y.is_rational()) return three_way(x.value(), y.value());
  if (!x.is_rational() && y.is_rational()) {
    Base copy = x;
    int s = sign_at(Polynomial({-y.value().get_num(), y.value().get_den()}), copy, 4096);
    return s > 0 ? std::strong_ordering::greater
                 : s < 0 ? std::strong_ordering::less : std::strong_ordering::equal;
  }
  if (x.is_rational()) return 0 <=> compare(y, x);
  Base a = x, b = y;
  for (int round = 0; round < 4096; ++round) {
    if (a.is_rational() || b.is_rational()) return compare(a, b);
    if (a.high() < b.low() || (a.high() == b.low())) return std::strong_ordering::less;
    if (b.high() < a.low() || (b.high() == a.low())) return std::strong_ordering::greater;
    if (round == 64) {
      Rational lo = std::max(a.low(), b.low()), hi = std::min(a.high(), b.high());
      if (detail::shares_root(a.root_polynomial(), b.root_polynomial(), lo, hi))
        return std::strong_ordering::equal;
    }
    if (a.high() - a.low() >= b.high() - b.low()) a = a.bisected();
    else b = b.bisected();
  }
  throw Error(ErrorKind::PrecisionExhausted, "could not separate bases");
}

inline bool operator==(const Base& x, const Base& y) { return compare(x, y) == 0; }
inline std::strong_ordering operator<=>(const Base& x, const Base& y) { return compare(x, y); }

inline std::strong_ordering compare(const Base& x, const Rational& y) {
  return compare(x, Base::rational(y));
}

inline bool operator==(const Base& x, const Rational& y) { return compare(x, y) == 0; }
inline std::strong_ordering operator<=>(const Base& x, const Rational& y) { return compare(x, y); }

inline std::ostream& operator<<(std::ostream& os, const Base& q) { return os << q.to_decimal(20); }

// ---------------------------------------------------------------- projection

namespace detail {

/// Σ x_i t^{-i} for an eventually periodic x and rational t > 1.
inline Rational project(const DigitSeq& x, const Rational& t) {
  Rational inv = 1 / t, value = 0, scale = 1;
  for (Digit d : x.preperiod()) {
    scale *= inv;
    value += scale * d;
  }
  Rational block = 0, s = 1;
  for (Digit d : x.period()) {
    s *= inv;
    block += s * d;
  }
  return value + scale * block / (1 - s);
}

inline Rational project(std::span<const Digit> w, const Rational& t) {
  Rational inv = 1 / t, value = 0, scale = 1;
  for (Digit d : w) {
    scale *= inv;
    value += scale * d;
  }
  return value;
}

}  // namespace detail

/// π_q(x) enclosed to the requested width; exact for rational q.
template <class Digits>
RealApprox project(const Digits& x, const Base& q, const Rational& width = pow2_inverse(100)) {
  if (q.is_rational()) {
    Rational v = detail::project(x, q.value());
    return {v, v};
  }
  Base b = q;
  while (true) {
    // π_q is decreasing in q for nonnegative digits.
    RealApprox r{detail::project(x, b.high()), detail::project(x, b.low())};
    if (r.width() <= width || b.is_rational()) {
      if (b.is_rational()) {
        Rational v = detail::project(x, b.value());
        return {v, v};
      }
      return r;
    }
    for (int i = 0; i < 8 && !b.is_rational(); ++i) b = b.bisected();
  }
}

// ---------------------------------------------------------------- admissibility

/// α is a quasi-greedy expansion of some base: not ending in 0^∞ and
/// σ^n α ⪯ α whenever α_n < M.
inline bool is_quasi_greedy_admissible(const DigitSeq& a, Alphabet alphabet) {
  validate(a, alphabet);
  if (a.ends_in(0)) return false;
  for (std::size_t n = 1; n <= a.orbit_size(); ++n) {
    if (a.at(n - 1) < alphabet.max_digit() && lex_cmp(a.shifted(n), a) > 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- α(q)

/// First n digits of the quasi-greedy expansion α(q) of 1.
///
/// Digit i is the largest d ≤ M with d < q·r_{i-1}, r_0 = 1, r_i = q·r_{i-1} − d.
/// For algebraic q the remainders are kept as integer polynomials in q, reduced
/// modulo the defining polynomial when it is monic; exact ties are detected by
/// a common-root test and reset the remainder to an integer.
inline Word quasi_greedy(const Base& q, Alphabet alphabet, std::size_t n,
                         unsigned budget = precision_bits()) {
  if (compare(q, Rational(1)) <= 0) throw Error(ErrorKind::OutOfRange, "base must exceed 1");
  const int M = alphabet.max_digit();
  Word out;
  out.reserve(n);
  if (q.is_rational()) {
    Rational r = 1;
    for (std::size_t i = 0; i < n; ++i) {
      Rational t = q.value() * r;
      BigInt c = ceil(t) - 1;
      Digit d = c > M ? M : static_cast<Digit>(c.get_si());
      out.push_back(d);
      r = t - d;
    }
    return out;
  }

  Base ref = q;
  const Polynomial& root_poly = q.root_polynomial();
  const bool reducible = root_poly.is_monic();
  Polynomial r({BigInt(1)});
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial p = shifted_up(r);
    if (reducible) p = reduce_mod_monic(std::move(p), root_poly);
    Digit d = 0;
    bool tie = false;
    while (true) {
      auto [a, b] = enclose(p, ref.low(), ref.high());
      if (ref.is_rational()) a = b = evaluate(p, ref.value());
      if (a > M) {
        d = M;
        break;
      }
      BigInt t = ceil(a);
      if (t > b) {
        d = static_cast<Digit>(t.get_si()) - 1;
        break;
      }
      if (b - a < 1) {
        int s = sign_at(minus_constant(p, t), ref, budget);
        d = static_cast<Digit>(t.get_si()) - (s > 0 ? 0 : 1);
        tie = s == 0;
        break;
      }
      for (int k = 0; k < 8 && !ref.is_rational(); ++k) ref = ref.bisected();
    }
    out.push_back(d);
    r = tie ? Polynomial({BigInt(1)}) : minus_constant(std::move(p), d);
  }
  return out;
}

// ---------------------------------------------------------------- α ↦ q

/// Integer polynomial whose root in (1, M+1] is the base with α(q) = u v^∞.
/// Clearing denominators of Σ a_i q^{-i} = 1 gives (q^m − 1)·U(q) − V(q) with
/// U(q) = q^p − Σ u_i q^{p−i} and V(q) = Σ v_j q^{m−j}.
inline Polynomial expansion_polynomial(const DigitSeq& a) {
  const std::size_t p = a.pre_length(), m = a.period_length();
  std::vector<BigInt> u(p + 1, BigInt(0)), v(m, BigInt(0));
  u[p] = 1;
  for (std::size_t i = 1; i <= p; ++i) u[p - i] -= a.preperiod()[i - 1];
  for (std::size_t j = 1; j <= m; ++j) v[m - j] += a.period()[j - 1];
  Polynomial cycle = Polynomial::monomial(m) - Polynomial({BigInt(1)});
  return primitive_part(cycle * Polynomial(std::move(u)) - Polynomial(std::move(v)));
}

namespace detail {

/// Dyadic interval (a, a + 2^-k] ⊂ (lo, hi] with 2^-k ≤ width on which f changes
/// sign away from sign_lo, found by Newton's method and confirmed exactly.
/// nullopt when the floating-point estimate cannot be confirmed.
inline std::optional<std::pair<Rational, Rational>> newton_isolate(const Polynomial& f, int sign_lo,
                                                                   const Rational& lo,
                                                                   const Rational& hi,
                                                                   const Rational& width) {
  unsigned k = 1;
  while (pow2_inverse(k) > width) ++k;
  auto eval_ld = [&](long double x) {
    long double acc = 0;
    for (int i = f.degree(); i >= 0; --i) acc = acc * x + f.coeffs[static_cast<std::size_t>(i)].get_d();
    return acc;
  };
  long double a = lo.get_d(), b = hi.get_d();
  for (int i = 0; i < 80; ++i) {
    long double mid = (a + b) / 2;
    long double v = eval_ld(mid);
    if (v == 0) break;
    ((v > 0) == (sign_lo > 0) ? a : b) = mid;
  }
  const mp_bitcnt_t prec = k + 64;
  mpf_class x(static_cast<double>((a + b) / 2), prec), fx(0, prec), dfx(0, prec), step(0, prec);
  const Polynomial df = derivative(f);
  for (int iter = 0; iter < 40; ++iter) {
    fx = 0;
    for (int i = f.degree(); i >= 0; --i) fx = fx * x + mpf_class(f.coeffs[static_cast<std::size_t>(i)], prec);
    dfx = 0;
    for (int i = df.degree(); i >= 0; --i) dfx = dfx * x + mpf_class(df.coeffs[static_cast<std::size_t>(i)], prec);
    if (dfx == 0) return std::nullopt;
    step = fx / dfx;
    x -= step;
    long exponent = 0;
    mpf_get_d_2exp(&exponent, step.get_mpf_t());
    if (step == 0 || exponent < -static_cast<long>(k) - 8) break;
  }
  // a = floor(x 2^k) / 2^k; truncation is floor since x > 0.
  mpf_class scaled(0, prec);
  mpf_mul_2exp(scaled.get_mpf_t(), x.get_mpf_t(), k);
  BigInt n;
  mpz_set_f(n.get_mpz_t(), scaled.get_mpf_t());
  BigInt den = 1;
  den <<= k;
  Rational left = make_rational(n, den), right = make_rational(n + 1, den);
  if (left <= lo || right > hi) return std::nullopt;
  if (sign_at(f, left) != sign_lo) return std::nullopt;
  if (sign_at(f, right) == sign_lo) return std::nullopt;
  return std::make_pair(std::move(left), std::move(right));
}

}  // namespace detail

/// The unique base q ∈ (1, M+1] with α(q) = a, isolated to the given width.
inline Base solve_base(const DigitSeq& a, Alphabet alphabet,
                       const Rational& width = pow2_inverse(110)) {
  if (!is_quasi_greedy_admissible(a, alphabet))
    throw Error(ErrorKind::NotAdmissible, format_seq(a, alphabet) + " is not a quasi-greedy expansion");
  Polynomial f = expansion_polynomial(a);
  // f is monic, so rational roots are integers.
  for (int r = 2; r <= alphabet.max_digit() + 1; ++r)
    if (sign_at(f, Rational(r)) == 0) return Base::rational(Rational(r));
  // f = −q^p (q^m − 1)(π_q(a) − 1) and π_q(a) is strictly decreasing, so the
  // root in (1, ∞) is simple and f itself can be bisected.
  const Rational lo(1), hi(alphabet.max_digit() + 1);
  const int sign_lo = sign_at(f, lo);
  if (auto iso = detail::newton_isolate(f, sign_lo, lo, hi, width)) {
    Polynomial bisect = f;
    return Base::from_isolated(std::move(f), std::move(bisect), iso->first, iso->second);
  }
  Polynomial bisect = f;
  return Base::from_isolated(std::move(f), std::move(bisect), lo, hi).refined(width);
}

}  // namespace univoque
