#pragma once

/**
 * @file dims.hpp
 * @brief dim_H 𝒰_q = h(Û_q)/ln q, and finite-scale box counts of 𝒲_q by the
 * cylinder covers of length M/(q^n (q−1)).
 */

#include <cmath>
#include <limits>

#include "univoque/staircase.hpp"

namespace univoque {

struct Interval {
  double lo = 0;
  double hi = 0;
  double mid() const { return (lo + hi) / 2; }
};

/// ln(q) enclosure; exact (lo == hi) for rational q.
inline Interval log_base(const Base& q) {
  if (q.is_rational()) {
    const Rational& v = q.value();
    double l = log_big(v.get_num()) - log_big(v.get_den());
    return {l, l};
  }
  Base fine = q.refined_bits(80);
  return {std::log(fine.low().get_d()), std::log(fine.high().get_d())};
}

/// dim_H 𝒰_q enclosure, clamped to [0, 1].
inline Interval dim_H_U(const Base& q, Alphabet alphabet, std::size_t n = 32,
                        std::span<const PlateauInterval> catalog = {}) {
  const int M = alphabet.max_digit();
  if (q == Rational(M + 1)) return {1, 1};
  EntropyResult h = entropy_brackets(q, alphabet, n, catalog);
  if (h.h_hi == 0) return {0, 0};
  Interval l = log_base(q);
  return {std::clamp(h.h_lo / l.hi, 0.0, 1.0), std::clamp(h.h_hi / l.lo, 0.0, 1.0)};
}

struct BoxEstimate {
  std::size_t n = 0;
  double delta = 0;     // δ_n = M / (q^n (q − 1))
  BigInt count_lo;      // bounds on #B_n(𝐖_q); equal when α(q) is exact
  BigInt count_hi;
  double ratio_lo = 0;  // ln #B_n / (−ln δ_n); NaN while δ_n ≥ 1
  double ratio_hi = 0;
  std::optional<BigInt> u_count;  // #B_n(Û_q) when α(q) is exact
};

struct DimResult {
  Base q;
  int M = 1;
  Interval dim_H;
  bool exact_expansion = false;
  std::vector<BoxEstimate> box;
};

/// Box-count diagnostics for n = 2 … n_max.
inline DimResult box_count_check(const Base& q, Alphabet alphabet, std::size_t n_max,
                                 std::span<const PlateauInterval> catalog = {}) {
  if (n_max < 2) throw Error(ErrorKind::OutOfRange, "n_max must be at least 2");
  const int M = alphabet.max_digit();
  DimResult out{q, M, dim_H_U(q, alphabet, std::max<std::size_t>(n_max, 32), catalog), false, {}};

  // Automata for 𝐖 bounded below and above, plus Û when α(q) is exact.
  std::optional<DigitSeq> alpha;
  if (q == Rational(M + 1)) alpha = DigitSeq::constant(M);
  else alpha = exact_expansion(q, alphabet, std::max<std::size_t>(64, 4 * n_max));
  auto build = [&](const DigitSeq& upper, ShiftMode mode) -> std::optional<MatchAutomaton> {
    try {
      return MatchAutomaton::build(ShiftSpec::of_expansion(upper, alphabet, mode));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BoundsInverted) throw;
      return std::nullopt;
    }
  };
  std::optional<MatchAutomaton> w_lo, w_hi, u_exact;
  if (alpha) {
    out.exact_expansion = true;
    w_lo = build(*alpha, ShiftMode::W);
    u_exact = build(*alpha, ShiftMode::U);
  } else {
    Word a = quasi_greedy(q, alphabet, n_max + 16);
    w_lo = build(DigitSeq(a, {0}), ShiftMode::W);
    w_hi = build(DigitSeq(a, {M}), ShiftMode::W);
  }
  auto count = [](const std::optional<MatchAutomaton>& a, std::size_t n) {
    return a ? count_words(*a, n) : BigInt(0);
  };

  // −ln δ_n = ln(q^n (q−1) / M), exact before the logarithm when q is rational.
  auto scale = [&](std::size_t n) -> double {
    if (q.is_rational()) {
      Rational x = q.value() - 1;
      Rational qn;
      mpz_pow_ui(qn.get_num_mpz_t(), q.value().get_num_mpz_t(), n);
      mpz_pow_ui(qn.get_den_mpz_t(), q.value().get_den_mpz_t(), n);
      x = x * qn / M;
      x.canonicalize();
      return log_big(x.get_num()) - log_big(x.get_den());
    }
    Interval l = log_base(q);
    return static_cast<double>(n) * l.mid() + std::log(q.to_double() - 1) - std::log(static_cast<double>(M));
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t n = 2; n <= n_max; ++n) {
    BoxEstimate e;
    e.n = n;
    const double s = scale(n);
    e.delta = std::exp(-s);
    e.count_lo = count(w_lo, n);
    e.count_hi = alpha ? e.count_lo : count(w_hi, n);
    e.ratio_lo = s > 0 ? log_big(e.count_lo) / s : nan;
    e.ratio_hi = s > 0 ? log_big(e.count_hi) / s : nan;
    if (u_exact) e.u_count = count_words(*u_exact, n);
    out.box.push_back(std::move(e));
  }
  return out;
}

}  // namespace univoque
