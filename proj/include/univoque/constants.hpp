#pragma once

/**
 * @file constants.hpp
 * @brief Distinguished bases: generalized golden ratio, the Thue–Morse type
 * sequence λ, the Komornik–Loreti constant and the ξ(n) ladder above it.
 *
 * Ordering for every M: q_G < q_NT < q_c < … < q_T(n+1) < q_T(n) < … < q_T(1) = q_T.
 */

#include <map>
#include <mutex>
#include <utility>

#include "univoque/bases.hpp"

namespace univoque {

/// λ_i (1-based): k + τ_i − τ_{i−1} for M = 2k, k + τ_i for M = 2k + 1.
inline Digit lambda_digit(Alphabet alphabet, std::uint64_t i) {
  const int k = alphabet.half();
  if (alphabet.even()) return k + thue_morse(i) - thue_morse(i - 1);
  return k + thue_morse(i);
}

/// λ_1 … λ_n, the first digits of α(q_c).
inline Word lambda_prefix(Alphabet alphabet, std::size_t n) {
  Word out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lambda_digit(alphabet, i + 1);
  return out;
}

/// Length of the λ-block that ξ(n) starts with: 2^{n−1} for even M, 2^n for odd M.
inline std::size_t xi_block_length(Alphabet alphabet, unsigned n) {
  return std::size_t{1} << (alphabet.even() ? n - 1 : n);
}

/// ξ(n) = B (overline(B)⁺)^∞ with B the leading λ-block; ξ(1) = α(q_T).
inline DigitSeq xi(Alphabet alphabet, unsigned n) {
  if (n < 1 || n > 24) throw Error(ErrorKind::OutOfRange, "xi level must be in 1..24");
  Word block = lambda_prefix(alphabet, xi_block_length(alphabet, n));
  Word tail = incremented(reflect(block, alphabet), alphabet);
  return DigitSeq(std::move(block), std::move(tail));
}

/// α(q_G): k^∞ for M = 2k, ((k+1)k)^∞ for M = 2k + 1.
inline DigitSeq golden_expansion(Alphabet alphabet) {
  const int k = alphabet.half();
  if (alphabet.even()) return DigitSeq::constant(k);
  return DigitSeq::periodic({k + 1, k});
}

/// α(q_NT): ((k+1)(k−1))^∞ for M = 2k, ((k+1)(k+1)kk)^∞ for M = 2k + 1.
inline DigitSeq nontransitive_expansion(Alphabet alphabet) {
  const int k = alphabet.half();
  if (alphabet.even()) return DigitSeq::periodic({k + 1, k - 1});
  return DigitSeq::periodic({k + 1, k + 1, k, k});
}

/// α(q_T) = ξ(1).
inline DigitSeq transitive_expansion(Alphabet alphabet) { return xi(alphabet, 1); }

/// (λ_1 … λ_{2^n}⁻)^∞: admissible, below λ, increasing to λ in n.
inline DigitSeq lambda_lower_approximant(Alphabet alphabet, unsigned n) {
  return DigitSeq::periodic(decremented(lambda_prefix(alphabet, std::size_t{1} << n)));
}

inline Base golden_base(Alphabet alphabet) { return solve_base(golden_expansion(alphabet), alphabet); }
inline Base nontransitive_base(Alphabet alphabet) {
  return solve_base(nontransitive_expansion(alphabet), alphabet);
}
inline Base transitive_base(Alphabet alphabet) {
  return solve_base(transitive_expansion(alphabet), alphabet);
}
inline Base xi_base(Alphabet alphabet, unsigned n) { return solve_base(xi(alphabet, n), alphabet); }

struct CriticalBracket {
  RealApprox bracket;  // q_c ∈ [lo, hi]
  unsigned level;      // λ-prefix length 2^level used on both sides
};

/// Encloses q_c between the base of (λ_1…λ_{2^n}⁻)^∞ and q_T(n'), where ξ(n')
/// starts with the same 2^n digits of λ. Doubles n until the width fits.
inline CriticalBracket critical_base_bracket(Alphabet alphabet,
                                             const Rational& max_width = make_rational(1, 1000000000)) {
  for (unsigned n = 2; n <= 16; ++n) {
    const unsigned upper_level = alphabet.even() ? n + 1 : n;
    Base lower = solve_base(lambda_lower_approximant(alphabet, n), alphabet, max_width / 16);
    Base upper = xi_base(alphabet, upper_level).refined(max_width / 16);
    RealApprox r{lower.approx().lo, upper.approx().hi};
    if (r.width() <= max_width) return {r, n};
  }
  throw Error(ErrorKind::PrecisionExhausted, "critical base bracket did not converge");
}

/// Content-addressed cache of the algebraic ladder q_T(n); entries never change.
class ConstantCatalog {
 public:
  const Base& xi_base(Alphabet alphabet, unsigned n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(alphabet.max_digit(), n);
    auto it = xi_.find(key);
    if (it == xi_.end()) it = xi_.emplace(key, univoque::xi_base(alphabet, n)).first;
    return it->second;
  }

  const CriticalBracket& critical(Alphabet alphabet) {
    std::lock_guard lock(mutex_);
    auto it = critical_.find(alphabet.max_digit());
    if (it == critical_.end())
      it = critical_.emplace(alphabet.max_digit(), critical_base_bracket(alphabet)).first;
    return it->second;
  }

  static ConstantCatalog& shared() {
    static ConstantCatalog catalog;
    return catalog;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, unsigned>, Base> xi_;
  std::map<int, CriticalBracket> critical_;
};

}  // namespace univoque
