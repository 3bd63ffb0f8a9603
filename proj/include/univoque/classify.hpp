#pragma once

/**
 * @file classify.hpp
 * @brief Membership of sequences and bases in 𝒱̃, 𝒱, closure(𝒰), 𝒰; primitive
 * words, the reflection recurrence, irreducibility and *-irreducibility.
 */

#include <optional>

#include "univoque/constants.hpp"

namespace univoque {

/// overline(a) ⪯ σ^n(a) ⪯ a for all n ≥ 0.
inline bool in_v_tilde(const DigitSeq& a, Alphabet alphabet) {
  const DigitSeq bar = reflect(a, alphabet);
  for (std::size_t n = 0; n < a.orbit_size(); ++n) {
    DigitSeq s = a.shifted(n);
    if (lex_cmp(s, a) > 0 || lex_cmp(s, bar) < 0) return false;
  }
  return true;
}

struct SequenceClass {
  bool in_v = false;          // overline(α) ⪯ σ^n α ⪯ α, n ≥ 0
  bool in_u_closure = false;  // overline(α) ≺ σ^n α ⪯ α, n ≥ 0
  bool in_u = false;          // overline(α) ≺ σ^n α ≺ α, n ≥ 1, or α = M^∞
};

/// Classes of the base whose quasi-greedy expansion is α.
inline SequenceClass classify_expansion(const DigitSeq& alpha, Alphabet alphabet) {
  SequenceClass out;
  const DigitSeq bar = reflect(alpha, alphabet);
  out.in_v = in_v_tilde(alpha, alphabet);
  bool closure = true, strict = true;
  for (std::size_t n = 0; n < alpha.orbit_size(); ++n) {
    DigitSeq s = alpha.shifted(n);
    auto up = lex_cmp(s, alpha);
    auto down = lex_cmp(s, bar);
    if (up > 0 || down <= 0) closure = false;
    if (n >= 1 && (up >= 0 || down <= 0)) strict = false;
  }
  // Shifts at n ≥ orbit_size repeat earlier ones, so n = 0 is revisited at
  // n = period when α is purely periodic.
  if (alpha.is_purely_periodic()) strict = false;
  out.in_u_closure = closure;
  out.in_u = strict || (alpha.is_purely_periodic() && alpha.ends_in(alphabet.max_digit()));
  return out;
}

// ---------------------------------------------------------------- words

/// overline(a_1…a_{m−i}) ≺ a_{i+1}…a_m ⪯ a_1…a_{m−i} for all 0 ≤ i < m.
inline bool is_primitive(std::span<const Digit> a, Alphabet alphabet) {
  const std::size_t m = a.size();
  if (m == 0) return false;
  for (std::size_t i = 0; i < m; ++i) {
    auto tail = a.subspan(i);
    auto head = a.first(m - i);
    if (word_cmp(tail, head) > 0) return false;
    for (std::size_t j = 0; j < tail.size(); ++j) {
      Digit r = alphabet.reflect(head[j]);
      if (tail[j] != r) {
        if (tail[j] < r) return false;
        break;
      }
      if (j + 1 == tail.size()) return false;
    }
  }
  return true;
}

/// ℜ(a) = a_1…a_s for the least s with a_{s+1}…a_m⁻ = overline(a_1…a_{m−s});
/// a itself when no such s exists.
inline Word reflection_recurrence(std::span<const Digit> a, Alphabet alphabet) {
  if (!is_primitive(a, alphabet)) throw Error(ErrorKind::NotPrimitive, "word is not primitive");
  const std::size_t m = a.size();
  for (std::size_t s = 0; s < m; ++s) {
    bool match = true;
    for (std::size_t j = 0; j < m - s && match; ++j) {
      Digit d = a[s + j] - (s + j + 1 == m ? 1 : 0);
      match = d == alphabet.reflect(a[j]);
    }
    if (match) return Word(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(s));
  }
  return Word(a.begin(), a.end());
}

/// a, ℜ(a), ℜ²(a), … until a fixpoint or the empty word. Every member
/// but a trailing ε is primitive, so the recurrence stays defined.
inline std::vector<Word> reflection_chain(std::span<const Digit> a, Alphabet alphabet) {
  std::vector<Word> chain{Word(a.begin(), a.end())};
  while (!chain.back().empty()) {
    Word next = reflection_recurrence(chain.back(), alphabet);
    if (next == chain.back()) break;
    chain.push_back(std::move(next));
  }
  return chain;
}

// ---------------------------------------------------------------- irreducibility

/// Default search bound for the j-quantified conditions.
inline std::size_t default_j_bound(const DigitSeq& a) { return 4 * a.orbit_size(); }

struct IrreducibleResult {
  bool irreducible = false;
  std::optional<std::size_t> witness;  // failing j
};

namespace detail {

/// Condition at j: (a_1…a_j⁻)^∞ ∈ 𝒱̃ implies a_1…a_j (overline(a_1…a_j)⁺)^∞ ≺ a.
inline bool irreducible_condition_holds(const DigitSeq& a, std::size_t j, Alphabet alphabet) {
  Word head = a.prefix(j);
  if (head.back() == 0) return true;
  if (!in_v_tilde(DigitSeq::periodic(decremented(head)), alphabet)) return true;
  DigitSeq bound(head, incremented(reflect(head, alphabet), alphabet));
  return lex_cmp(bound, a) < 0;
}

}  // namespace detail

/// Checks the irreducibility condition for j = 1 … j_max (default 4·(p+m)).
inline IrreducibleResult is_irreducible(const DigitSeq& a, Alphabet alphabet,
                                        std::optional<std::size_t> j_max = std::nullopt) {
  if (!in_v_tilde(a, alphabet)) return {false, std::nullopt};
  const std::size_t bound = j_max.value_or(default_j_bound(a));
  for (std::size_t j = 1; j <= bound; ++j)
    if (!detail::irreducible_condition_holds(a, j, alphabet)) return {false, j};
  return {true, std::nullopt};
}

/// Index (0-based) of the first digit where a and λ differ.
inline std::size_t first_difference_with_lambda(const DigitSeq& a, Alphabet alphabet,
                                                std::size_t limit = std::size_t{1} << 22) {
  for (std::size_t i = 0; i < limit; ++i)
    if (a.at(i) != lambda_digit(alphabet, i + 1)) return i;
  throw Error(ErrorKind::PrecisionExhausted, "sequence agrees with lambda on a long prefix");
}

/// Level n with ξ(n+1) ⪯ a ≺ ξ(n); throws NotInXiRange outside [λ, ξ(1)).
inline unsigned xi_level(const DigitSeq& a, Alphabet alphabet) {
  if (lex_cmp(a, xi(alphabet, 1)) >= 0)
    throw Error(ErrorKind::NotInXiRange, "sequence is not below xi(1)");
  const std::size_t d = first_difference_with_lambda(a, alphabet);
  if (a.at(d) < lambda_digit(alphabet, d + 1))
    throw Error(ErrorKind::NotInXiRange, "sequence is below lambda");
  // Once ξ(n+1) shares the first d+1 digits with λ it lies below a.
  for (unsigned n = 1; n < 24; ++n)
    if (lex_cmp(xi(alphabet, n + 1), a) <= 0) return n;
  throw Error(ErrorKind::PrecisionExhausted, "sequence agrees with lambda beyond the xi ladder");
}

struct StarResult {
  bool star_irreducible = false;
  unsigned level = 0;
  std::optional<std::size_t> witness;
};

/// *-irreducibility at the bracketing level n: the irreducibility condition for
/// j > 2^n (M even) or j > 2^{n+1} (M odd), checked up to threshold + 4·(p+m).
inline StarResult is_star_irreducible(const DigitSeq& a, Alphabet alphabet,
                                      std::optional<std::size_t> j_max = std::nullopt) {
  const unsigned n = xi_level(a, alphabet);
  StarResult out;
  out.level = n;
  if (!in_v_tilde(a, alphabet)) return out;
  const std::size_t threshold = std::size_t{1} << (alphabet.even() ? n : n + 1);
  const std::size_t bound = j_max.value_or(threshold + default_j_bound(a));
  for (std::size_t j = threshold + 1; j <= bound; ++j) {
    if (!detail::irreducible_condition_holds(a, j, alphabet)) {
      out.witness = j;
      return out;
    }
  }
  out.star_irreducible = true;
  return out;
}

// ---------------------------------------------------------------- bases

enum class Certainty { Exact, PrefixCertified };

inline const char* certainty_name(Certainty c) {
  return c == Certainty::Exact ? "exact" : "prefix-certified";
}

/// Every u v^∞ reproducing `prefix` with at least two full periods seen,
/// shortest orbit first.
inline std::vector<DigitSeq> period_candidates(std::span<const Digit> prefix) {
  const std::size_t n = prefix.size();
  std::vector<DigitSeq> out;
  for (std::size_t total = 1; total <= n / 2; ++total) {
    for (std::size_t m = 1; m <= total; ++m) {
      const std::size_t p = total - m;
      if (p + 2 * m > n) continue;
      bool ok = true;
      for (std::size_t i = p + m; i < n && ok; ++i) ok = prefix[i] == prefix[i - m];
      if (!ok) continue;
      DigitSeq c(Word(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(p)),
                 Word(prefix.begin() + static_cast<std::ptrdiff_t>(p),
                      prefix.begin() + static_cast<std::ptrdiff_t>(p + m)));
      // Non-canonical spellings of a shorter candidate were already seen.
      if (c.orbit_size() == total) out.push_back(std::move(c));
    }
  }
  return out;
}

/// α(q) as an exact eventually periodic sequence when the first `depth` digits
/// suggest one and the candidate's base provably equals q.
inline std::optional<DigitSeq> exact_expansion(const Base& q, Alphabet alphabet,
                                               std::size_t depth = 64) {
  Word prefix = quasi_greedy(q, alphabet, depth);
  for (const DigitSeq& candidate : period_candidates(prefix)) {
    if (!is_quasi_greedy_admissible(candidate, alphabet)) continue;
    // The root of the expansion polynomial in (1, M+1] is unique.
    Base copy = q;
    if (sign_at(expansion_polynomial(candidate), copy, 4096) == 0) return candidate;
  }
  return std::nullopt;
}

struct BaseClass {
  SequenceClass membership;
  Certainty certainty = Certainty::PrefixCertified;
  Word prefix;
  std::optional<DigitSeq> expansion;
};

/// Classifies q through α(q): exactly if α(q) is recognized as eventually
/// periodic, otherwise from the violations visible in the first `depth` digits.
inline BaseClass base_class(const Base& q, Alphabet alphabet, std::size_t depth = 64) {
  BaseClass out;
  out.prefix = quasi_greedy(q, alphabet, depth);
  if (auto exact = exact_expansion(q, alphabet, depth)) {
    out.expansion = exact;
    out.membership = classify_expansion(*exact, alphabet);
    out.certainty = Certainty::Exact;
    return out;
  }
  // Only strict violations decided inside the prefix are conclusive.
  const Word& a = out.prefix;
  const Word bar = reflect(a, alphabet);
  bool v = true, closure = true, strict = true;
  for (std::size_t n = 0; n < a.size(); ++n) {
    std::span<const Digit> tail(a.data() + n, a.size() - n);
    std::span<const Digit> head(a.data(), a.size() - n);
    std::span<const Digit> bar_head(bar.data(), a.size() - n);
    auto up = word_cmp(tail, head);
    auto down = word_cmp(tail, bar_head);
    if (up > 0 || down < 0) v = closure = strict = false;
  }
  out.membership = {v, closure, strict};
  out.certainty = Certainty::PrefixCertified;
  return out;
}

}  // namespace univoque
