#pragma once

/**
 * @file plateaus.hpp
 * @brief Entropy plateaus [p_L, p_R] generated by words a_1…a_m:
 * α(p_L) = (a_1…a_m)^∞ and α(p_R) = a_1…a_m⁺ (overline(a_1…a_m))^∞.
 */

#include <future>
#include <optional>
#include <string>
#include <variant>

#include "univoque/classify.hpp"
#include "univoque/subshift.hpp"

namespace univoque {

enum class PlateauKind { Irreducible, StarIrreducible };

inline const char* kind_name(PlateauKind k) {
  return k == PlateauKind::Irreducible ? "irreducible" : "star-irreducible";
}

struct PlateauInterval {
  Word generator;
  DigitSeq alpha_left;
  DigitSeq alpha_right;
  Base p_left;
  Base p_right;
  PlateauKind kind = PlateauKind::Irreducible;
  unsigned level = 0;     // n with p_L, p_R ∈ (q_T(n+1), q_T(n)); 0 for irreducible
  EntropyResult entropy;  // of V̂_{p_L}; constant on the plateau
};

/// Reason `a` fails to generate a plateau, or nullopt if it does.
/// On success `kind` and `level` are filled in.
inline std::optional<std::string> generator_failure(std::span<const Digit> a, Alphabet alphabet,
                                                    PlateauKind* kind = nullptr,
                                                    unsigned* level = nullptr) {
  const std::size_t m = a.size();
  if (m == 0) return "empty word";
  for (Digit d : a)
    if (!alphabet.contains(d)) return "digit outside alphabet";
  if (a.back() >= alphabet.max_digit()) return "last digit must be below M";
  for (std::size_t i = 1; i < m; ++i) {
    auto tail = a.subspan(i);
    auto head = a.first(m - i);
    if (word_cmp(tail, head) >= 0)
      return "a_{" + std::to_string(i + 1) + "}...a_m is not below a_1...a_{m-" + std::to_string(i) + "}";
    Word bar = reflect(head, alphabet);
    if (word_cmp(tail, bar) < 0)
      return "a_{" + std::to_string(i + 1) + "}...a_m is below the reflection of a_1...a_{m-" +
             std::to_string(i) + "}";
  }
  DigitSeq left = DigitSeq::periodic(Word(a.begin(), a.end()));
  if (left.period_length() != m) return "m is not the least period";
  if (!in_v_tilde(left, alphabet)) return "(a_1...a_m)^inf is not self-admissible";
  if (lex_cmp(left, transitive_expansion(alphabet)) > 0) {
    auto r = is_irreducible(left, alphabet);
    if (!r.irreducible) return "not irreducible (j = " + std::to_string(*r.witness) + ")";
    if (kind) *kind = PlateauKind::Irreducible;
    if (level) *level = 0;
    return std::nullopt;
  }
  try {
    auto r = is_star_irreducible(left, alphabet);
    if (!r.star_irreducible) return "not star-irreducible (j = " + std::to_string(*r.witness) + ")";
    if (kind) *kind = PlateauKind::StarIrreducible;
    if (level) *level = r.level;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInXiRange) throw;
    return "(a_1...a_m)^inf does not lie above lambda";
  }
  return std::nullopt;
}

/// The plateau generated by `a`; throws NotGenerating with the reason.
inline PlateauInterval make_interval(std::span<const Digit> a, Alphabet alphabet) {
  PlateauKind kind{};
  unsigned level = 0;
  if (auto why = generator_failure(a, alphabet, &kind, &level))
    throw Error(ErrorKind::NotGenerating, *why);
  Word generator(a.begin(), a.end());
  DigitSeq left = DigitSeq::periodic(generator);
  DigitSeq right(incremented(generator, alphabet), reflect(generator, alphabet));
  Base p_left = solve_base(left, alphabet);
  Base p_right = solve_base(right, alphabet);
  EntropyResult h = entropy(ShiftSpec::of_expansion(left, alphabet));
  return {std::move(generator), std::move(left), std::move(right), std::move(p_left), std::move(p_right),
          kind, level, h};
}

namespace detail {

/// Depth-first search over words whose prefixes keep every tail between the
/// matching head and its reflection.
inline void collect_generators(Word& w, Alphabet alphabet, std::size_t m_max, std::vector<Word>& out) {
  const std::size_t L = w.size();
  for (std::size_t i = 1; i < L; ++i) {
    std::span<const Digit> all(w);
    auto tail = all.subspan(i);
    auto head = all.first(L - i);
    if (word_cmp(tail, head) > 0) return;
    for (std::size_t j = 0; j < tail.size(); ++j) {
      Digit r = alphabet.reflect(head[j]);
      if (tail[j] != r) {
        if (tail[j] < r) return;
        break;
      }
    }
  }
  if (!generator_failure(w, alphabet)) out.push_back(w);
  if (L == m_max) return;
  for (Digit d = 0; d <= alphabet.max_digit(); ++d) {
    w.push_back(d);
    collect_generators(w, alphabet, m_max, out);
    w.pop_back();
  }
}

}  // namespace detail

/// Generators of length ≤ m_max in DFS order, without solving for the endpoints.
inline std::vector<Word> enumerate_generators(Alphabet alphabet, std::size_t m_max) {
  std::vector<Word> out;
  for (Digit first = 0; first <= alphabet.max_digit(); ++first) {
    Word w{first};
    detail::collect_generators(w, alphabet, m_max, out);
  }
  return out;
}

/// All plateaus with generator length ≤ m_max, sorted by p_L. Throws
/// std::logic_error if two of them overlap.
inline std::vector<PlateauInterval> enumerate_plateaus(Alphabet alphabet, std::size_t m_max) {
  if (m_max < 1) throw Error(ErrorKind::OutOfRange, "m_max must be at least 1");
  std::vector<std::future<std::vector<PlateauInterval>>> branches;
  for (Digit first = 0; first <= alphabet.max_digit(); ++first) {
    branches.push_back(std::async(std::launch::async, [=] {
      std::vector<Word> words;
      Word w{first};
      detail::collect_generators(w, alphabet, m_max, words);
      std::vector<PlateauInterval> out;
      out.reserve(words.size());
      for (const auto& g : words) out.push_back(make_interval(g, alphabet));
      return out;
    }));
  }
  std::vector<PlateauInterval> all;
  for (auto& b : branches) {
    auto part = b.get();
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(all.begin(), all.end(), [](const PlateauInterval& x, const PlateauInterval& y) {
    return lex_cmp(x.alpha_left, y.alpha_left) < 0;
  });
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (lex_cmp(all[i - 1].alpha_right, all[i].alpha_left) >= 0 || all[i - 1].p_right >= all[i].p_left)
      throw std::logic_error("plateaus " + format_word(all[i - 1].generator, alphabet) + " and " +
                             format_word(all[i].generator, alphabet) + " overlap");
  }
  return all;
}

// ---------------------------------------------------------------- locating

/// The plateau (1, q_c] on which H vanishes.
struct FirstPlateau {};
/// q ∈ ℰ as far as the examined digits of α(q) show.
struct Bifurcation {
  Certainty certainty = Certainty::PrefixCertified;
};

struct LocateResult {
  std::variant<Bifurcation, FirstPlateau, PlateauInterval> where;
  Word prefix;  // α(q) to the requested depth
  std::size_t m = 0;  // the index that produced the generator, 0 if none

  bool on_plateau() const { return std::holds_alternative<PlateauInterval>(where); }
  bool is_bifurcation() const { return std::holds_alternative<Bifurcation>(where); }
};

/// Plateau containing q: takes the least m with (α_1…α_m⁻)^∞ ∈ 𝒱̃ and
/// α(q) ⪯ α_1…α_m (overline(α_1…α_m)⁺)^∞, above the ξ-level threshold when
/// q < q_T. The containment p_L ≤ q ≤ p_R is confirmed exactly.
inline LocateResult locate_plateau(const Base& q, Alphabet alphabet, std::size_t depth = 64) {
  LocateResult out;
  const int M = alphabet.max_digit();
  if (q > Rational(M + 1) || q <= Rational(1)) throw Error(ErrorKind::OutOfRange, "q must lie in (1, M+1]");
  if (q == Rational(M + 1)) {
    out.where = Bifurcation{Certainty::Exact};
    out.prefix = Word(depth, M);
    return out;
  }
  auto& catalog = ConstantCatalog::shared();
  const RealApprox qc = catalog.critical(alphabet).bracket;
  if (compare(q, Base::rational(qc.lo)) <= 0) {
    out.where = FirstPlateau{};
    out.prefix = quasi_greedy(q, alphabet, depth);
    return out;
  }
  if (compare(q, Base::rational(qc.hi)) <= 0)
    throw Error(ErrorKind::PrecisionExhausted, "q is inside the bracket around q_c");

  out.prefix = quasi_greedy(q, alphabet, depth);
  const Word& a = out.prefix;
  std::size_t first_m = 1;
  if (q < catalog.xi_base(alphabet, 1)) {
    unsigned n = 1;
    while (q < catalog.xi_base(alphabet, n + 1)) {
      if (++n > 20) throw Error(ErrorKind::PrecisionExhausted, "q is too close to q_c");
    }
    first_m = (std::size_t{1} << (alphabet.even() ? n : n + 1)) + 1;
  }
  for (std::size_t m = first_m; 2 * m <= depth; ++m) {
    if (a[m - 1] == 0) continue;
    Word head(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(m));
    Word gen = decremented(head);
    if (!in_v_tilde(DigitSeq::periodic(gen), alphabet)) continue;
    DigitSeq cap(head, incremented(reflect(head, alphabet), alphabet));
    if (word_cmp(a, cap.prefix(depth)) > 0) continue;
    if (generator_failure(gen, alphabet)) continue;
    PlateauInterval p = make_interval(gen, alphabet);
    if (q >= p.p_left && q <= p.p_right) {
      out.m = m;
      out.where = std::move(p);
      return out;
    }
  }
  // Left endpoints are missed above: α(p_L) itself generates.
  if (auto exact = exact_expansion(q, alphabet, depth); exact && exact->is_purely_periodic()) {
    if (!generator_failure(exact->period(), alphabet)) {
      out.where = make_interval(exact->period(), alphabet);
      return out;
    }
  }
  out.where = Bifurcation{Certainty::PrefixCertified};
  return out;
}

// ---------------------------------------------------------------- bifurcation set

struct BifurcationApprox {
  int M = 1;
  std::size_t m_max = 0;
  std::vector<PlateauInterval> plateaus;
  std::vector<RealApprox> complement;  // closed intervals covering ℰ
  Rational covered_length;             // certified lower bound on Σ (p_R − p_L)

  Rational total_length() const {
    return Rational(M + 1) - (complement.empty() ? Rational(0) : complement.front().lo);
  }
};

/// Complement in [q_c, M+1] of the enumerated plateau interiors.
inline BifurcationApprox bifurcation_approx(Alphabet alphabet, std::size_t m_max) {
  BifurcationApprox out;
  out.M = alphabet.max_digit();
  out.m_max = m_max;
  out.plateaus = enumerate_plateaus(alphabet, m_max);
  const RealApprox qc = ConstantCatalog::shared().critical(alphabet).bracket;
  Rational cursor = qc.lo;
  out.covered_length = 0;
  for (const auto& p : out.plateaus) {
    const RealApprox l = p.p_left.approx(), r = p.p_right.approx();
    out.complement.push_back({cursor, l.hi});
    cursor = r.lo;
    if (r.lo > l.hi) out.covered_length += r.lo - l.hi;
  }
  out.complement.push_back({cursor, Rational(out.M + 1)});
  return out;
}

/// ln((M+1)^N − 2) / (N ln(M+1)), a lower bound for dim_H of ℰ.
struct EDimBound {
  BigInt numerator_argument;  // (M+1)^N − 2
  unsigned N = 0;
  int base = 2;  // M + 1
  double value = 0;
  double deficit = 0;  // 1 − value, kept separately so large N stays resolvable

  std::string symbolic() const {
    return "ln(" + numerator_argument.get_str() + ")/(" + std::to_string(N) + "*ln(" +
           std::to_string(base) + "))";
  }
};

inline EDimBound e_dim_lower_bound(Alphabet alphabet, unsigned N) {
  if (N < 2) throw Error(ErrorKind::OutOfRange, "N must be at least 2");
  EDimBound out;
  out.N = N;
  out.base = alphabet.size();
  BigInt power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(out.base), N);
  out.numerator_argument = power - 2;
  const double denominator = N * std::log(static_cast<double>(out.base));
  // Below 2^53 the argument converts exactly, so the log is correctly rounded.
  if (mpz_sizeinbase(out.numerator_argument.get_mpz_t(), 2) <= 53)
    out.value = std::log(out.numerator_argument.get_d()) / denominator;
  else
    out.value = (N * std::log(static_cast<double>(out.base)) + std::log1p(-2.0 / power.get_d())) / denominator;
  out.deficit = -std::log1p(-2.0 / power.get_d()) / denominator;
  return out;
}

}  // namespace univoque
