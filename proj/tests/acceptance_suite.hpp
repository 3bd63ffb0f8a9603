#pragma once

// The acceptance criteria, shared by the acceptance binary and `univoque verify`.
// Each check returns a verdict and a one-line detail; the runner adds timing and
// fails a criterion that overruns its time budget.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "univoque/dims.hpp"

namespace univoque::acceptance {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;  // 0 for no limit
  std::function<Verdict()> run;
};

struct Outcome {
  int id;
  std::string title;
  bool pass;
  double seconds;
  std::string detail;
};

namespace detail {

inline std::string fmt(double x, int digits = 12) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

/// Collects the first failure and counts checks.
struct Tally {
  std::size_t checks = 0;
  std::string first_failure;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok && first_failure.empty()) first_failure = what();
  }
  Verdict verdict(const std::string& summary) const {
    if (first_failure.empty()) return {true, summary + " (" + std::to_string(checks) + " checks)"};
    return {false, first_failure};
  }
};

inline double ln_golden() { return std::log((1 + std::sqrt(5.0)) / 2); }

inline Verdict constants_m8() {
  Tally t;
  Alphabet A(8);
  Base qg = golden_base(A);
  t.expect(qg == Rational(5), [&] { return "q_G = " + qg.to_decimal(12) + ", expected 5"; });

  Base qt = transitive_base(A);
  Polynomial f(std::vector<BigInt>{BigInt(1), BigInt(-6), BigInt(1)});
  t.expect(sign_at(f, qt, 4096) == 0, [] { return "q_T is not a root of q^2 - 6q + 1"; });
  t.expect(qt > Rational(5) && qt <= Rational(6), [] { return "q_T outside (5, 6]"; });
  t.expect(std::abs(qt.to_double() - 5.82842712) < 1e-5, [&] { return "q_T = " + qt.to_decimal(12); });

  RealApprox qc = ConstantCatalog::shared().critical(A).bracket;
  t.expect(qc.width() <= make_rational(1, 100000), [&] { return "q_c bracket width " + fmt(qc.width().get_d()); });
  // 5.80676 is q_c rounded to five decimals: the bracket must round to it.
  t.expect(qc.lo >= make_rational(5806755, 1000000) && qc.hi < make_rational(5806765, 1000000),
           [&] { return "q_c bracket [" + fmt(qc.lo_double()) + ", " + fmt(qc.hi_double()) + "] does not round to 5.80676"; });
  return t.verdict("q_G = 5, q_T = " + qt.to_decimal(10) + ", q_c in [" + fmt(qc.lo_double(), 9) + ", " +
                   fmt(qc.hi_double(), 9) + "]");
}

inline Verdict thue_morse_doubling() {
  Tally t;
  Alphabet A8(8);
  std::string l12 = format_word(lambda_prefix(A8, 12), A8);
  t.expect(l12 == "543534543453", [&] { return "lambda(8, 12) = " + l12; });
  for (int M = 1; M <= 6; ++M) {
    Alphabet A(M);
    Word full = lambda_prefix(A, 256);
    for (std::size_t len = 1; 2 * len <= 256; len *= 2) {
      Word block(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(len));
      Word doubled = concat(block, incremented(reflect(block, A), A));
      Word actual(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(2 * len));
      t.expect(doubled == actual, [&] { return "doubling fails for M=" + std::to_string(M) + " at length " +
                                               std::to_string(2 * len); });
    }
  }
  return t.verdict("lambda(8,12) = " + l12 + ", doubling to 256 for M = 1..6");
}

inline Verdict reflection_recurrence_suite() {
  Tally t;
  Alphabet A1(1);
  std::vector<Word> chain = reflection_chain(parse_word("111001000111", A1), A1);
  std::string shown;
  for (std::size_t i = 0; i < chain.size(); ++i) shown += (i ? "," : "") + (chain[i].empty() ? std::string("ε") : format_word(chain[i], A1));
  t.expect(shown == "111001000111,111001,111,11,1,ε", [&] { return "chain " + shown; });

  std::size_t primitives = 0;
  for (int M = 1; M <= 2; ++M) {
    Alphabet A(M);
    Word w;
    // A primitive word keeps a_{i+1}… ⪯ a_1… on every prefix, which prunes the search.
    auto visit = [&](auto& self) -> void {
      const std::size_t L = w.size();
      for (std::size_t i = 1; i < L; ++i)
        if (word_cmp(std::span<const Digit>(w).subspan(i), std::span<const Digit>(w).first(L - i)) > 0) return;
      if (L >= 1 && is_primitive(w, A)) {
        ++primitives;
        if (L >= 2) {
          Word r = reflection_recurrence(w, A);
          t.expect(2 * r.size() >= L && r.size() <= L,
                   [&] { return "|R(a)| out of range for " + format_word(w, A); });
          t.expect(is_primitive(r, A), [&] { return "R(a) not primitive for " + format_word(w, A); });
        }
      }
      if (L == 14) return;
      for (Digit d = 0; d <= M; ++d) {
        w.push_back(d);
        self(self);
        w.pop_back();
      }
    };
    visit(visit);
  }
  return t.verdict("example chain reproduced; " + std::to_string(primitives) + " primitive words checked");
}

inline Verdict transitive_entropies() {
  Tally t;
  for (int M = 1; M <= 8; ++M) {
    Alphabet A(M);
    EntropyResult h = entropy(ShiftSpec::of_expansion(transitive_expansion(A), A));
    double expected = std::log(2.0) / std::log(M + 1.0) / (A.even() ? 1 : 2);
    t.expect(std::abs(h.norm_mid() - expected) <= 1e-9,
             [&] { return "H(q_T), M=" + std::to_string(M) + ": " + fmt(h.norm_mid()) + " vs " + fmt(expected); });
  }
  for (int M = 2; M <= 8; M += 2) {
    Alphabet A(M);
    for (unsigned n = 1; n <= 5; ++n) {
      EntropyResult h = entropy(ShiftSpec::of_expansion(xi(A, n), A));
      double expected = std::ldexp(std::log(2.0) / std::log(M + 1.0), 1 - static_cast<int>(n));
      t.expect(std::abs(h.norm_mid() - expected) <= 1e-9, [&] {
        return "H(q_T(" + std::to_string(n) + ")), M=" + std::to_string(M) + ": " + fmt(h.norm_mid()) + " vs " +
               fmt(expected);
      });
    }
  }
  return t.verdict("H(q_T) for M = 1..8, H(q_T(n)) for even M, n <= 5");
}

inline Verdict plateau_suite_m8() {
  Tally t;
  Alphabet A(8);
  const double ln9 = std::log(9.0);
  auto check = [&](const std::string& gen, double expected) {
    PlateauInterval p = make_interval(parse_word(gen, A), A);
    t.expect(std::abs(p.entropy.norm_mid() - expected) <= 1e-9,
             [&] { return "H on I(" + gen + ") = " + fmt(p.entropy.norm_mid()) + " vs " + fmt(expected); });
  };
  PlateauInterval star = make_interval(parse_word("543", A), A);
  t.expect(star.kind == PlateauKind::StarIrreducible, [] { return "543 is not star-irreducible"; });
  check("543", ln_golden() / ln9);
  for (int a = 5; a <= 7; ++a) check(std::to_string(a), std::log(2.0 * a - 7) / ln9);
  // "8" ends in M and generates nothing; I(8) degenerates to α = 8^∞, the full shift.
  EntropyResult full = entropy(ShiftSpec::of_expansion(DigitSeq::constant(8), A));
  t.expect(std::abs(full.norm_mid() - 1) <= 1e-9, [&] { return "H(8^inf) = " + fmt(full.norm_mid()); });
  for (int ab : {54, 63, 64, 65, 72, 73, 74, 75, 76, 81, 82, 83, 84, 85, 86, 87}) {
    const double a = ab / 10, b = ab % 10;
    check(std::to_string(ab), std::log(a - 4 + std::sqrt((a - 4) * (a - 4) + 2 * b - 7)) / ln9);
  }
  return t.verdict("I*(543), I(5..7), 8^inf and 16 two-digit plateaus");
}

inline Verdict transitivity_classification() {
  Tally t;
  std::size_t irreducible = 0, star = 0, samples = 0;
  for (int M : {1, 2, 3, 8}) {
    Alphabet A(M);
    for (const Word& g : enumerate_generators(A, 6)) {
      PlateauKind kind{};
      unsigned level = 0;
      generator_failure(g, A, &kind, &level);
      MatchAutomaton a = MatchAutomaton::build(ShiftSpec::of_expansion(DigitSeq::periodic(g), A));
      const bool expected = kind == PlateauKind::Irreducible;
      (expected ? irreducible : star)++;
      t.expect(is_transitive(a) == expected, [&] {
        return "M=" + std::to_string(M) + " generator " + format_word(g, A) + ": is_transitive = " +
               (expected ? "false" : "true");
      });
    }
    const DigitSeq lo = nontransitive_expansion(A), hi = transitive_expansion(A);
    for (const DigitSeq& alpha : oracle::admissible_sequences(A, M == 8 ? 4 : 8)) {
      if (!alpha.is_purely_periodic() || lex_cmp(alpha, lo) < 0 || lex_cmp(alpha, hi) >= 0) continue;
      ++samples;
      MatchAutomaton a = MatchAutomaton::build(ShiftSpec::of_expansion(alpha, A));
      t.expect(!is_transitive(a), [&] { return "M=" + std::to_string(M) + " alpha " + format_seq(alpha, A) +
                                               " in [q_NT, q_T) is transitive"; });
    }
  }
  return t.verdict(std::to_string(irreducible) + " irreducible, " + std::to_string(star) + " star-irreducible, " +
                   std::to_string(samples) + " samples in [q_NT, q_T)");
}

inline Verdict oracle_equivalence() {
  Tally t;
  std::size_t bases = 0, skipped = 0;
  auto compare_counts = [&](const DigitSeq& alpha, Alphabet A, std::size_t n) {
    ++bases;
    for (ShiftMode mode : {ShiftMode::V, ShiftMode::W, ShiftMode::U}) {
      ShiftSpec spec = ShiftSpec::of_expansion(alpha, A, mode);
      if (lex_cmp(spec.upper, spec.lower) < 0) {
        // Outside the automaton's precondition upper ⪰ lower. V and W are then
        // empty; U keeps the constant sequences.
        ++skipped;
        if (mode != ShiftMode::U)
          t.expect(oracle::count_words(spec, 4)[1] == 0,
                   [&] { return "inverted bounds but nonempty " + std::string(mode_name(mode)) + " for " + format_seq(alpha, A); });
        continue;
      }
      MatchAutomaton a = MatchAutomaton::build(spec);
      std::vector<BigInt> brute = oracle::count_words(spec, n);
      for (std::size_t k = 0; k <= n; ++k) {
        BigInt c = count_words(a, k);
        t.expect(c == brute[k], [&] {
          return "M=" + std::to_string(A.max_digit()) + " alpha " + format_seq(alpha, A) + " mode " + mode_name(mode) +
                 " n=" + std::to_string(k) + ": automaton " + c.get_str() + ", brute force " + brute[k].get_str();
        });
      }
    }
  };
  for (int M = 1; M <= 2; ++M) {
    Alphabet A(M);
    for (const DigitSeq& alpha : oracle::admissible_sequences(A, 6)) compare_counts(alpha, A, 10);
  }
  Alphabet A8(8);
  for (const char* s : {"(5)", "(543)", "(54)", "5(4)", "(5443)", "55(3)", "(551)"})
    compare_counts(parse_seq(s, A8), A8, 10);
  return t.verdict(std::to_string(bases) + " bases, n <= 10, " + std::to_string(skipped) +
                   " inverted-bound specs skipped");
}

inline Verdict plateau_structure() {
  Tally t;
  Alphabet A(2);
  std::vector<PlateauInterval> all = enumerate_plateaus(A, 10);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const PlateauInterval& p = all[i];
    const std::string g = format_word(p.generator, A);
    if (i + 1 < all.size())
      t.expect(p.p_right < all[i + 1].p_left, [&] { return "I(" + g + ") meets its successor"; });
    SequenceClass left = classify_expansion(p.alpha_left, A), right = classify_expansion(p.alpha_right, A);
    t.expect(left.in_u_closure && !left.in_u, [&] { return "p_L of I(" + g + ") not in closure(U) minus U"; });
    t.expect(right.in_u, [&] { return "p_R of I(" + g + ") not in U"; });
    EntropyResult hr = entropy(ShiftSpec::of_expansion(p.alpha_right, A));
    t.expect(p.entropy.norm_hi - p.entropy.norm_lo <= 1e-6 && std::abs(hr.norm_mid() - p.entropy.norm_mid()) <= 1e-6,
             [&] { return "entropy not constant on I(" + g + ")"; });
    if (i + 1 < all.size())
      t.expect(all[i + 1].entropy.norm_mid() > p.entropy.norm_mid(),
               [&] { return "entropy does not increase from I(" + g + ")"; });
  }
  return t.verdict(std::to_string(all.size()) + " plateaus");
}

inline Verdict dimension_formula() {
  Tally t;
  for (int M : {1, 2, 8}) {
    Alphabet A(M);
    Interval top = dim_H_U(Base::rational(Rational(M + 1)), A);
    t.expect(top.lo == 1 && top.hi == 1, [&] { return "dim at M+1 is not 1 for M=" + std::to_string(M); });
    RealApprox qc = ConstantCatalog::shared().critical(A).bracket;
    Rational below = (golden_base(A).approx().hi + qc.lo) / 2;
    if (below < qc.lo) {
      Interval d = dim_H_U(Base::rational(below), A);
      t.expect(d.lo == 0 && d.hi == 0, [&] { return "dim below q_c is not 0 for M=" + std::to_string(M); });
    }
    DimResult full = box_count_check(Base::rational(Rational(M + 1)), A, 14);
    for (const BoxEstimate& e : full.box)
      t.expect(e.ratio_lo == 1 && e.ratio_hi == 1,
               [&] { return "box ratio at M+1 is " + fmt(e.ratio_lo) + " at n=" + std::to_string(e.n); });
  }
  Alphabet A8(8);
  PlateauInterval star = make_interval(parse_word("543", A8), A8);
  std::vector<PlateauInterval> catalog{star};
  Base mid = Base::rational((star.p_left.approx().midpoint() + star.p_right.approx().midpoint()) / 2);
  Interval d = dim_H_U(mid, A8, 32, catalog);
  const double expected = ln_golden() / std::log(mid.to_double());
  t.expect(std::abs(d.lo - expected) <= 1e-6 && std::abs(d.hi - expected) <= 1e-6,
           [&] { return "dim at the I*(543) midpoint in [" + fmt(d.lo) + ", " + fmt(d.hi) + "] vs " + fmt(expected); });
  std::string ratios;
  for (const char* g : {"6", "7", "76"}) {
    PlateauInterval p = make_interval(parse_word(g, A8), A8);
    DimResult r = box_count_check(p.p_left, A8, 14);
    const BoxEstimate& last = r.box.back();
    t.expect(std::abs(last.ratio_lo - r.dim_H.mid()) <= 0.1 && std::abs(last.ratio_hi - r.dim_H.mid()) <= 0.1,
             [&] { return std::string("box ratio at p_L of I(") + g + ") is " + fmt(last.ratio_lo) + ", dim " +
                          fmt(r.dim_H.mid()); });
    ratios += std::string(ratios.empty() ? "" : ", ") + g + ": " + fmt(last.ratio_lo, 4) + " vs " + fmt(r.dim_H.mid(), 4);
  }
  return t.verdict("box ratios at n=14 " + ratios);
}

inline Verdict e_dim_bound() {
  Tally t;
  EDimBound b = e_dim_lower_bound(Alphabet(1), 2);
  t.expect(b.value == 0.5, [&] { return "E_dim(1, 2) = " + fmt(b.value, 17); });
  for (int M = 1; M <= 8; ++M) {
    Alphabet A(M);
    double previous = 0, previous_deficit = 1;
    for (unsigned N = 2; N <= 20; ++N) {
      EDimBound e = e_dim_lower_bound(A, N);
      BigInt arg;
      mpz_ui_pow_ui(arg.get_mpz_t(), static_cast<unsigned long>(M + 1), N);
      arg -= 2;
      t.expect(e.numerator_argument == arg && e.symbolic() == "ln(" + arg.get_str() + ")/(" + std::to_string(N) +
                                                                  "*ln(" + std::to_string(M + 1) + "))",
               [&] { return "symbolic form " + e.symbolic(); });
      const double expected = std::log(arg.get_d()) / (N * std::log(M + 1.0));
      t.expect(std::abs(e.value - expected) <= 1e-12, [&] { return "value " + fmt(e.value) + " vs " + fmt(expected); });
      // Past 2^53 consecutive values round together; the deficit 1 − value still separates them.
      t.expect(e.value >= previous && e.deficit < previous_deficit && e.deficit > 0, [&] {
        return "not increasing below 1 at M=" + std::to_string(M) + ", N=" + std::to_string(N);
      });
      previous = e.value;
      previous_deficit = e.deficit;
    }
  }
  return t.verdict("E_dim(1,2) = 0.5, M = 1..8, N = 2..20");
}

inline Verdict quasi_greedy_round_trip() {
  Tally t;
  std::mt19937_64 rng(20260401);
  std::uniform_int_distribution<int> pick_m(1, 3);
  for (int i = 0; i < 500; ++i) {
    Alphabet A(pick_m(rng));
    DigitSeq a = oracle::random_admissible(rng, A, 8);
    const std::size_t len = 4 * a.orbit_size();
    Base q = solve_base(a, A);
    Word back = quasi_greedy(q, A, len);
    t.expect(back == a.prefix(len), [&] { return "M=" + std::to_string(A.max_digit()) + " " + format_seq(a, A) +
                                                " came back as " + format_word(back, A); });
  }
  return t.verdict("500 sequences");
}

}  // namespace detail

inline std::vector<Criterion> criteria() {
  using namespace detail;
  return {
      {1, "constants M=8", 1, constants_m8},
      {2, "Thue-Morse prefix and doubling", 1, thue_morse_doubling},
      {3, "reflection recurrence", 30, reflection_recurrence_suite},
      {4, "entropy at q_T and q_T(n)", 10, transitive_entropies},
      {5, "plateau entropies M=8", 30, plateau_suite_m8},
      {6, "transitivity classification", 120, transitivity_classification},
      {7, "automaton counts vs brute force", 300, oracle_equivalence},
      {8, "plateau structure M=2, m<=10", 300, plateau_structure},
      {9, "dimension formula and box counts", 0, dimension_formula},
      {10, "bifurcation set dimension bound", 0, e_dim_bound},
      {11, "quasi-greedy round trip", 120, quasi_greedy_round_trip},
  };
}

/// Runs the selected criteria (all when `only` is empty), printing one line each.
inline std::vector<Outcome> run(std::ostream& out, const std::vector<int>& only = {}) {
  std::vector<Outcome> results;
  for (const Criterion& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.pass && c.budget_seconds > 0 && seconds > c.budget_seconds) {
      v.pass = false;
      v.detail += "; over the " + detail::fmt(c.budget_seconds, 4) + " s budget";
    }
    out << (v.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " (" << std::fixed
        << std::setprecision(2) << seconds << " s): " << v.detail << std::defaultfloat << '\n'
        << std::flush;
    results.push_back({c.id, c.title, v.pass, seconds, v.detail});
  }
  return results;
}

}  // namespace univoque::acceptance
