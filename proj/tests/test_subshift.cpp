#include <gtest/gtest.h>

#include "oracles.hpp"
#include "univoque/constants.hpp"
#include "univoque/subshift.hpp"

using namespace univoque;

namespace {

std::optional<MatchAutomaton> try_build(const ShiftSpec& s) {
  if (lex_cmp(s.upper, s.lower) < 0) return std::nullopt;
  return MatchAutomaton::build(s);
}

}  // namespace

TEST(Subshift, CountsMatchBruteForce) {
  for (int M = 1; M <= 2; ++M) {
    Alphabet A(M);
    for (const DigitSeq& alpha : oracle::admissible_sequences(A, 4)) {
      for (ShiftMode mode : {ShiftMode::V, ShiftMode::W, ShiftMode::U}) {
        ShiftSpec spec = ShiftSpec::of_expansion(alpha, A, mode);
        auto a = try_build(spec);
        if (!a) continue;
        std::vector<BigInt> brute = oracle::count_words(spec, 8);
        for (std::size_t n = 0; n <= 8; ++n)
          EXPECT_EQ(count_words(*a, n), brute[n]) << format_seq(alpha, A) << ' ' << mode_name(mode) << " n=" << n;
      }
    }
  }
}

TEST(Subshift, InvertedBoundsThrow) {
  Alphabet A(2);
  try {
    MatchAutomaton::build(ShiftSpec::of_expansion(parse_seq("(10)", A), A));
    FAIL() << "expected BoundsInverted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundsInverted);
  }
  // The V and W languages are then empty; the oracle agrees.
  EXPECT_EQ(oracle::count_words(ShiftSpec::of_expansion(parse_seq("(10)", A), A, ShiftMode::V), 4)[4], 0);
}

TEST(Subshift, CountsAreSubmultiplicative) {
  Alphabet A(2);
  for (const char* s : {"(21)", "2(1)", "(2110)", "(2)", "21(02)"}) {
    MatchAutomaton a = MatchAutomaton::build(ShiftSpec::of_expansion(parse_seq(s, A), A));
    for (std::size_t m = 1; m <= 8; ++m)
      for (std::size_t n = 1; n <= 8; ++n)
        EXPECT_LE(count_words(a, m + n), count_words(a, m) * count_words(a, n)) << s;
  }
}

TEST(Subshift, LargerBoundGivesLargerLanguage) {
  Alphabet A(2);
  auto catalog = oracle::admissible_sequences(A, 5);
  std::vector<DigitSeq> in_v;
  for (const auto& a : catalog)
    if (lex_cmp(a, reflect(a, A)) >= 0) in_v.push_back(a);
  std::sort(in_v.begin(), in_v.end(), [](const DigitSeq& x, const DigitSeq& y) { return lex_cmp(x, y) < 0; });
  for (std::size_t i = 0; i + 1 < in_v.size(); ++i) {
    MatchAutomaton lo = MatchAutomaton::build(ShiftSpec::of_expansion(in_v[i], A));
    MatchAutomaton hi = MatchAutomaton::build(ShiftSpec::of_expansion(in_v[i + 1], A));
    EXPECT_LE(count_words(lo, 10), count_words(hi, 10)) << format_seq(in_v[i], A);
    EXPECT_LE(entropy(lo).h_lo, entropy(hi).h_hi + 1e-12) << format_seq(in_v[i], A);
  }
}

TEST(Subshift, VAndUHaveEqualEntropy) {
  for (int M = 1; M <= 3; ++M) {
    Alphabet A(M);
    for (const DigitSeq& alpha : oracle::admissible_sequences(A, 5)) {
      if (lex_cmp(alpha, reflect(alpha, A)) < 0) continue;
      EntropyResult v = entropy(ShiftSpec::of_expansion(alpha, A, ShiftMode::V));
      EntropyResult u = entropy(ShiftSpec::of_expansion(alpha, A, ShiftMode::U));
      EXPECT_NEAR(v.h_mid(), u.h_mid(), 1e-9) << format_seq(alpha, A);
    }
  }
}

TEST(Subshift, FullShiftAndGoldenMean) {
  Alphabet A(3);
  EntropyResult full = entropy(ShiftSpec::of_expansion(DigitSeq::constant(3), A));
  EXPECT_NEAR(full.norm_mid(), 1.0, 1e-12);
  EXPECT_NEAR(full.h_mid(), std::log(4.0), 1e-12);
  Alphabet B(1);
  // α = (110)^∞ bounds a golden-mean type shift of entropy ln φ.
  EntropyResult h = entropy(ShiftSpec::of_expansion(parse_seq("(110)", B), B));
  EXPECT_NEAR(h.h_mid(), std::log((1 + std::sqrt(5.0)) / 2), 1e-10);
  EXPECT_LE(h.h_hi - h.h_lo, 1e-10);
}

TEST(Subshift, EntropyMatchesGrowthRate) {
  Alphabet A(2);
  for (const char* s : {"(21)", "2(1)", "(2110)", "(220)"}) {
    MatchAutomaton a = MatchAutomaton::build(ShiftSpec::of_expansion(parse_seq(s, A), A));
    const double h = entropy(a).h_mid();
    const double growth = log_big(count_words(a, 400)) - log_big(count_words(a, 399));
    EXPECT_NEAR(growth, h, 1e-3) << s;
  }
}

TEST(Subshift, TransitiveBaseGraph) {
  // M = 2k at q_T: digits k−1, k, k+1 only.
  for (int k = 1; k <= 3; ++k) {
    Alphabet A(2 * k);
    MatchAutomaton a = MatchAutomaton::build(ShiftSpec::of_expansion(transitive_expansion(A), A));
    EXPECT_TRUE(is_transitive(a));
    std::set<Digit> used;
    for (std::size_t s = 0; s < a.state_count(); ++s)
      for (Digit d = 0; d <= 2 * k; ++d)
        if (a.next(static_cast<int>(s), d) >= 0) used.insert(d);
    EXPECT_EQ(used, (std::set<Digit>{k - 1, k, k + 1}));
    EXPECT_NEAR(entropy(a).norm_mid(), std::log(2.0) / std::log(2.0 * k + 1), 1e-10);
  }
}

TEST(Subshift, TransitivityAgainstPlateauKinds) {
  Alphabet A(8);
  EXPECT_TRUE(is_transitive(MatchAutomaton::build(ShiftSpec::of_expansion(parse_seq("(5)", A), A))));
  EXPECT_FALSE(is_transitive(MatchAutomaton::build(ShiftSpec::of_expansion(parse_seq("(543)", A), A))));
  EXPECT_FALSE(is_transitive(MatchAutomaton::build(ShiftSpec::of_expansion(nontransitive_expansion(A), A))));
}

TEST(Subshift, PrefixCountBoundsExactCount) {
  Alphabet A(2);
  for (const char* s : {"(21)", "2(1)", "(2110)", "21(02)"}) {
    DigitSeq alpha = parse_seq(s, A);
    MatchAutomaton a = MatchAutomaton::build(ShiftSpec::of_expansion(alpha, A));
    for (std::size_t n = 1; n <= 12; ++n) {
      Word up = alpha.prefix(n), down = reflect(up, A);
      EXPECT_GE(count_prefix_admissible(up, down, A, n), count_words(a, n)) << s << " n=" << n;
    }
  }
}
