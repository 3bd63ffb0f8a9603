#include <gtest/gtest.h>

#include <random>

#include "univoque/words.hpp"

using namespace univoque;

TEST(Words, ParseFormatRoundTrip) {
  Alphabet A(2);
  for (const char* s : {"0", "12", "2101", "ε"}) EXPECT_EQ(format_word(parse_word(s, A), A), s);
  Alphabet big(12);
  Word w = parse_word("11,0,12", big);
  EXPECT_EQ(w, (Word{11, 0, 12}));
  EXPECT_EQ(format_word(w, big), "11,0,12");
}

TEST(Words, RejectsBadInput) {
  Alphabet A(1);
  EXPECT_THROW(parse_word("102", A), Error);
  EXPECT_THROW(parse_word("1x", A), Error);
  EXPECT_THROW(parse_seq("10", A), Error);
  EXPECT_THROW(parse_seq("1()", A), Error);
  try {
    parse_seq("10", A);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}

TEST(Words, SequenceCanonicalForm) {
  Alphabet A(2);
  EXPECT_EQ(format_seq(parse_seq("(1010)", A), A), "(10)");
  EXPECT_EQ(format_seq(parse_seq("11(01)", A), A), "1(10)");
  EXPECT_EQ(format_seq(parse_seq("2(22)", A), A), "(2)");
  EXPECT_EQ(parse_seq("0(10)", A), parse_seq("(01)", A));
}

TEST(Words, DigitAccessAndShift) {
  Alphabet A(2);
  DigitSeq s = parse_seq("21(012)", A);
  EXPECT_EQ(s.prefix(9), (Word{2, 1, 0, 1, 2, 0, 1, 2, 0}));
  EXPECT_EQ(s.shifted(3), parse_seq("(120)", A));
  Word head = s.prefix(106);
  EXPECT_EQ(s.shifted(100).prefix(6), Word(head.begin() + 100, head.end()));
  EXPECT_EQ(s.orbit_size(), 5u);
  EXPECT_TRUE(parse_seq("(2)", A).ends_in(2));
}

TEST(Words, ReflectionIsInvolution) {
  std::mt19937_64 rng(7);
  for (int M = 1; M <= 9; ++M) {
    Alphabet A(M);
    std::uniform_int_distribution<Digit> d(0, M);
    for (int k = 0; k < 50; ++k) {
      Word pre(rng() % 4), per(1 + rng() % 5);
      for (auto& x : pre) x = d(rng);
      for (auto& x : per) x = d(rng);
      DigitSeq s(pre, per);
      EXPECT_EQ(reflect(reflect(s, A), A), s);
      EXPECT_EQ(reflect(reflect(per, A), A), per);
    }
  }
}

TEST(Words, LexOrderAgreesWithLongPrefixes) {
  std::mt19937_64 rng(11);
  Alphabet A(2);
  std::uniform_int_distribution<Digit> d(0, 2);
  for (int k = 0; k < 2000; ++k) {
    Word p1(rng() % 3), q1(1 + rng() % 4), p2(rng() % 3), q2(1 + rng() % 4);
    for (auto* w : {&p1, &q1, &p2, &q2})
      for (auto& x : *w) x = d(rng);
    DigitSeq x(p1, q1), y(p2, q2);
    // 3 + 3 + 4·4 digits decide any comparison between these.
    auto expected = word_cmp(x.prefix(40), y.prefix(40));
    EXPECT_EQ(lex_cmp(x, y), expected) << format_seq(x, A) << " vs " << format_seq(y, A);
  }
}

TEST(Words, IncrementDecrement) {
  Alphabet A(2);
  EXPECT_EQ(incremented(Word{1, 0}, A), (Word{1, 1}));
  EXPECT_EQ(decremented(Word{1, 1}), (Word{1, 0}));
  EXPECT_THROW(incremented(Word{1, 2}, A), Error);
  EXPECT_THROW(decremented(Word{1, 0}), Error);
}

TEST(Words, ThueMorse) {
  std::string t;
  for (int i = 0; i < 16; ++i) t += char('0' + thue_morse(static_cast<std::uint64_t>(i)));
  EXPECT_EQ(t, "0110100110010110");
}
