#include <gtest/gtest.h>

#include "univoque/constants.hpp"

using namespace univoque;

TEST(Constants, LambdaPrefixes) {
  EXPECT_EQ(format_word(lambda_prefix(Alphabet(8), 12), Alphabet(8)), "543534543453");
  EXPECT_EQ(format_word(lambda_prefix(Alphabet(1), 16), Alphabet(1)), "1101001100101101");
  EXPECT_EQ(format_word(lambda_prefix(Alphabet(2), 8), Alphabet(2)), "21020121");
}

TEST(Constants, LambdaDoubling) {
  for (int M = 1; M <= 9; ++M) {
    Alphabet A(M);
    Word full = lambda_prefix(A, 512);
    for (std::size_t n = 1; 2 * n <= full.size(); n *= 2) {
      Word block(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n));
      Word next(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(2 * n));
      EXPECT_EQ(concat(block, incremented(reflect(block, A), A)), next) << "M=" << M << " n=" << n;
    }
  }
}

TEST(Constants, GoldenAndTransitiveBases) {
  for (int k = 1; k <= 4; ++k) {
    Alphabet even(2 * k);
    EXPECT_EQ(golden_base(even), Rational(k + 1)) << "M=" << 2 * k;
  }
  Alphabet A8(8);
  Base qt = transitive_base(A8);
  EXPECT_NEAR(qt.to_double(), 3 + 2 * std::sqrt(2.0), 1e-14);
  Alphabet A1(1);
  EXPECT_NEAR(golden_base(A1).to_double(), (1 + std::sqrt(5.0)) / 2, 1e-15);
}

TEST(Constants, OrderingOfDistinguishedBases) {
  for (int M = 1; M <= 6; ++M) {
    Alphabet A(M);
    auto& catalog = ConstantCatalog::shared();
    const RealApprox qc = catalog.critical(A).bracket;
    Base qg = golden_base(A), qnt = nontransitive_base(A);
    EXPECT_LT(qg, qnt) << M;
    EXPECT_LT(qnt, qc.lo) << M;
    Base previous = catalog.xi_base(A, 1);
    EXPECT_EQ(previous, transitive_base(A));
    for (unsigned n = 2; n <= 6; ++n) {
      const Base& cur = catalog.xi_base(A, n);
      EXPECT_LT(cur, previous) << "M=" << M << " n=" << n;
      EXPECT_GT(cur, qc.lo) << "M=" << M << " n=" << n;
      previous = cur;
    }
  }
}

TEST(Constants, CriticalBracketWidth) {
  Alphabet A(8);
  CriticalBracket c = critical_base_bracket(A, make_rational(1, 100000));
  EXPECT_LE(c.bracket.width(), make_rational(1, 100000));
  // Komornik–Loreti constant for M = 1.
  RealApprox kl = ConstantCatalog::shared().critical(Alphabet(1)).bracket;
  EXPECT_NEAR(kl.midpoint().get_d(), 1.7872316501829659, 1e-9);
  EXPECT_LE(kl.width(), make_rational(1, 1000000000));
}

TEST(Constants, XiShape) {
  Alphabet A(2);
  EXPECT_EQ(format_seq(xi(A, 1), A), "2(1)");
  EXPECT_EQ(format_seq(xi(A, 2), A), "21(02)");
  Alphabet B(1);
  // 11(01) in canonical form.
  EXPECT_EQ(format_seq(xi(B, 1), B), "1(10)");
  EXPECT_THROW(xi(A, 0), Error);
}
