#include <gtest/gtest.h>

#include "skedc/rational.hpp"

using skedc::Rational;

TEST(Rational, NormalizesOnConstruction) {
  EXPECT_EQ(Rational(6, 4), Rational(3, 2));
  EXPECT_EQ(Rational(-6, 4), Rational(3, -2));
  EXPECT_EQ(Rational(0, 7), Rational(0));
  EXPECT_EQ(Rational(2, -4).num, -1);
  EXPECT_EQ(Rational(2, -4).den, 2);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(-Rational(5, 7), Rational(-5, 7));
  EXPECT_EQ(Rational(7) + Rational(-7), Rational(0));
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_LT(Rational(-1, 2), Rational(-1, 3));
  EXPECT_LE(Rational(5), Rational(5));
  EXPECT_GT(Rational(10, 3), Rational(3));
}

TEST(Rational, Text) {
  EXPECT_EQ(Rational(5).str(), "5");
  EXPECT_EQ(Rational(5, 2).str(), "5/2");
  EXPECT_EQ(Rational(-5, 2).str(), "-5/2");
  EXPECT_EQ(Rational(0).str(), "0");
}

TEST(Rational, ZeroDenominatorThrows) {
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, LargeIntermediatesStayExact) {
  Rational big(1'000'000'000'000LL);
  EXPECT_EQ(big * Rational(3), Rational(3'000'000'000'000LL));
  EXPECT_EQ(big + big, Rational(2'000'000'000'000LL));
  EXPECT_EQ(Rational(1, 1'000'000'000LL) * Rational(1'000'000'000LL), Rational(1));
}
