#include <gtest/gtest.h>

#include <limits>

#include "topocouple/rational.hpp"

using topocouple::Rational;

TEST(Rational, NormalizesSignAndGcd) {
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational(0, 5).den(), 1);
  EXPECT_EQ(Rational(10, 2).str(), "5/1");
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 15) + Rational(7, 30) + Rational(1, 6), Rational(7, 15));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
  EXPECT_EQ(-Rational(1, 3) - Rational(2, 3), Rational(-1));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_EQ(Rational(4).floor(), 4);
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("3"), Rational(3));
  EXPECT_EQ(Rational::parse("-6/4"), Rational(-3, 2));
  EXPECT_ANY_THROW(Rational::parse("1/0"));
  EXPECT_ANY_THROW(Rational::parse("x"));
}

TEST(Rational, OverflowThrowsInsteadOfWrapping) {
  const Rational big(std::numeric_limits<std::int64_t>::max() / 2 + 1);
  EXPECT_THROW(big * Rational(4), std::overflow_error);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}
