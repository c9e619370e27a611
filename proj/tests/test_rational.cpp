#include "priced_sort/rational.hpp"

#include <gtest/gtest.h>

using priced_sort::Rational;

TEST(Rational, ParsesDecimalFractionAndInfinity) {
    EXPECT_EQ(Rational::parse("3"), Rational(3));
    EXPECT_EQ(Rational::parse("2.5"), Rational(5, 2));
    EXPECT_EQ(Rational::parse("0.125"), Rational(1, 8));
    EXPECT_EQ(Rational::parse("7/2"), Rational(7, 2));
    EXPECT_EQ(Rational::parse("6/4"), Rational(3, 2));
    EXPECT_TRUE(Rational::parse("inf").is_infinite());
    for (const char* bad : {"", "x", "1/0", "-1", "1.2.3", "/2"}) EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
}

TEST(Rational, ArithmeticIsExact) {
    Rational third(1, 3);
    EXPECT_EQ(third + third + third, Rational(1));
    EXPECT_EQ(Rational(5, 2) * Rational(4), Rational(10));
    EXPECT_EQ(Rational(7, 2) - Rational(1, 2), Rational(3));
    EXPECT_EQ(Rational(3) / Rational(4), Rational(3, 4));
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_THROW(Rational(1) - Rational(2), std::exception);
}

TEST(Rational, InfinityRules) {
    Rational inf = Rational::infinity();
    EXPECT_EQ(inf * Rational(0), Rational(0));
    EXPECT_TRUE((inf * Rational(3)).is_infinite());
    EXPECT_TRUE((inf + Rational(1)).is_infinite());
    EXPECT_GT(inf, Rational(1000000));
    EXPECT_EQ(Rational(5) / inf, Rational(0));
}

TEST(Rational, Formatting) {
    EXPECT_EQ(Rational(1, 3).to_decimal(6), "0.333333");
    EXPECT_EQ(Rational(2, 3).to_decimal(6), "0.666667");
    EXPECT_EQ(Rational(18, 5).to_decimal(6), "3.600000");
    EXPECT_EQ(Rational(4).to_string(), "4");
    EXPECT_EQ(Rational(5, 2).to_string(2), "2.50");
    EXPECT_EQ(Rational::infinity().to_decimal(6), "inf");
}

TEST(Rational, OverflowIsReported) {
    Rational big(std::int64_t{1} << 62);
    EXPECT_THROW(big * big, std::overflow_error);
}
