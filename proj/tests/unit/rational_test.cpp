#include <gtest/gtest.h>

#include <stdexcept>

#include "kinlap/rational.hpp"

using kinlap::Rational;

TEST(Rational, FormatAlwaysCarriesDenominator) {
    EXPECT_EQ(kinlap::format_rational(Rational(3)), "3/1");
    EXPECT_EQ(kinlap::format_rational(Rational(6, 4)), "3/2");
    EXPECT_EQ(kinlap::format_rational(Rational(-2, 6)), "-1/3");
    EXPECT_EQ(kinlap::format_rational(Rational(0)), "0/1");
}

TEST(Rational, ParseAcceptsIntegersFractionsAndWhitespace) {
    EXPECT_EQ(kinlap::parse_rational("7"), Rational(7));
    EXPECT_EQ(kinlap::parse_rational("9/5"), Rational(9, 5));
    EXPECT_EQ(kinlap::parse_rational("  -10/4 "), Rational(-5, 2));
}

TEST(Rational, ParseRejectsGarbage) {
    for (const char* bad : {"", "1/0", "a/b", "1/2/3", "1.5", "/3", "3/"})
        EXPECT_THROW(kinlap::parse_rational(bad), std::invalid_argument) << bad;
}

TEST(Rational, RoundTrip) {
    for (const Rational& r : {Rational(1, 3), Rational(-22, 7), Rational(123456789, 1000)})
        EXPECT_EQ(kinlap::parse_rational(kinlap::format_rational(r)), r);
}

TEST(Rational, PowAndConversion) {
    EXPECT_EQ(kinlap::rational_pow(Rational(2, 3), 3), Rational(8, 27));
    EXPECT_EQ(kinlap::rational_pow(Rational(2, 3), -2), Rational(9, 4));
    EXPECT_EQ(kinlap::rational_pow(Rational(5), 0), Rational(1));
    EXPECT_DOUBLE_EQ(kinlap::to_double(Rational(1, 4)), 0.25);
    EXPECT_NEAR(kinlap::to_double(Rational(1, 3)), 1.0 / 3.0, 1e-16);
}
