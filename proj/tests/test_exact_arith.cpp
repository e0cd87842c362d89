#include "scell/exact_arith.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace scell;

TEST(RatNormalize, ReducesAndCarriesSign) {
    EXPECT_EQ(rat_normalize(2, 4), Rational(1, 2));
    EXPECT_EQ(rat_normalize(-1, -2), Rational(1, 2));
    Rational z = rat_normalize(0, 7);
    EXPECT_EQ(z.get_num(), 0);
    EXPECT_EQ(z.get_den(), 1);
    EXPECT_EQ(rat_normalize(3, -6).get_num(), -1);
    EXPECT_THROW(rat_normalize(1, 0), DomainError);
}

TEST(RatNormalize, ProductTwoWays) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-1000, 1000);
    for (int i = 0; i < 500; ++i) {
        long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
        if (b == 0 || e == 0) continue;
        Rational x = rat_normalize(a, b), y = rat_normalize(c, e);
        EXPECT_EQ(x * y, rat_normalize(Integer(a) * c, Integer(b) * e));
    }
}

TEST(Rational, TextRoundTrip) {
    EXPECT_EQ(to_string(Rational(-7, 10)), "-7/10");
    EXPECT_EQ(to_string(Rational(4)), "4");
    EXPECT_EQ(parse_rational("-7/10"), Rational(-7, 10));
    EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
    EXPECT_THROW(parse_rational("0.5"), DomainError);
    EXPECT_THROW(parse_rational("1/0"), DomainError);
    EXPECT_THROW(parse_rational("1/-2"), DomainError);
    EXPECT_THROW(parse_rational(""), DomainError);
}

TEST(Interval, Mul) {
    auto r = interval_mul(RatInterval::hull(-1, 2), RatInterval::hull(3, 4));
    EXPECT_EQ(r.lo(), -4);
    EXPECT_EQ(r.hi(), 8);
    auto z = interval_mul(RatInterval::point(0), RatInterval::hull(5, 9));
    EXPECT_TRUE(z.is_point());
    EXPECT_EQ(z.lo(), 0);
    auto s = interval_mul(RatInterval::hull(1, 2), RatInterval::hull(1, 2));
    EXPECT_EQ(s.lo(), 1);
    EXPECT_EQ(s.hi(), 4);
}

TEST(Interval, MulIsConservative) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-50, 50);
    auto rnd = [&] { return rat_normalize(d(rng), 1 + std::abs(d(rng))); };
    for (int round = 0; round < 20; ++round) {
        Rational a0 = rnd(), a1 = rnd(), b0 = rnd(), b1 = rnd();
        auto A = RatInterval::hull(std::min(a0, a1), std::max(a0, a1));
        auto B = RatInterval::hull(std::min(b0, b1), std::max(b0, b1));
        auto P = interval_mul(A, B);
        std::uniform_int_distribution<int> t(0, 1000);
        for (int i = 0; i < 50; ++i) {
            Rational a = A.lo() + A.width() * Rational(t(rng), 1000);
            Rational b = B.lo() + B.width() * Rational(t(rng), 1000);
            Rational ab = a * b;
            EXPECT_LE(P.lo(), ab);
            EXPECT_GE(P.hi(), ab);
        }
    }
}

TEST(Interval, Midpoint) {
    EXPECT_EQ(interval_midpoint(RatInterval::open(1, 3)), 2);
    EXPECT_EQ(interval_midpoint(RatInterval::open(Rational(1, 3), Rational(2, 3))), Rational(1, 2));
    EXPECT_EQ(interval_midpoint(RatInterval::point(5)), 5);
    EXPECT_THROW(RatInterval::open(2, 2), DomainError);
}
