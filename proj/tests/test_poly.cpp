#include "scell/poly/algorithms.hpp"
#include "scell/verify/oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace scell;
using scell::testing::P;

TEST(Poly, Level) {
    EXPECT_EQ(P("x1^2+x2^2-1").level(), 2u);
    EXPECT_EQ(P("7").level(), 0u);
    EXPECT_EQ(P("0").level(), 0u);
    EXPECT_EQ(P("1/2*x1 - 1/2 - x2").level(), 2u);
}

TEST(Poly, Degree) {
    EXPECT_EQ(P("x1*x2^2 + x1^3").degree(1), 2u);
    EXPECT_EQ(P("x1*x2^2 + x1^3").degree(0), 3u);
    EXPECT_EQ(P("-x1*x2 - 3/4").degree(1), 1u);
    EXPECT_THROW(P("0").degree(0), DomainError);
}

TEST(Poly, Coeffs) {
    auto c = coeffs(P("x1^2+x2^2-1"), 1);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0], P("x1^2-1"));
    EXPECT_TRUE(c[1].is_zero());
    EXPECT_EQ(c[2], P("1"));
    auto d = coeffs(P("-x1*x2 - 3/4"), 1);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0], P("-3/4"));
    EXPECT_EQ(d[1], P("-x1"));
    auto e = coeffs(P("5"), 0);
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(e[0], P("5"));
    EXPECT_EQ(from_coeffs(coeffs(P("x1*x2^2+x2*x3-x1^3"), 1), 1), P("x1*x2^2+x2*x3-x1^3"));
}

TEST(Poly, Ldcf) {
    EXPECT_EQ(ldcf(P("-x1*x2 - 3/4"), 1), P("-x1"));
    EXPECT_EQ(ldcf(P("x1^2+x2^2-1"), 1), P("1"));
    EXPECT_EQ(ldcf(P("x1^3"), 1), P("x1^3"));
    EXPECT_THROW(ldcf(P("0"), 1), DomainError);
}

TEST(Poly, EvalPrefix) {
    std::vector<Rational> r{Rational(1, 4)};
    EXPECT_EQ(eval_prefix(P("x1^2+x2^2-1"), r), P("x2^2 - 15/16"));
    EXPECT_EQ(eval_prefix(P("x1-x2"), std::vector<Rational>{}), P("x1-x2"));
    EXPECT_EQ(eval_prefix(P("-x1*x2-3/4"), std::vector<Rational>{Rational(0)}), P("-3/4"));
}

TEST(Poly, Derivative) {
    EXPECT_EQ(derivative(P("x2^2 + x1"), 1), P("2*x2"));
    EXPECT_TRUE(derivative(P("x1^3"), 1).is_zero());
    EXPECT_EQ(derivative(P("x1^2*x2^3"), 0), P("2*x1*x2^3"));
}

TEST(Poly, Resultant) {
    EXPECT_EQ(resultant(P("x1^2+x2^2-1"), P("1/2*x1 - 1/2 - x2"), 1), P("5/4*x1^2 - 1/2*x1 - 3/4"));
    EXPECT_EQ(resultant(P("x1^2+x2^2-1"), P("-x1*x2 - 3/4"), 1), P("x1^4 - x1^2 + 9/16"));
    EXPECT_EQ(resultant(P("x2^2+x1"), P("x2+1"), 1), P("x1+1"));
    EXPECT_EQ(resultant(P("x1+1"), P("x1-1"), 0), P("-2"));
    EXPECT_THROW(resultant(P("x1"), P("x2+1"), 1), DomainError);
}

TEST(Poly, Discriminant) {
    EXPECT_EQ(discriminant(P("x1^2+x2^2-1"), 1), P("-4*x1^2 + 4"));
    EXPECT_EQ(discriminant(P("x1^2-2"), 0), P("8"));
    EXPECT_TRUE(discriminant(P("x1^2+2*x1+1"), 0).is_zero());
    EXPECT_EQ(discriminant(P("3*x2 + x1"), 1), P("1"));
    EXPECT_THROW(discriminant(P("x1"), 1), DomainError);
    // cubic: -4p^3 - 27q^2 for x^3 + p x + q
    EXPECT_EQ(discriminant(P("x2^3 + x1*x2 + 1"), 1), P("-4*x1^3 - 27"));
}

TEST(Poly, Gcd) {
    EXPECT_EQ(gcd(P("x1^2-1"), P("x1-1")), P("x1-1"));
    EXPECT_EQ(gcd(P("x1^2+1"), P("x1^2+2")), P("1"));
    EXPECT_EQ(gcd(P("(x2-x1)*(x2+1)"), P("(x2-x1)*(x2+2)")), P("x2-x1"));
    EXPECT_EQ(gcd(P("x1*x2"), P("x1*x2^2 + x1")), P("x1"));
    EXPECT_THROW(gcd(P("0"), P("0")), DomainError);
}

TEST(Poly, NormalizeBasis) {
    auto b1 = normalize_basis({P("(x1-1)^2*(x1+2)")});
    EXPECT_EQ(b1, (std::vector<Polynomial>{P("x1-1"), P("x1+2")}));
    auto b2 = normalize_basis({P("x1^2-1"), P("x1-1")});
    EXPECT_EQ(b2, (std::vector<Polynomial>{P("x1-1"), P("x1+1")}));
    EXPECT_TRUE(normalize_basis({P("3")}).empty());
    auto b3 = normalize_basis({P("x1*x2 - x1"), P("2*x2-2")});
    EXPECT_EQ(b3, (std::vector<Polynomial>{P("x1"), P("x2-1")}));
}

TEST(Poly, Normalized) {
    EXPECT_EQ(normalized(P("5/4*x1^2 - 1/2*x1 - 3/4")), P("5*x1^2-2*x1-3"));
    EXPECT_EQ(normalized(P("-x1")), P("x1"));
    EXPECT_EQ(normalized(P("-4*x1^2+4")), P("x1^2-1"));
}

TEST(Poly, ParsePrint) {
    auto vars = VarOrder::standard(2);
    for (const char* s : {"x1^2+x2^2-1", "-x1*x2-3/4", "1/2*x1-x2+1/2", "x1", "0", "-5"}) {
        auto p = parse_polynomial(s, vars);
        EXPECT_EQ(parse_polynomial(to_string(p, vars), vars), p) << s;
    }
    EXPECT_EQ(to_string(P("-x1*x2 - 3/4"), vars), "-x1*x2-3/4");
    EXPECT_EQ(P("-x1^2"), -P("x1^2"));
    EXPECT_EQ(P("2^3"), P("8"));
    EXPECT_THROW(P("x1^2 +"), ParseError);
    EXPECT_THROW(P("2x1"), ParseError);
    EXPECT_THROW(P("x1 x2"), ParseError);
    EXPECT_THROW(P("x1/2"), ParseError);
    EXPECT_THROW(P("y+1"), ParseError);
    EXPECT_THROW(P("0.5*x1"), ParseError);
    EXPECT_EQ(P("010*x1+07/010"), P("10*x1+7/10"));
    try {
        P("x1^2 +");
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 7u);
    }
}

TEST(PolyProperties, ResultantMatchesSylvesterAndSwaps) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<unsigned> nt(1, 5);
    int checked = 0;
    while (checked < 500) {
        auto p = scell::testing::random_poly(rng, 2, 4, 9, nt(rng));
        auto q = scell::testing::random_poly(rng, 2, 4, 9, nt(rng));
        if (p.degree_or_zero(1) < 1 || q.degree_or_zero(1) < 1) continue;
        auto r = resultant(p, q, 1);
        ASSERT_EQ(r, oracle_resultant(p, q, 1)) << checked;
        auto dp = p.degree(1), dq = q.degree(1);
        auto rs = resultant(q, p, 1);
        ASSERT_EQ(r, (dp * dq) % 2 ? -rs : rs);
        ++checked;
    }
}

TEST(PolyProperties, TrivariateResultantMatchesSylvester) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 60; ++i) {
        auto p = scell::testing::random_poly(rng, 3, 3, 5, 4);
        auto q = scell::testing::random_poly(rng, 3, 3, 5, 4);
        if (p.degree_or_zero(2) < 1 || q.degree_or_zero(2) < 1) continue;
        ASSERT_EQ(resultant(p, q, 2), oracle_resultant(p, q, 2));
    }
}

TEST(PolyProperties, DiscriminantVanishesIffRepeatedFactor) {
    std::mt19937_64 rng(7);
    int repeated = 0;
    for (int i = 0; i < 200; ++i) {
        auto p = scell::testing::random_poly(rng, 2, 3, 5, 3);
        if (i % 3 == 0) {
            auto f = scell::testing::random_poly(rng, 2, 1, 3, 2);
            p = p * f * f;
        }
        if (p.degree_or_zero(1) < 1) continue;
        bool zero = discriminant(p, 1).is_zero();
        auto g = gcd(p, derivative(p, 1));
        ASSERT_EQ(zero, g.degree_or_zero(1) > 0) << to_string(p, VarOrder::standard(2));
        repeated += zero;
    }
    EXPECT_GT(repeated, 0);
}

TEST(PolyProperties, BasisIsCoprimeSquarefreeAndKeepsZeros) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 40; ++i) {
        std::vector<Polynomial> in;
        auto common = scell::testing::random_poly(rng, 2, 2, 4, 2);
        for (int k = 0; k < 3; ++k) in.push_back(scell::testing::random_poly(rng, 2, 2, 4, 3) * (k < 2 ? common : Polynomial(1)));
        auto basis = normalize_basis(in);
        for (std::size_t a = 0; a < basis.size(); ++a) {
            ASSERT_FALSE(basis[a].is_constant());
            Var v = basis[a].level() - 1;
            ASSERT_FALSE(discriminant(basis[a], v).is_zero());
            for (std::size_t b = a + 1; b < basis.size(); ++b) ASSERT_TRUE(gcd(basis[a], basis[b]).is_constant());
        }
        for (int x = -3; x <= 3; ++x) {
            for (int y = -3; y <= 3; ++y) {
                std::vector<Rational> pt{Rational(x), Rational(y)};
                bool zin = false, zout = false;
                for (auto& p : in) zin |= !p.is_zero() && evaluate(p, pt) == 0;
                for (auto& p : basis) zout |= evaluate(p, pt) == 0;
                ASSERT_EQ(zin, zout);
            }
        }
    }
}

TEST(PolyProperties, EvalCommutesWithProduct) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto p = scell::testing::random_poly(rng, 3, 3, 9, 4);
        auto q = scell::testing::random_poly(rng, 3, 3, 9, 4);
        std::vector<Rational> r{rat_normalize(i % 7 - 3, 2), rat_normalize(i % 5 - 2, 3)};
        ASSERT_EQ(eval_prefix(p * q, r), eval_prefix(p, r) * eval_prefix(q, r));
        ASSERT_EQ(eval_prefix(p + q, r), eval_prefix(p, r) + eval_prefix(q, r));
    }
}

TEST(PolyProperties, ExactDivision) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        auto p = scell::testing::random_poly(rng, 3, 3, 9, 4);
        auto q = scell::testing::random_poly(rng, 3, 3, 9, 3);
        if (q.is_zero()) continue;
        ASSERT_EQ(divide_exact(p * q, q), p);
    }
    EXPECT_THROW(divide_exact(P("x1+1"), P("x1")), DomainError);
}
