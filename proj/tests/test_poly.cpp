// SPDX-License-Identifier: Apache-2.0
#include <newton_circle/poly.hpp>
#include <newton_circle/poly_parse.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace nc;

namespace {

Poly2 random_poly(std::mt19937_64& rng, int max_deg, int max_terms) {
    Poly2 p;
    int const n = 1 + static_cast<int>(rng() % max_terms);
    for (int i = 0; i < n; ++i) {
        int const e1 = static_cast<int>(rng() % (max_deg + 1));
        int const e2 = static_cast<int>(rng() % (max_deg + 1 - e1));
        if (e1 == 0 && e2 == 0) continue;
        p.add_term({e1, e2}, BigInt(static_cast<std::int64_t>(rng() % 19) - 9));
    }
    return p;
}

/// Separability witness: split the terms by axis and compare with P on a grid.
bool separable_by_witness(Poly2 const& p) {
    Poly2 p1;
    Poly2 p2;
    for (auto const& [e, c] : p.terms()) {
        if (e.e2 == 0) p1.add_term(e, c);
        else if (e.e1 == 0) p2.add_term(e, c);
    }
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            if (evaluate(p, a, b) != evaluate(p1, a, 0) + evaluate(p2, 0, b)) return false;
    return true;
}

} // namespace

TEST(Parse, ReadsTheTermGrammar) {
    Poly2 const p = parse_poly("2*m1*m2 - m2^4");
    EXPECT_EQ(p.coefficient({1, 1}), 2);
    EXPECT_EQ(p.coefficient({0, 4}), -1);
    EXPECT_EQ(p.terms().size(), 2u);
    EXPECT_EQ(parse_poly(" m1 ^ 3 * m2+m1*m2^3 "), parse_poly("m1^3*m2 + m1*m2^3"));
    EXPECT_EQ(parse_poly("m2*m1^2"), parse_poly("m1^2*m2"));
    EXPECT_EQ(parse_poly("-m1 + m1"), Poly2());
}

TEST(Parse, ReportsErrorPosition) {
    try {
        parse_poly("m1 + m3");
        FAIL();
    } catch (ParseError const& e) {
        EXPECT_EQ(e.position(), 6u);
    }
    EXPECT_THROW(parse_poly(""), ParseError);
    EXPECT_THROW(parse_poly("m1 m2"), ParseError);
    EXPECT_THROW(parse_poly("m1^65"), ParseError);
    EXPECT_THROW(parse_poly("m1 +"), ParseError);
}

TEST(Parse, RoundTripsThroughText) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Poly2 const p = random_poly(rng, 6, 8);
        EXPECT_EQ(parse_poly(p.str()), p) << p.str();
    }
}

TEST(Support, Examples) {
    EXPECT_EQ(support(parse_poly("m1^2*m2^3")), (std::set<Exponent>{{2, 3}}));
    EXPECT_TRUE(support(Poly2()).empty());
    EXPECT_EQ(support(parse_poly("m1^3*m2 + m1*m2^3")), (std::set<Exponent>{{3, 1}, {1, 3}}));
}

TEST(Degenerate, Examples) {
    EXPECT_TRUE(is_degenerate(parse_poly("m1^2 + m2^3")));
    EXPECT_FALSE(is_degenerate(parse_poly("m1*m2")));
    EXPECT_FALSE(is_degenerate(parse_poly("m1^2*m2^3 + m1")));
    EXPECT_THROW(is_degenerate(parse_poly("m1 + 1")), DomainError);
}

TEST(Degenerate, AgreesWithSeparabilityWitness) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 500; ++i) {
        Poly2 const p = random_poly(rng, 5, 4);
        EXPECT_EQ(is_degenerate(p), separable_by_witness(p)) << p.str();
    }
}

TEST(Evaluate, Examples) {
    EXPECT_EQ(evaluate(parse_poly("m1^2*m2^3"), 2, 3), 108);
    EXPECT_EQ(evaluate(parse_poly("m1^3*m2 + m1*m2^3"), 2, 1), 10);
    EXPECT_EQ(evaluate(parse_poly("m1^3*m2 + m1*m2^3"), 0, 0), 0);
}

TEST(Evaluate, HornerAndTermwiseAgreeExactly) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        Poly2 const p = random_poly(rng, 12, 8);
        for (int a = -6; a <= 6; ++a)
            for (int b = -6; b <= 6; ++b) ASSERT_EQ(evaluate(p, a, b), evaluate_horner(p, a, b));
    }
    Poly2 const big = Poly2::monomial(BigInt(3), 64, 64);
    EXPECT_EQ(evaluate(big, 1000, 1000), evaluate_horner(big, 1000, 1000));
}

TEST(AxisDecompose, Examples) {
    auto const d = axis_decompose(parse_poly("m1^3*m2 + m1*m2^3"), 2);
    ASSERT_EQ(d.parts.size(), 2u);
    EXPECT_EQ(d.parts.at(1).str(), "m1^3");
    EXPECT_EQ(d.parts.at(3).str(), "m1");
    EXPECT_EQ(d.top_exponent, 3);
    EXPECT_EQ(d.tilde_degree, 1);

    auto const e = axis_decompose(parse_poly("m1^2*m2^3"), 2);
    ASSERT_EQ(e.parts.size(), 1u);
    EXPECT_EQ(e.parts.at(3).str(), "m1^2");

    auto const f = axis_decompose(parse_poly("m1 + m2"), 2);
    EXPECT_EQ(f.parts.at(0).str(), "m1");
    EXPECT_EQ(f.parts.at(1).str(), "1");

    auto const g = axis_decompose(parse_poly("m1^3*m2 + m1*m2^3"), 1);
    EXPECT_EQ(g.parts.at(3).str("m2"), "m2");
    EXPECT_EQ(g.tilde_degree, 1);
}

TEST(AxisDecompose, ReexpansionReproducesValues) {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 200; ++i) {
        Poly2 const p = random_poly(rng, 7, 8);
        for (int axis : {1, 2}) {
            auto const d = axis_decompose(p, axis);
            EXPECT_EQ(recompose(d), p);
            for (int a = 0; a < 10; ++a)
                for (int b = 0; b < 10; ++b) {
                    BigInt v = 0;
                    for (auto const& [g, part] : d.parts) {
                        BigInt const outer = detail::big_pow(axis == 2 ? b : a, g);
                        v += part.evaluate(axis == 2 ? a : b) * outer;
                    }
                    ASSERT_EQ(v, evaluate(p, a, b));
                }
        }
    }
}

TEST(Scale, Examples) {
    Poly2 const p = parse_poly("m1*m2");
    EXPECT_TRUE(scale(p, Frequency{0.0}).is_zero());
    EXPECT_TRUE(scale(p, Frequency{Rational(0)}).is_zero());
    RealPoly2 const half = scale(p, Frequency{Rational(1, 2)});
    ASSERT_TRUE(half.is_exact());
    EXPECT_EQ(half.exact().denominator, 2);
    EXPECT_EQ(half.exact().numerators.at({1, 1}), 1);
    EXPECT_DOUBLE_EQ(half.coefficients().at({1, 1}), 0.5);
    RealPoly2 const q = scale(parse_poly("m1^2*m2^3"), Frequency{0.25});
    EXPECT_FALSE(q.is_exact());
    EXPECT_DOUBLE_EQ(q.coefficients().at({2, 3}), 0.25);
}

TEST(Scale, FixedPointFractionsAreExact) {
    // frac(0.25 * 7) = 0.75 = 3 * 2^126 in 0.128 fixed point
    RealPoly2 const q = scale(Poly2::monomial(BigInt(7), 1, 1), Frequency{0.25});
    EXPECT_TRUE(q.fixed_fractions().at({1, 1}) == (static_cast<u128>(3) << 126));
    RealPoly2 const r = scale(Poly2::monomial(BigInt(7), 1, 1), Frequency{Rational(1, 4)});
    EXPECT_TRUE(r.fixed_fractions().at({1, 1}) == (static_cast<u128>(3) << 126));
    EXPECT_THROW(scale(Poly2::monomial(BigInt(1), 1, 1), Frequency{std::nan("")}), DomainError);
}
