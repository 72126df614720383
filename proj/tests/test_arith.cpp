// SPDX-License-Identifier: Apache-2.0
#include <newton_circle/arith.hpp>
#include <newton_circle/oracle.hpp>

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace nc;

namespace {

void expect_reduced(Rational const& r) {
    EXPECT_GE(r.den(), 1);
    EXPECT_EQ(std::gcd(r.num() < 0 ? -r.num() : r.num(), r.den()), 1);
}

} // namespace

TEST(Reduce, CancelsCommonFactors) {
    EXPECT_EQ(reduce(2, 4), Rational(1, 2));
    EXPECT_EQ(reduce(0, 5), Rational(0));
    EXPECT_EQ(reduce(-3, 6, true), Rational(1, 2));
    EXPECT_EQ(reduce(-3, 6), Rational(-1, 2));
}

TEST(Reduce, RejectsZeroDenominator) { EXPECT_THROW(reduce(1, 0), DomainError); }

TEST(Reduce, IsOnePeriodicOnTheTorus) {
    for (std::int64_t q = 1; q <= 30; ++q)
        for (std::int64_t a = -40; a <= 40; ++a) {
            Rational const r = reduce(a, q, true);
            EXPECT_EQ(r, reduce(a + q, q, true));
            expect_reduced(r);
            EXPECT_GE(r.num(), 0);
            EXPECT_LT(r.num(), r.den());
        }
}

TEST(Rational, ParsesIntegerFractionAndDecimal) {
    EXPECT_EQ(Rational::parse("7"), Rational(7));
    EXPECT_EQ(Rational::parse("-6/4"), Rational(-3, 2));
    EXPECT_EQ(Rational::parse("-1.25"), Rational(-5, 4));
    EXPECT_THROW(Rational::parse("1/0"), std::exception);
    EXPECT_THROW(Rational::parse("x"), ParseError);
}

TEST(CoefficientGcd, Examples) {
    std::vector<std::int64_t> const a{2, 4, 6};
    std::vector<std::int64_t> const z{0, 0};
    std::vector<std::int64_t> const c{3, 5};
    EXPECT_EQ(coefficient_gcd(a, 8), 2);
    EXPECT_EQ(coefficient_gcd(z, 5), 5);
    EXPECT_EQ(coefficient_gcd(c, 7), 1);
    EXPECT_EQ(coefficient_gcd({}, 9), 9);
}

TEST(Dirichlet, Examples) {
    EXPECT_EQ(dirichlet_approx(0.5, 10), Rational(1, 2));
    Rational const r = dirichlet_approx(std::numbers::pi - 3.0, 10);
    EXPECT_EQ(r, Rational(1, 7));
    EXPECT_NEAR(std::fabs(std::numbers::pi - 3.0 - 1.0 / 7.0), 0.00126, 1e-5);
    EXPECT_EQ(dirichlet_approx(Frequency{Rational(1, 3)}, 2), Rational(0));
}

TEST(Dirichlet, BoundsHoldExactlyForRationalInput) {
    for (std::int64_t q0 = 1; q0 <= 40; ++q0)
        for (std::int64_t a0 = -q0; a0 <= 2 * q0; ++a0)
            for (std::int64_t Q : {1, 2, 3, 5, 8, 13, 50}) {
                BigRational const xi(a0, q0);
                Rational const r = dirichlet_approx(xi, Q);
                expect_reduced(r);
                ASSERT_GE(r.den(), 1);
                ASSERT_LE(r.den(), Q);
                BigRational d = xi - exact_value(r);
                if (d < 0) d = -d;
                ASSERT_LE(d * r.den() * Q, 1) << a0 << "/" << q0 << " Q=" << Q;
            }
}

TEST(Dirichlet, BoundsHoldForRandomDoubles) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        double const xi = u(rng);
        std::int64_t const Q = 1 + static_cast<std::int64_t>(rng() % 100000);
        Rational const r = dirichlet_approx(xi, Q);
        ASSERT_LE(r.den(), Q);
        ASSERT_LE(std::fabs(xi - r.to_double()), 1.0 / (static_cast<double>(r.den()) * Q) + 1e-12);
    }
}

TEST(Dirichlet, SmallDenominatorAgreesWithSearchOracleOnBound) {
    // The convergent and the search may pick different admissible fractions; both must satisfy the bound
    // and the search oracle must never find a fraction when the library claims none exists.
    for (std::int64_t q0 = 1; q0 <= 25; ++q0)
        for (std::int64_t a0 = 0; a0 < q0; ++a0)
            for (std::int64_t Q = 1; Q <= 12; ++Q) {
                BigRational const xi(a0, q0);
                Rational const lib = dirichlet_approx(xi, Q);
                Rational const orc = oracle::dirichlet_search(xi, Q);
                BigRational d1 = xi - exact_value(lib);
                BigRational d2 = xi - exact_value(orc);
                if (d1 < 0) d1 = -d1;
                if (d2 < 0) d2 = -d2;
                ASSERT_LE(d1 * lib.den() * Q, 1);
                ASSERT_LE(d2 * orc.den() * Q, 1);
            }
}

TEST(Rescale, Examples) {
    EXPECT_EQ(rescale_approx(Rational(1, 3), Rational(1, 3), 2, 3), Rational(2, 3));
    EXPECT_EQ(rescale_approx(Rational(1, 2), Rational(1, 2), 2, 2), Rational(0));
    EXPECT_EQ(rescale_approx(Rational(5, 7), Rational(5, 7), 3, 7), Rational(1, 7));
}

TEST(Rescale, MatchesExhaustiveSmallestDenominator) {
    for (std::int64_t q = 1; q <= 12; ++q)
        for (std::int64_t a = 0; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            for (std::int64_t M = q; M <= 14; M += 3)
                for (std::int64_t Q = 1; Q <= 6; ++Q) {
                    Rational const th(a, q);
                    auto const expected = oracle::rescale_search(exact_value(th), q, Q, M);
                    ASSERT_TRUE(expected.has_value());
                    Rational const got = rescale_approx(th, th, Q, M);
                    EXPECT_EQ(got, *expected) << a << "/" << q << " Q=" << Q << " M=" << M;
                    EXPECT_LE(q, 2 * Q * got.den());
                    EXPECT_LE(got.den(), 2 * M);
                }
        }
}

TEST(Rescale, PerturbedThetaStillSatisfiesBothBounds) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        std::int64_t const M = 5 + static_cast<std::int64_t>(rng() % 60);
        std::int64_t const q = 1 + static_cast<std::int64_t>(rng() % M);
        std::int64_t a = static_cast<std::int64_t>(rng() % q);
        while (std::gcd(a, q) != 1) a = (a + 1) % q;
        std::int64_t const Q = 1 + static_cast<std::int64_t>(rng() % 20);
        Rational const th = Rational(a, q) + Rational(static_cast<std::int64_t>(rng() % 7) - 3, 4 * q * q);
        Rational const r = rescale_approx(th, Rational(a, q), Q, M);
        Rational const diff = (th * Rational(Q) - r).torus_norm();
        EXPECT_LE(diff * Rational(2 * r.den() * M), Rational(1));
        EXPECT_LE(q, 2 * Q * r.den());
        EXPECT_LE(r.den(), 2 * M);
    }
}

TEST(Rescale, RejectsViolatedPreconditions) {
    EXPECT_THROW(rescale_approx(Rational(1, 2), Rational(1, 3), 2, 3), ContractError);
    EXPECT_THROW(rescale_approx(Rational(1, 5), Rational(1, 5), 2, 3), ContractError);
    EXPECT_THROW(rescale_approx(Rational(4, 3), Rational(4, 3), 2, 3), ContractError);
}

TEST(ExactValue, MatchesBinaryDouble) {
    EXPECT_EQ(exact_value(0.5), BigRational(1, 2));
    EXPECT_EQ(exact_value(-0.75), BigRational(-3, 4));
    EXPECT_EQ(exact_value(0.1) * BigRational(BigInt(1) << 55), BigRational(BigInt(3602879701896397)));
    EXPECT_THROW(exact_value(std::nan("")), DomainError);
}
