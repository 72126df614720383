// SPDX-License-Identifier: Apache-2.0
#include <newton_circle/expsum.hpp>
#include <newton_circle/oracle.hpp>
#include <newton_circle/poly_parse.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

using namespace nc;

namespace {

std::complex<double> as_double(std::complex<long double> z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

RealPoly2 exact(char const* text, Rational xi) { return scale(parse_poly(text), Frequency{xi}); }

} // namespace

TEST(WeylSum, Examples) {
    std::vector<Frequency> half{Rational(1, 2)};
    EXPECT_EQ(weyl_sum(half, 4).value, std::complex<double>(0.0, 0.0));
    std::vector<Frequency> zero(5, Frequency{Rational(0)});
    EXPECT_EQ(weyl_sum(zero, 17).value, std::complex<double>(17.0, 0.0));
    std::vector<Frequency> third{Rational(1, 3)};
    auto const v = weyl_sum(third, 3);
    EXPECT_NEAR(std::abs(v.value), 0.0, 1e-15);
    EXPECT_EQ(v.mode, PhaseMode::ExactRational);
    EXPECT_EQ(v.error_budget, 0.0);
    EXPECT_THROW(weyl_sum(half, 3, 3), ContractError);
    EXPECT_THROW(weyl_sum(std::vector<Frequency>(9, Frequency{0.0}), 3), ContractError);
}

TEST(WeylSum, MatchesOracleForRealFrequencies) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 40; ++i) {
        int const k = 1 + static_cast<int>(rng() % 4);
        std::vector<Frequency> xi;
        std::map<Exponent, double> q;
        for (int j = 1; j <= k; ++j) {
            double const x = u(rng);
            xi.emplace_back(x);
            q[{0, j}] = x;
        }
        std::int64_t const N = 1 + static_cast<std::int64_t>(rng() % 300);
        auto const v = weyl_sum(xi, N);
        EXPECT_EQ(v.mode, PhaseMode::Float);
        auto const ref = as_double(oracle::double_sum_real(q, 0, 1, 0, N));
        EXPECT_LE(std::abs(v.value - ref), std::max(v.error_budget, 1e-12));
        EXPECT_LE(std::abs(v.value), static_cast<double>(v.term_count) + v.error_budget);
    }
}

TEST(WeylSum, GeometricBoundForLinearPhase) {
    for (std::int64_t q = 2; q <= 50; ++q)
        for (std::int64_t a = 1; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            Rational const xi(a, q);
            double const bound = 1.0 / xi.torus_norm().to_double();
            for (std::int64_t N : {1, 7, 100, 999, 10000}) {
                std::vector<Frequency> f{xi};
                EXPECT_LE(std::abs(weyl_sum(f, N).value), bound + 1e-9);
            }
        }
}

TEST(DoubleSum, Examples) {
    RealPoly2 const zero;
    EXPECT_EQ(double_sum(zero, 0, 3, 0, 5).value, std::complex<double>(15.0, 0.0));
    auto const v = double_sum(exact("m1*m2", Rational(1, 2)), 0, 2, 0, 2);
    EXPECT_EQ(v.value, std::complex<double>(2.0, 0.0));
    EXPECT_EQ(v.mode, PhaseMode::ExactRational);
    EXPECT_EQ(v.term_count, 4u);
    EXPECT_EQ(v.histogram, (std::vector<std::int64_t>{3, 1}));
    auto const w = double_sum(exact("3*m1^2*m2 - m2^5", Rational(7)), 2, 9, 1, 6);
    EXPECT_EQ(w.value, std::complex<double>(35.0, 0.0));
    EXPECT_THROW(double_sum(zero, 2, 1, 0, 1), ContractError);
}

TEST(DoubleSum, ExactModeMatchesRationalOracle) {
    std::mt19937_64 rng(5);
    char const* polys[] = {"m1*m2", "m1^2*m2^3", "m1^3*m2 + m1*m2^3", "2*m1*m2 - m2^4", "m1^2*m2 + 5*m1*m2^2 + m1"};
    for (char const* text : polys)
        for (int i = 0; i < 12; ++i) {
            std::int64_t const q = 1 + static_cast<std::int64_t>(rng() % 60);
            std::int64_t const a = static_cast<std::int64_t>(rng() % (3 * q)) - q;
            Rational const xi(a, q);
            auto const p = parse_poly(text);
            std::int64_t const M1 = 1 + static_cast<std::int64_t>(rng() % 30);
            std::int64_t const M2 = 1 + static_cast<std::int64_t>(rng() % 30);
            auto const v = double_sum(scale(p, Frequency{xi}), 0, M1, 0, M2);
            auto const ref = as_double(oracle::double_sum(p, xi, 0, M1, 0, M2));
            EXPECT_NEAR(std::abs(v.value - ref), 0.0, 1e-11) << text << " " << xi;
        }
}

TEST(DoubleSum, FloatModeMatchesOracle) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        std::map<Exponent, double> q{{{1, 1}, u(rng)}, {{2, 1}, u(rng)}, {{0, 3}, u(rng) * 1e-3}};
        std::int64_t const M1 = 1 + static_cast<std::int64_t>(rng() % 25);
        std::int64_t const M2 = 1 + static_cast<std::int64_t>(rng() % 25);
        auto const v = double_sum(RealPoly2::from_doubles(q), 0, M1, 0, M2);
        EXPECT_EQ(v.mode, PhaseMode::Float);
        auto const ref = as_double(oracle::double_sum_real(q, 0, M1, 0, M2));
        EXPECT_LE(std::abs(v.value - ref), v.error_budget);
    }
}

TEST(DoubleSum, LargeDenominatorUsesDirectModularPath) {
    Rational const xi(1, 100003);
    auto const p = parse_poly("m1^2*m2 + m2^3");
    auto const v = double_sum(scale(p, Frequency{xi}), 0, 20, 0, 20);
    EXPECT_EQ(v.mode, PhaseMode::Float);
    auto const ref = as_double(oracle::double_sum(p, xi, 0, 20, 0, 20));
    EXPECT_LE(std::abs(v.value - ref), v.error_budget);
}

TEST(DoubleSum, ConjugationIsExactInExactMode) {
    auto const p = parse_poly("m1^3*m2 + m1*m2^3 - 4*m1*m2");
    for (std::int64_t q : {3, 7, 10, 64, 97}) {
        RealPoly2 const Q = scale(p, Frequency{Rational(1, q)});
        auto const a = double_sum(Q, 0, 40, 3, 37);
        auto const b = double_sum(Q.negated(), 0, 40, 3, 37);
        EXPECT_EQ(a.value.real(), b.value.real());
        EXPECT_EQ(a.value.imag(), -b.value.imag());
    }
}

TEST(DoubleSum, RangeAdditivity) {
    auto const p = parse_poly("m1^2*m2 + m1*m2");
    RealPoly2 const ex = scale(p, Frequency{Rational(5, 11)});
    for (std::int64_t L = 0; L <= 30; L += 5) {
        auto const whole = double_sum(ex, 0, 30, 0, 12);
        auto const left = double_sum(ex, 0, L, 0, 12);
        auto const right = double_sum(ex, L, 30, 0, 12);
        std::vector<std::int64_t> combined(whole.histogram.size());
        for (std::size_t t = 0; t < combined.size(); ++t)
            combined[t] = (left.histogram.empty() ? 0 : left.histogram[t]) + (right.histogram.empty() ? 0 : right.histogram[t]);
        EXPECT_EQ(whole.histogram, combined);
    }
    RealPoly2 const fl = scale(p, Frequency{0.3183098861837907});
    for (std::int64_t L = 0; L <= 30; L += 5) {
        auto const whole = double_sum(fl, 0, 30, 0, 12).value;
        auto const split = double_sum(fl, 0, L, 0, 12).value + double_sum(fl, L, 30, 0, 12).value;
        EXPECT_LE(std::abs(whole - split), 1e-10);
    }
}

TEST(DoubleSum, OnePeriodicityForIntegerPolynomials) {
    auto const p = parse_poly("m1^2*m2^3 - 2*m1*m2");
    for (std::int64_t q : {2, 5, 9})
        for (std::int64_t a = 0; a < q; ++a) {
            auto const x = double_sum(scale(p, Frequency{Rational(a, q)}), 0, 15, 0, 15);
            auto const y = double_sum(scale(p, Frequency{Rational(a + q, q)}), 0, 15, 0, 15);
            EXPECT_EQ(x.value, y.value);
        }
    auto const x = double_sum(scale(p, Frequency{0.125}), 0, 15, 0, 15);
    auto const y = double_sum(scale(p, Frequency{1.125}), 0, 15, 0, 15);
    EXPECT_EQ(x.value, y.value);
}

TEST(DoubleSum, ThreadCountDoesNotChangeResults) {
    auto const p = parse_poly("m1^2*m2 + 3*m1*m2^2");
    RealPoly2 const fl = scale(p, Frequency{0.1234567});
    RealPoly2 const ex = scale(p, Frequency{Rational(3, 101)});
    ::setenv("NEWTON_CIRCLE_THREADS", "1", 1);
    auto const a1 = double_sum(fl, 0, 200, 0, 50).value;
    auto const b1 = double_sum(ex, 0, 200, 0, 50).value;
    ::setenv("NEWTON_CIRCLE_THREADS", "3", 1);
    auto const a3 = double_sum(fl, 0, 200, 0, 50).value;
    auto const b3 = double_sum(ex, 0, 200, 0, 50).value;
    ::unsetenv("NEWTON_CIRCLE_THREADS");
    EXPECT_EQ(a1, a3);
    EXPECT_EQ(b1, b3);
}

TEST(DoubleSumAbs, ExamplesAndTriangleDomination) {
    RealPoly2 const zero;
    EXPECT_DOUBLE_EQ(double_sum_abs(zero, 1, 4, 2, 9, 1), 21.0);
    RealPoly2 const h = exact("m1*m2", Rational(1, 2));
    EXPECT_NEAR(double_sum_abs(h, 0, 2, 0, 2, 1), 2.0, 1e-15);
    EXPECT_THROW(double_sum_abs(h, 0, 2, 0, 2, 3), DomainError);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 30; ++i) {
        Rational const xi(static_cast<std::int64_t>(rng() % 50), 1 + static_cast<std::int64_t>(rng() % 50));
        RealPoly2 const Q = scale(parse_poly("m1^2*m2 + m1*m2^2"), Frequency{xi});
        double const s = std::abs(double_sum(Q, 0, 20, 0, 17).value);
        EXPECT_LE(s, double_sum_abs(Q, 0, 20, 0, 17, 1) + 1e-12);
        EXPECT_LE(s, double_sum_abs(Q, 0, 20, 0, 17, 2) + 1e-12);
    }
}

TEST(SumIntegralGap, Examples) {
    std::vector<double> zero{0.0};
    EXPECT_NEAR(sum_integral_gap(zero, 0.0, 7.5), 0.5, 1e-12);
    std::vector<double> quarter{0.0, 0.25};
    EXPECT_NEAR(sum_integral_gap(quarter, 0.0, 8.0), 0.0, 1e-12);
    std::vector<double> tenth{0.0, 0.1};
    double const g = sum_integral_gap(tenth, 0.0, 10.0);
    // sum over n = 1..10 of e(n/10) is 0; the integral over a full period is 0 as well.
    EXPECT_NEAR(g, 0.0, 1e-12);
    EXPECT_LE(g, 3.0);
}

TEST(SumIntegralGap, IndependentNumericCheck) {
    // phase s^2 / 200 on (0, 40]: derivative s/100 <= 0.4
    std::vector<double> ph{0.0, 0.0, 0.005};
    long double sum_re = 0, sum_im = 0;
    for (int n = 1; n <= 40; ++n) {
        long double const a = 2 * std::numbers::pi_v<long double> * 0.005L * n * n;
        sum_re += std::cos(a);
        sum_im += std::sin(a);
    }
    // trapezoid-free reference: Simpson with 200000 panels
    long double int_re = 0, int_im = 0;
    int const n = 200000;
    long double const h = 40.0L / n;
    for (int i = 0; i <= n; ++i) {
        long double const s = i * h;
        long double const w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        long double const a = 2 * std::numbers::pi_v<long double> * 0.005L * s * s;
        int_re += w * std::cos(a);
        int_im += w * std::sin(a);
    }
    int_re *= h / 3;
    int_im *= h / 3;
    double const expected = static_cast<double>(std::hypot(sum_re - int_re, sum_im - int_im));
    EXPECT_NEAR(sum_integral_gap(ph, 0.0, 40.0), expected, 1e-9);
    EXPECT_LE(expected, 3.0);
}

TEST(SumIntegralGap, RejectsViolatedHypotheses) {
    std::vector<double> steep{0.0, 0.75};
    EXPECT_THROW(sum_integral_gap(steep, 0.0, 4.0), ContractError);
    std::vector<double> wiggle{0.0, 0.0, 0.0, 0.001};
    EXPECT_THROW(sum_integral_gap(wiggle, -5.0, 5.0), ContractError);
    std::vector<double> ok{0.0, 0.1};
    EXPECT_THROW(sum_integral_gap(ok, 1.0, 1.0), ContractError);
}
