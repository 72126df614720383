// SPDX-License-Identifier: Apache-2.0
#include <newton_circle/iw.hpp>

#include <gtest/gtest.h>

using namespace nc;

namespace {

std::vector<std::int64_t> divisors_of(std::int64_t n) {
    std::vector<std::int64_t> d;
    for (std::int64_t i = 1; i <= n; ++i)
        if (n % i == 0) d.push_back(i);
    return d;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

/// Direct membership test from the definition: q = Q w with Q | Q0 and w built from medium primes.
bool member_by_definition(std::int64_t q, std::int64_t N0, std::int64_t D, std::int64_t top) {
    std::map<std::int64_t, std::int64_t> fac;
    std::int64_t n = q;
    for (std::int64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            ++fac[p];
            n /= p;
        }
    if (n > 1) ++fac[n];
    std::int64_t medium = 0;
    for (auto [p, e] : fac) {
        if (p <= N0) {
            std::int64_t v = 0;
            for (std::int64_t pk = p; pk <= N0; pk *= p) v += N0 / pk;
            if (e > D * v) return false;
        } else {
            if (p > top || e > D) return false;
            ++medium;
        }
    }
    return medium <= D;
}

} // namespace

TEST(IWParams, DerivedConstants) {
    IWParams const half{Rational(1, 2), 2};
    EXPECT_EQ(half.D(), 5);
    EXPECT_EQ(half.N0(), 2);
    EXPECT_EQ(iw_q0(half), 32);
    IWParams const quarter{Rational(1, 4), 3};
    EXPECT_EQ(quarter.D(), 9);
    EXPECT_EQ(IWParams({Rational(1, 2), 8}).N0(), 5);   // floor(2^2) + 1
    EXPECT_EQ(IWParams({Rational(1, 2), 7}).N0(), 4);   // floor(2^1.75) + 1
    EXPECT_EQ(IWParams({Rational(2, 3), 9}).N0(), 9);   // floor(2^3) + 1
    EXPECT_THROW(build_p_le(IWParams{Rational(3, 2), 1}), ConfigurationError);
    EXPECT_THROW(build_p_le(IWParams{Rational(1, 2), 5, 16}), ConfigurationError);
}

TEST(BuildPLe, LevelTwoExample) {
    auto const s = build_p_le(IWParams{Rational(1, 2), 2});
    EXPECT_EQ(s.medium_primes, (std::vector<std::int64_t>{3}));
    EXPECT_EQ(s.w_le, (std::vector<std::int64_t>{3, 9, 27, 81, 243}));
    std::vector<std::int64_t> expected;
    for (std::int64_t d : divisors_of(32)) {
        expected.push_back(d);
        for (std::int64_t w : {3, 9, 27, 81, 243}) expected.push_back(d * w);
    }
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(s.p_le, expected);
    EXPECT_FALSE(s.truncated);
    for (std::int64_t n = 1; n <= 4; ++n) EXPECT_TRUE(std::binary_search(s.p_le.begin(), s.p_le.end(), n));
}

TEST(BuildPLe, LevelZeroIsDivisorsOf32) {
    auto const s = build_p_le(IWParams{Rational(1, 2), 0});
    EXPECT_EQ(s.p_le, (std::vector<std::int64_t>{1, 2, 4, 8, 16, 32}));
}

TEST(BuildPLe, MatchesDefinitionByTrialFactorization) {
    for (Rational rho : {Rational(1, 2), Rational(1, 4), Rational(2, 3)})
        for (std::int64_t l = 0; l <= 4; ++l) {
            std::int64_t const cap = 200000;
            auto const s = build_p_le(IWParams{rho, l, cap});
            IWParams const p{rho, l, cap};
            std::vector<std::int64_t> expected;
            for (std::int64_t q = 1; q <= cap; ++q)
                if (member_by_definition(q, p.N0(), p.D(), std::int64_t{1} << l)) expected.push_back(q);
            EXPECT_EQ(s.p_le, expected) << rho << " l=" << l;
        }
}

TEST(BuildPLe, TruncationIsFlagged) {
    auto const s = build_p_le(IWParams{Rational(1, 2), 2, 100});
    EXPECT_TRUE(s.truncated);
    EXPECT_LE(s.p_le.back(), 100);
}

TEST(BuildSigma, Examples) {
    auto const s0 = build_p_le(IWParams{Rational(1, 2), 0});
    auto const sig0 = build_sigma(s0, 1);
    EXPECT_EQ(sig0.size(), 32u);
    std::int64_t q1 = 0;
    for (auto const& f : sig0) q1 += f.q == 1;
    EXPECT_EQ(q1, 1);
    EXPECT_EQ(sig0.front(), (FractionTuple{{0}, 1}));

    auto const s1 = build_p_le(IWParams{Rational(1, 2), 1});
    auto const sig1 = build_sigma(s1, 1);
    for (auto const& f : sig0) EXPECT_TRUE(std::find(sig1.begin(), sig1.end(), f) != sig1.end());
    EXPECT_TRUE(sigma_level(sig1, sig0).size() == sig1.size() - sig0.size());
    EXPECT_THROW(build_sigma(s0, 3), ContractError);
    EXPECT_THROW(build_sigma(build_p_le(IWParams{Rational(1, 2), 3}), 2, 1000), ResourceError);
}

TEST(BuildSigma, EntriesAreReducedAndCountIsTotientSum) {
    for (int d : {1, 2}) {
        auto const s = build_p_le(IWParams{Rational(1, 2), d == 1 ? 2 : 1});
        auto const sig = build_sigma(s, d);
        std::int64_t expected = 0;
        for (std::int64_t q : s.p_le) expected += jordan_totient(q, d);
        EXPECT_EQ(static_cast<std::int64_t>(sig.size()), expected);
        for (auto const& f : sig) {
            std::int64_t g = f.q;
            for (auto a : f.a) {
                EXPECT_GE(a, 0);
                EXPECT_LT(a, f.q);
                g = std::gcd(g, a);
            }
            ASSERT_EQ(g, 1);
        }
    }
    for (std::int64_t q = 1; q <= 200; ++q) {
        EXPECT_EQ(jordan_totient(q, 1), euler_phi(q));
        std::int64_t c = 0;
        for (std::int64_t a = 0; a < q; ++a)
            for (std::int64_t b = 0; b < q; ++b) c += std::gcd(std::gcd(a, b), q) == 1;
        EXPECT_EQ(jordan_totient(q, 2), c);
    }
}

TEST(VerifyIW, PropertiesHold) {
    for (auto [rho, lmax] : {std::pair{Rational(1, 2), 3}, std::pair{Rational(1, 4), 2}, std::pair{Rational(1, 4), 3}}) {
        auto const rep = verify_iw_properties(rho, lmax);
        EXPECT_TRUE(rep.all_pass()) << rho;
        EXPECT_EQ(rep.checks.size(), static_cast<std::size_t>(4 * (lmax + 1)));
    }
}

TEST(VerifyIW, BrokenSetFailsContainment) {
    std::vector<std::vector<std::int64_t>> sets;
    for (std::int64_t l = 0; l <= 2; ++l) sets.push_back(build_p_le(IWParams{Rational(1, 2), l}).p_le);
    auto& level2 = sets[2];
    level2.erase(std::find(level2.begin(), level2.end(), 3));
    auto const rep = check_iw_sets(sets);
    EXPECT_FALSE(rep.all_pass());
    bool containment_failed = false;
    for (auto const& c : rep.checks)
        if (c.name == "l=2: [2^l] in P_{<=l} (missing count)") containment_failed = !c.pass;
    EXPECT_TRUE(containment_failed);
}

TEST(Lcm, LogReported) {
    auto const s = build_p_le(IWParams{Rational(1, 2), 2});
    EXPECT_EQ(lcm_of(s.p_le), BigInt(32 * 243));
    EXPECT_NEAR(log2_big(lcm_of(s.p_le)), std::log2(32.0 * 243.0), 1e-12);
    BigInt const big = BigInt(1) << 200;
    EXPECT_NEAR(log2_big(big * 3), 200 + std::log2(3.0), 1e-12);
}
