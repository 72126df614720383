// SPDX-License-Identifier: Apache-2.0
#include <newton_circle/newton.hpp>
#include <newton_circle/oracle.hpp>
#include <newton_circle/poly_parse.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace nc;

namespace {

Poly2 random_nondegenerate(std::mt19937_64& rng) {
    while (true) {
        Poly2 p;
        int const n = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) {
            int const e1 = static_cast<int>(rng() % 7);
            int const e2 = static_cast<int>(rng() % (7 - e1));
            if (e1 + e2 == 0) continue;
            p.add_term({e1, e2}, BigInt(1 + static_cast<std::int64_t>(rng() % 5)));
        }
        if (!p.is_zero() && !is_degenerate(p)) return p;
    }
}

} // namespace

TEST(BuildDiagram, SingleMonomial) {
    auto const d = build_diagram(parse_poly("m1^2*m2^3"));
    ASSERT_EQ(d.r(), 1);
    EXPECT_EQ(d.vertex(1), (Exponent{2, 3}));
    EXPECT_EQ(d.normals, (std::vector<IntPair>{{0, 1}, {1, 0}}));
    EXPECT_EQ(d.determinant(1), 1);
    EXPECT_TRUE(d.gap(1).infinite);
    EXPECT_TRUE(in_cone_w(d, 1, {1, 1}));
    EXPECT_TRUE(in_cone_w(d, 1, {7, 2}));
    EXPECT_FALSE(in_cone_w(d, 1, {0, 3}));
}

TEST(BuildDiagram, TwoVertices) {
    auto const d = build_diagram(parse_poly("m1^3*m2 + m1*m2^3"));
    ASSERT_EQ(d.r(), 2);
    EXPECT_EQ(d.vertices, (std::vector<Exponent>{{1, 3}, {3, 1}}));
    EXPECT_EQ(d.normals, (std::vector<IntPair>{{0, 1}, {1, 1}, {1, 0}}));
    EXPECT_EQ(d.determinants, (std::vector<std::int64_t>{1, 1}));
    EXPECT_EQ(d.gap(1).value, Rational(2));
    EXPECT_EQ(d.gap(2).value, Rational(2));
}

TEST(BuildDiagram, DominatedPointIsNotAVertex) {
    auto const d = build_diagram(parse_poly("m1*m2 + m1^2*m2^2"));
    ASSERT_EQ(d.r(), 1);
    EXPECT_EQ(d.vertex(1), (Exponent{2, 2}));
    EXPECT_FALSE(d.gap(1).infinite);
    // (2,2) - (1,1) = (1,1); (1,1).((0,1)+(1,0)) = 2
    EXPECT_EQ(d.gap(1).value, Rational(2));
}

TEST(BuildDiagram, CollinearMiddlePointIsNotACorner) {
    auto const d = build_diagram(parse_poly("m1*m2^3 + m1^2*m2^2 + m1^3*m2"));
    EXPECT_EQ(d.vertices, (std::vector<Exponent>{{1, 3}, {3, 1}}));
}

TEST(BuildDiagram, RejectsDegenerateInput) {
    EXPECT_THROW(build_diagram(parse_poly("m1^2 + m2^3")), DomainError);
    EXPECT_THROW(build_diagram(parse_poly("m1*m2 + 1")), DomainError);
}

TEST(BuildDiagram, MatchesDirectionWitnessOracle) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        Poly2 const p = random_nondegenerate(rng);
        auto const d = build_diagram(p);
        std::set<Exponent> const got(d.vertices.begin(), d.vertices.end());
        ASSERT_EQ(got, oracle::newton_vertices(p)) << p.str();
    }
}

TEST(BuildDiagram, StructuralInvariants) {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 300; ++i) {
        Poly2 const p = random_nondegenerate(rng);
        auto const d = build_diagram(p);
        ASSERT_EQ(d.normals.front(), (IntPair{0, 1}));
        ASSERT_EQ(d.normals.back(), (IntPair{1, 0}));
        for (int j = 1; j + 1 <= d.r(); ++j) {
            EXPECT_LT(d.vertex(j).e1, d.vertex(j + 1).e1);
            EXPECT_GT(d.vertex(j).e2, d.vertex(j + 1).e2);
            IntPair const w = d.normal(j);
            EXPECT_GT(w.x, 0);
            EXPECT_GT(w.y, 0);
            EXPECT_EQ(std::gcd(w.x, w.y), 1);
        }
        for (int j = 1; j < static_cast<int>(d.normals.size()); ++j) {
            // strictly decreasing slope omega_2 / omega_1 (with omega_0 = infinity)
            IntPair const a = d.normals[j - 1];
            IntPair const b = d.normals[j];
            EXPECT_GT(a.y * b.x, b.y * a.x);
        }
        for (int j = 1; j <= d.r(); ++j) {
            EXPECT_GT(d.determinant(j), 0);
            Exponent const vj = d.vertex(j);
            for (auto const& v : d.support) {
                Exponent const diff{v.e1 - vj.e1, v.e2 - vj.e2};
                std::int64_t const s1 = detail::dot(d.normal(j), diff);
                std::int64_t const s0 = detail::dot(d.normal(j - 1), diff);
                EXPECT_LE(s1, 0);
                EXPECT_LE(s0, 0);
                if (!(v == vj)) EXPECT_TRUE(s1 < 0 || s0 < 0);
            }
        }
    }
}

TEST(Sigma, MatchesBruteForceMinimum) {
    std::mt19937_64 rng(44);
    for (int i = 0; i < 200; ++i) {
        Poly2 const p = random_nondegenerate(rng);
        auto const d = build_diagram(p);
        for (int j = 1; j <= d.r(); ++j) {
            std::optional<Rational> best;
            for (auto const& v : d.support) {
                if (v == d.vertex(j)) continue;
                Rational const t(static_cast<std::int64_t>(d.vertex(j).e1 - v.e1) * (d.normal(j - 1).x + d.normal(j).x) +
                                     static_cast<std::int64_t>(d.vertex(j).e2 - v.e2) * (d.normal(j - 1).y + d.normal(j).y),
                                 d.determinant(j));
                if (!best || t < *best) best = t;
            }
            Gap const g = sigma(d, j);
            ASSERT_EQ(g.infinite, !best.has_value());
            if (best) {
                EXPECT_EQ(g.value, *best);
                EXPECT_GT(g.value, Rational(0));
            }
        }
    }
}

TEST(Sectors, MembershipExamples) {
    auto const d = build_diagram(parse_poly("m1^3*m2 + m1*m2^3"));
    EXPECT_EQ(sector_membership(d, {1, 2}), (std::vector<int>{1}));
    EXPECT_EQ(sector_membership(d, {1, 1}), (std::vector<int>{1, 2}));
    EXPECT_EQ(sector_membership(d, {0, 0}), (std::vector<int>{1, 2}));
    EXPECT_EQ(sector_membership(d, {5, 0}), (std::vector<int>{2}));
    EXPECT_EQ(canonical_sector(d, {1, 1}), 1);
    EXPECT_THROW(sector_membership(d, {-1, 0}), DomainError);
}

TEST(Sectors, CoveringAndDisjointness) {
    std::mt19937_64 rng(45);
    for (int i = 0; i < 60; ++i) {
        auto const d = build_diagram(random_nondegenerate(rng));
        for (std::int64_t a = 0; a <= 40; ++a)
            for (std::int64_t b = 0; b <= 40; ++b) {
                ASSERT_FALSE(sector_membership(d, {a, b}).empty());
                if (a == 0 || b == 0) continue;
                int open = 0;
                for (int j = 1; j <= d.r(); ++j) open += in_cone_w(d, j, {a, b});
                ASSERT_LE(open, 1);
            }
    }
}

TEST(Sectors, SlopeBoundsOnSectorPoints) {
    std::mt19937_64 rng(46);
    for (int i = 0; i < 60; ++i) {
        auto const d = build_diagram(random_nondegenerate(rng));
        for (std::int64_t a = 0; a <= 30; ++a)
            for (std::int64_t b = 0; b <= 30; ++b)
                for (int j : sector_membership(d, {a, b})) {
                    // omega_{j,2}/omega_{j,1} a <= b <= omega_{j-1,2}/omega_{j-1,1} a
                    IntPair const w = d.normal(j);
                    IntPair const u = d.normal(j - 1);
                    EXPECT_LE(w.y * a, w.x * b);
                    if (u.x != 0) EXPECT_LE(b * u.x, u.y * a);
                }
    }
}

TEST(Subsector, Examples) {
    auto const d = build_diagram(parse_poly("m1^3*m2 + m1*m2^3"));
    auto const s = subsector(d, 1, {1, 2});
    EXPECT_EQ(s.branch, 1);
    EXPECT_EQ(s.level_N, 1);
    EXPECT_EQ(s.offset_n, 0);
    auto const t = subsector(d, 1, {1, 3});
    EXPECT_EQ(t.branch, 1);
    EXPECT_EQ(t.level_N, 1);
    EXPECT_EQ(t.offset_n, 1);
    auto const z = subsector(d, 2, {0, 0});
    EXPECT_EQ(z.level_N, 0);
    EXPECT_EQ(z.offset_n, 0);
    EXPECT_THROW(subsector(d, 2, {1, 2}), DomainError);
}

TEST(Subsector, ReconstructionAndGapInequality) {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 60; ++i) {
        Poly2 const p = random_nondegenerate(rng);
        auto const d = build_diagram(p);
        for (std::int64_t a = 0; a <= 25; ++a)
            for (std::int64_t b = 0; b <= 25; ++b)
                for (int j : sector_membership(d, {a, b})) {
                    auto const s = subsector(d, j, {a, b});
                    IntPair const r = reconstruct(d, s);
                    ASSERT_EQ(r, (IntPair{d.determinant(j) * a, d.determinant(j) * b}));
                    Gap const g = d.gap(j);
                    if (g.infinite) continue;
                    for (auto const& v : d.support) {
                        if (v == d.vertex(j)) continue;
                        std::int64_t const lhs = a * (v.e1 - d.vertex(j).e1) + b * (v.e2 - d.vertex(j).e2);
                        ASSERT_LE(Rational(lhs), -(g.value * Rational(s.level_N))) << p.str();
                    }
                }
    }
}

TEST(DominantMonomial, ReadsVertexCoefficient) {
    Poly2 const p = parse_poly("m1^3*m2 + m1*m2^3");
    auto const d = build_diagram(p);
    EXPECT_EQ(dominant_monomial(d, 1, p), parse_poly("m1*m2^3"));
    EXPECT_EQ(dominant_monomial(d, 2, p), parse_poly("m1^3*m2"));
    Poly2 const q = parse_poly("5*m1^2*m2^3");
    EXPECT_EQ(dominant_monomial(build_diagram(q), 1, q), q);
}

TEST(MStar, Examples) {
    auto const one = build_diagram(parse_poly("m1^2*m2^3"));
    EXPECT_EQ(m_star(one, 1, 4, 8), 8);
    auto const two = build_diagram(parse_poly("m1^3*m2 + m1*m2^3"));
    EXPECT_EQ(m_star(two, 1, 2, 16), 16);
    EXPECT_EQ(m_star(two, 2, 16, 2), 16);
    EXPECT_EQ(m_star(two, 1, 8, 8), 8);
    EXPECT_THROW(m_star(two, 1, 16, 2), DomainError);
    auto const three = build_diagram(parse_poly("m1*m2^6 + m1^4*m2^4 + m1^6*m2"));
    ASSERT_EQ(three.r(), 3);
    EXPECT_EQ(m_star(three, 2, 16, 16), 16);
}
