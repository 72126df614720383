// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Named verification suites. Each returns a VerificationReport whose checks
 * compare library output against an exact identity or a brute-force reference
 * from oracle.hpp. The CLI `verify` command and the acceptance runner both
 * call these.
 */

#include "circle.hpp"
#include "complete.hpp"
#include "ergodic.hpp"
#include "iw.hpp"
#include "newton.hpp"
#include "oracle.hpp"
#include "osc.hpp"
#include "poly_parse.hpp"
#include "report.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace nc {

struct SuiteOptions {
    std::uint64_t seed = 1;
    /// iw suite
    std::vector<Rational> rhos{Rational(1, 2), Rational(1, 4)};
    std::int64_t lmax = 3;
    std::int64_t enumeration_cap = kDefaultEnumerationCap;
    /// osc suite
    int families = 500;
    int max_length = 64;
};

namespace detail {

/// Degree <= 6, at most 8 terms, coefficients in 1..5, with a mixed monomial.
inline Poly2 random_nondegenerate(std::mt19937_64& rng) {
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

inline UniPoly random_unipoly(std::mt19937_64& rng) {
    UniPoly p;
    int const deg = 1 + static_cast<int>(rng() % 3);
    for (int k = 1; k <= deg; ++k) p.add(k, BigInt(static_cast<std::int64_t>(rng() % 7) - 3));
    if (p.is_zero()) p.add(1, BigInt(1));
    return p;
}

inline FiniteFunction random_finite_function(std::mt19937_64& rng) {
    FiniteFunction f;
    int const n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i)
        f.set(static_cast<std::int64_t>(rng() % 41) - 20,
              {static_cast<double>(rng() % 1000) / 250.0 - 2.0, static_cast<double>(rng() % 1000) / 250.0 - 2.0});
    return f;
}

inline double to_double(BigInt const& v) { return static_cast<double>(v); }

} // namespace detail

/// |S_k(xi; N)|^{2s} against sum_lambda J_{s,k}(N; lambda) e(xi . lambda). The gap is taken
/// relative to N^{2s}, the common size of both sides' trivial bound; |S|^{2s} itself can be
/// arbitrarily close to zero.
inline VerificationReport suite_moment(SuiteOptions const& opt = {}) {
    VerificationReport rep;
    rep.command = "verify moment";
    rep.params["seed"] = opt.seed;
    rep.params["frequencies"] = 100;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int s = 1; s <= 3; ++s)
        for (int k = 1; k <= 3; ++k)
            for (std::int64_t N : {2, 7, 20}) {
                MomentConvolution const conv(s, k, N);
                VinogradovDistribution const dist(conv);
                std::vector<Frequency> zero(k, Rational(0));
                auto const z = moment_identity(dist, conv, zero);
                std::string const tag = "s=" + std::to_string(s) + " k=" + std::to_string(k) + " N=" + std::to_string(N);
                rep.check_near("moment identity at xi=0 is exact, " + tag, z.lhs, z.rhs.real(), 0.0);
                double worst = 0.0;
                double const scale = std::pow(static_cast<double>(N), 2 * s);
                for (int t = 0; t < 100; ++t) {
                    std::vector<Frequency> xi;
                    for (int i = 0; i < k; ++i) xi.emplace_back(u(rng));
                    auto const m = moment_identity(dist, conv, xi);
                    worst = std::max(worst, m.gap / scale);
                }
                rep.check_le("moment identity relative gap, " + tag, worst, 1e-8);
                nlohmann::ordered_json row;
                row["s"] = s;
                row["k"] = k;
                row["N"] = N;
                row["worst_relative_gap"] = worst;
                rep.results.push_back(row);
            }
    return rep;
}

/// J_{2,2}(N) = 2N^2 - N, dominance by lambda = 0, total mass N^{2s}, and the J_{4,2}(N)/N^5 envelope.
inline VerificationReport suite_vinogradov(SuiteOptions const& = {}) {
    VerificationReport rep;
    rep.command = "verify vinogradov";
    bool formula_vs_brute = true;
    for (std::int64_t N = 2; N <= 12; ++N)
        formula_vs_brute &= oracle::vinogradov_count(2, 2, N, {0, 0}) == BigInt(2 * N * N - N);
    rep.check_true("J_{2,2}(N) = 2N^2 - N by tuple enumeration, N <= 12", formula_vs_brute);
    bool formula = true;
    for (std::int64_t N = 2; N <= 50; ++N) formula &= vinogradov_count(2, 2, N, {0, 0}).count == BigInt(2 * N * N - N);
    rep.check_true("J_{2,2}(N) = 2N^2 - N, N <= 50", formula);

    for (auto [s, k, N] : {std::tuple{2, 2, 10}, std::tuple{3, 2, 8}, std::tuple{2, 3, 9}, std::tuple{3, 3, 6}, std::tuple{1, 1, 30}}) {
        MomentConvolution const conv(s, k, N);
        VinogradovDistribution const dist(conv);
        std::vector<std::int64_t> zero(k, 0);
        u128 const at_zero = conv.count(zero);
        u128 total = 0;
        bool dominated = true;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            total += dist.count(i);
            dominated &= dist.count(i) <= at_zero;
        }
        BigInt mass = 1;
        for (int i = 0; i < 2 * s; ++i) mass *= N;
        std::string const tag = "s=" + std::to_string(s) + " k=" + std::to_string(k) + " N=" + std::to_string(N);
        rep.check_true("J(lambda) <= J(0), " + tag, dominated);
        rep.check_true("sum_lambda J(lambda) = N^{2s}, " + tag, to_big(total) == mass);
    }

    double base = 0.0;
    double worst = 0.0;
    for (std::int64_t N = 4; N <= 24; ++N) {
        double const r = detail::to_double(vinogradov_count(4, 2, N, {0, 0}).count) / std::pow(static_cast<double>(N), 5);
        if (N == 4) base = r;
        worst = std::max(worst, r);
        nlohmann::ordered_json row;
        row["N"] = N;
        row["J42_over_N5"] = r;
        rep.results.push_back(row);
    }
    rep.check_le("max J_{4,2}(N)/N^5 over 4 <= N <= 24 within 1.5x its N=4 value", worst, 1.5 * base);
    return rep;
}

/// Hull-chain vertices against the witness oracle, sector covering and disjointness,
/// and the subsector gap inequality in exact arithmetic.
inline VerificationReport suite_newton(SuiteOptions const& opt = {}) {
    VerificationReport rep;
    rep.command = "verify newton";
    rep.params["seed"] = opt.seed;
    rep.params["polynomials"] = 200;
    std::mt19937_64 rng(opt.seed);
    std::size_t vertex_mismatch = 0, uncovered = 0, overlapping = 0, gap_violations = 0, gap_samples = 0;
    for (int i = 0; i < 200; ++i) {
        Poly2 const p = detail::random_nondegenerate(rng);
        auto const d = build_diagram(p);
        std::set<Exponent> const got(d.vertices.begin(), d.vertices.end());
        vertex_mismatch += got != oracle::newton_vertices(p);
        for (std::int64_t a = 0; a <= 40; ++a)
            for (std::int64_t b = 0; b <= 40; ++b) {
                auto const in = sector_membership(d, {a, b});
                uncovered += in.empty();
                if (a > 0 && b > 0) {
                    int open = 0;
                    for (int j = 1; j <= d.r(); ++j) open += in_cone_w(d, j, {a, b});
                    overlapping += open > 1;
                }
                for (int j : in) {
                    auto const s = subsector(d, j, {a, b});
                    Gap const g = d.gap(j);
                    if (s.level_N > 20 || g.infinite) continue;
                    for (auto const& v : d.support) {
                        if (v == d.vertex(j)) continue;
                        ++gap_samples;
                        Rational const lhs(a * (v.e1 - d.vertex(j).e1) + b * (v.e2 - d.vertex(j).e2));
                        gap_violations += !(lhs <= -(g.value * Rational(s.level_N)));
                    }
                }
            }
    }
    rep.check_le("vertex sets differing from the witness oracle", static_cast<double>(vertex_mismatch), 0.0);
    rep.check_le("points of [0,40]^2 outside every sector", static_cast<double>(uncovered), 0.0);
    rep.check_le("points in two open cones W(i), W(j)", static_cast<double>(overlapping), 0.0);
    rep.check_le("subsector gap inequality violations", static_cast<double>(gap_violations), 0.0);
    rep.params["gap_samples"] = gap_samples;
    return rep;
}

/// Exact histograms of q^2 G(a/q) for q <= 64 and the dyadic envelope of |G|.
inline VerificationReport suite_complete(SuiteOptions const& opt = {}) {
    VerificationReport rep;
    rep.command = "verify complete";
    rep.params["seed"] = opt.seed;
    std::mt19937_64 rng(opt.seed);
    std::vector<Poly2> polys{parse_poly("m1^2*m2^3")};
    for (int i = 0; i < 5; ++i) polys.push_back(detail::random_nondegenerate(rng));
    std::vector<std::int64_t> const dyadic{8, 16, 32, 64, 128};
    for (auto const& p : polys) {
        std::size_t mismatches = 0;
        for (std::int64_t q = 1; q <= 64; ++q)
            for (std::int64_t a = 0; a < q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                mismatches += gauss_sum_detailed(p, Rational(a, q)).histogram != oracle::gauss_histogram(p, Rational(a, q));
            }
        std::string const name = p.str();
        rep.check_le("q^2 G(a/q) differs from the exact double sum, q <= 64, P = " + name, static_cast<double>(mismatches), 0.0);
        auto const decay = gauss_decay(p, dyadic);
        nlohmann::ordered_json row;
        row["P"] = name;
        row["envelope"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < decay.points.size(); ++i) {
            row["envelope"].push_back(decay.points[i].envelope);
            if (i > 0)
                rep.check_le("envelope nonincreasing Q=" + std::to_string(decay.points[i - 1].Q) + "->" +
                                 std::to_string(decay.points[i].Q) + ", P = " + name,
                             decay.points[i].envelope, decay.points[i - 1].envelope);
        }
        row["fitted_delta"] = decay.fitted_delta;
        rep.results.push_back(row);
        rep.check_le("envelope at Q=128 <= 0.6, P = " + name, decay.points.back().envelope, 0.6);
    }
    return rep;
}

// Direct summation with exact phases, |sum| / M^2 for P = m1^2 m2^3 at theta = (sqrt 5 - 1)/2.
inline constexpr double kGoldenAverageM16 = 0.083214706425199486;
inline constexpr double kGoldenAverageM1024 = 0.00094047243976627453;

inline VerificationReport suite_equidistribution(SuiteOptions const& = {}) {
    VerificationReport rep;
    rep.command = "verify equidistribution";
    Poly2 const p = parse_poly("m1^2*m2^3");
    double const theta = (std::sqrt(5.0) - 1.0) / 2.0;
    double const small = std::abs(character_average(p, theta, Rational(16), Rational(16)).value);
    double const large = std::abs(character_average(p, theta, Rational(1024), Rational(1024)).value);
    rep.check_near("|average| at M=16 against direct summation", small, kGoldenAverageM16, 1e-12);
    rep.check_near("|average| at M=1024 against direct summation", large, kGoldenAverageM1024, 1e-9);
    rep.check_le("4 |average(1024)| <= |average(16)|", 4.0 * large, small);
    rep.check_le("|average(1024)| < 0.05", large, 0.05);
    nlohmann::ordered_json row;
    row["M"] = 16;
    row["abs_average"] = small;
    rep.results.push_back(row);
    row["M"] = 1024;
    row["abs_average"] = large;
    rep.results.push_back(row);
    return rep;
}

inline VerificationReport suite_factorization(SuiteOptions const& opt = {}) {
    VerificationReport rep;
    rep.command = "verify factorization";
    rep.params["seed"] = opt.seed;
    std::mt19937_64 rng(opt.seed);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        auto const P1 = detail::random_unipoly(rng);
        auto const P2 = detail::random_unipoly(rng);
        auto const f = detail::random_finite_function(rng);
        Rational const M1(1 + static_cast<std::int64_t>(rng() % 8));
        Rational const M2(2 + static_cast<std::int64_t>(rng() % 15), 1 + static_cast<std::int64_t>(rng() % 2));
        std::int64_t const x = static_cast<std::int64_t>(rng() % 61) - 30;
        worst = std::max(worst, degenerate_factorization_gap(P1, P2, f, M1, M2, x));
    }
    rep.check_le("max factorization gap over 50 separable instances", worst, 1e-12);
    auto const control = separable_control(parse_poly("m1*m2"), Rational(2), Rational(2), 8);
    rep.check_le("mixed control P = m1*m2 shows a gap above 0.01", 0.01, control.gap);
    rep.results.push_back({{"separable_worst_gap", worst}, {"control_gap", control.gap}, {"control_x", control.x}});
    return rep;
}

inline VerificationReport suite_iw(SuiteOptions const& opt = {}) {
    VerificationReport rep;
    rep.command = "verify iw";
    rep.params["lmax"] = opt.lmax;
    rep.params["rho"] = nlohmann::ordered_json::array();
    for (auto const& rho : opt.rhos) {
        rep.params["rho"].push_back(rho.str());
        auto sub = verify_iw_properties(rho, opt.lmax, opt.enumeration_cap);
        for (auto& c : sub.checks) c.name += ", rho=" + rho.str();
        for (auto& r : sub.results) r["rho"] = rho.str();
        rep.merge(sub);
        if (rho == Rational(1, 2)) {
            auto const sigma = build_sigma(build_p_le(IWParams{rho, 0, opt.enumeration_cap}), 1);
            rep.check_near("|Sigma_{<=0}^1| at rho=1/2", static_cast<double>(sigma.size()), 32.0, 0.0);
        }
    }
    return rep;
}

inline VerificationReport suite_osc(SuiteOptions const& opt = {}) {
    auto rep = verify_oscillation(opt.families, opt.max_length, opt.seed);
    rep.command = "verify osc";
    return rep;
}

/// Normalization, |m| <= 1, 1-periodicity and conjugation of the multipliers on a 1000-point grid.
inline VerificationReport suite_multipliers(SuiteOptions const& = {}) {
    VerificationReport rep;
    rep.command = "verify multipliers";
    std::vector<char const*> const polys{"m1*m2", "m1^2*m2^3", "m1^3*m2 + m1*m2^3", "2*m1*m2 - m2^4 + m1^2", "m1^5*m2 + 3*m1^2*m2^2 - m2"};
    Rational const M1(12), M2(10), tau(2);
    for (char const* text : polys) {
        Poly2 const p = parse_poly(text);
        std::string const tag = std::string(", P = ") + text;
        rep.check_near("m(0) = 1" + tag, std::abs(discrete_multiplier(p, Rational(0), M1, M2, tau) - 1.0), 0.0, 0.0);
        rep.check_near("continuous m(0) = 1" + tag, std::abs(continuous_multiplier(p, 0.0, 12, 10, 2.0) - 1.0), 0.0, 1e-12);
        double worst_abs = 0.0;
        std::size_t periodic = 0, conjugate = 0;
        for (std::int64_t k = 0; k < 1000; ++k) {
            Rational const xi(k - 500, 1000);
            auto const m = discrete_multiplier(p, xi, M1, M2, tau);
            worst_abs = std::max(worst_abs, std::abs(m));
            periodic += m != discrete_multiplier(p, xi + Rational(1), M1, M2, tau);
            conjugate += std::conj(m) != discrete_multiplier(p, -xi, M1, M2, tau);
        }
        rep.check_le("max |m(xi)| on the grid" + tag, worst_abs, 1.0, 1e-15);
        rep.check_le("grid points with m(xi + 1) != m(xi)" + tag, static_cast<double>(periodic), 0.0);
        rep.check_le("grid points with m(-xi) != conj m(xi)" + tag, static_cast<double>(conjugate), 0.0);
        double worst_cont = 0.0, worst_conj = 0.0;
        for (int k = 1; k <= 20; ++k) {
            double const xi = k * 1e-4;
            auto const c = continuous_multiplier(p, xi, 4, 4, 2.0);
            worst_cont = std::max(worst_cont, std::abs(c));
            worst_conj = std::max(worst_conj, std::abs(c - std::conj(continuous_multiplier(p, -xi, 4, 4, 2.0))));
        }
        rep.check_le("continuous max |m(xi)| on 20 samples" + tag, worst_cont, 1.0, 1e-10);
        rep.check_le("continuous |m(-xi) - conj m(xi)| on 20 samples" + tag, worst_conj, 0.0, 1e-10);
    }
    return rep;
}

struct MajorArcRow {
    std::string P;
    std::int64_t q = 1;
    std::int64_t M2prime = 0;
    double worst_measured = 0.0;
    double worst_ratio = 0.0;
};

/// Worst measured error and worst measured/budget ratio per (P, q, M2') over a/q with (a, q) = 1,
/// m1 in [1, q], and offsets c / max_term(m1, M2') for c in {0, +-1/4, +-1}, where
/// max_term is the largest |coefficient| m1^e1 M2'^e2 of P (so |offset P(m1, .)| stays O(c)).
inline std::vector<MajorArcRow> major_arc_grid(Poly2 const& P, std::int64_t qmax, std::vector<std::int64_t> const& scales) {
    std::vector<MajorArcRow> rows;
    for (std::int64_t q = 1; q <= qmax; ++q)
        for (std::int64_t M : scales) {
            MajorArcRow row{P.str(), q, M};
            for (std::int64_t a = 0; a < q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                for (std::int64_t m1 = 1; m1 <= q; ++m1) {
                    double scale = 0.0;
                    for (auto const& [e, c] : P.terms())
                        scale = std::max(scale, std::fabs(static_cast<double>(c)) * std::pow(double(m1), e.e1) * std::pow(double(M), e.e2));
                    for (double c : {0.0, 0.25, -0.25, 1.0, -1.0}) {
                        auto const e = claim3_error(P, m1, M, Rational(a, q), c / scale, Rational(2));
                        row.worst_measured = std::max(row.worst_measured, e.measured);
                        row.worst_ratio = std::max(row.worst_ratio, e.ratio());
                    }
                }
            }
            rows.push_back(row);
        }
    return rows;
}

/// Ratio <= 50 everywhere, and the worst measured error does not grow by more than 10% when M2' doubles.
inline VerificationReport suite_major_arc(SuiteOptions const& = {}) {
    VerificationReport rep;
    rep.command = "verify major_arc";
    std::vector<std::int64_t> const scales{64, 128, 256, 512, 1024};
    rep.params["q_max"] = 10;
    rep.params["M2prime"] = scales;
    rep.params["tau"] = 2;
    for (char const* text : {"m1^2*m2^3", "m1*m2", "m1^3*m2 + m1*m2^3"}) {
        auto const rows = major_arc_grid(parse_poly(text), 10, scales);
        double worst_ratio = 0.0;
        std::size_t growth = 0;
        double worst_step = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            worst_ratio = std::max(worst_ratio, rows[i].worst_ratio);
            if (i > 0 && rows[i].q == rows[i - 1].q) {
                double const prev = rows[i - 1].worst_measured;
                double const step = prev > 0 ? rows[i].worst_measured / prev : (rows[i].worst_measured > 0 ? INFINITY : 0.0);
                worst_step = std::max(worst_step, step);
                growth += rows[i].worst_measured > 1.1 * prev;
            }
            nlohmann::ordered_json row;
            row["P"] = rows[i].P;
            row["q"] = rows[i].q;
            row["M2prime"] = rows[i].M2prime;
            row["measured"] = rows[i].worst_measured;
            row["ratio"] = rows[i].worst_ratio;
            rep.results.push_back(row);
        }
        rep.check_le(std::string("max measured/budget, P = ") + text, worst_ratio, 50.0);
        rep.check_le(std::string("doubling steps where measured grows by more than 10%, P = ") + text, static_cast<double>(growth), 0.0);
        rep.results.push_back({{"P", text}, {"worst_doubling_factor", worst_step}});
    }
    return rep;
}

using Suite = std::function<VerificationReport(SuiteOptions const&)>;

/// Suites in acceptance order.
inline std::vector<std::pair<std::string, Suite>> const& suites() {
    static std::vector<std::pair<std::string, Suite>> const all{
        {"moment", suite_moment},           {"vinogradov", suite_vinogradov},
        {"newton", suite_newton},           {"complete", suite_complete},
        {"equidistribution", suite_equidistribution}, {"factorization", suite_factorization},
        {"iw", suite_iw},                   {"osc", suite_osc},
        {"multipliers", suite_multipliers}, {"major_arc", suite_major_arc},
    };
    return all;
}

/// Runs a suite by name and records its wall time; throws ContractError for an unknown name.
inline VerificationReport run_suite(std::string const& name, SuiteOptions const& opt = {}) {
    for (auto const& [n, fn] : suites())
        if (n == name) {
            auto const t0 = std::chrono::steady_clock::now();
            auto rep = fn(opt);
            rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
            return rep;
        }
    throw ContractError("unknown suite '" + name + "'");
}

} // namespace nc
