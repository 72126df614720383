// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * One- and two-parameter exponential sums.
 *
 * Exact-phase mode (rational coefficients with common denominator L <= 2^16)
 * reduces every phase modulo L in integer arithmetic and sums a phase
 * histogram, so the result is a deterministic function of an exact integer
 * vector. Otherwise phases are reduced in 0.128 fixed point and summed with
 * Neumaier compensation.
 */

#include "arith.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "phase.hpp"
#include "poly.hpp"
#include "quadrature.hpp"
#include "summation.hpp"

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <vector>

namespace nc {

enum class PhaseMode { ExactRational, Float };

inline char const* to_string(PhaseMode m) { return m == PhaseMode::ExactRational ? "exact-rational-phase" : "float-phase"; }

struct ExpSumValue {
    std::complex<double> value;
    PhaseMode mode = PhaseMode::Float;
    std::uint64_t term_count = 0;
    /// 0 in exact mode; term_count * 8 ulp of the peak running magnitude otherwise.
    double error_budget = 0.0;
    /// Common denominator of the phases (exact mode only).
    std::uint64_t modulus = 0;
    /// h[t] = number of terms with phase t/modulus (exact mode only).
    std::vector<std::int64_t> histogram;
};

namespace detail {

/// Fixed block count for float accumulation; keeps results independent of the thread count.
inline constexpr unsigned kSumBlocks = 16;

inline double float_budget(std::uint64_t terms, double peak) {
    return static_cast<double>(terms) * 8.0 * std::numeric_limits<double>::epsilon() * std::max(peak, 1.0);
}

/// Inclusive integer interval; empty when lo > hi.
struct Span {
    std::int64_t lo;
    std::int64_t hi;
    std::uint64_t size() const { return hi >= lo ? static_cast<std::uint64_t>(hi - lo + 1) : 0; }
};

inline bool exact_modulus(RealPoly2 const& q, std::uint64_t& modulus) {
    if (!q.is_exact() || q.exact().denominator > BigInt(kModularLimit)) return false;
    modulus = static_cast<std::uint64_t>(q.exact().denominator);
    return true;
}

inline detail::PhaseTerms<ModRing> modular_terms(RealPoly2 const& q, std::uint64_t modulus, int outer_axis) {
    std::vector<std::pair<Exponent, std::uint64_t>> residues;
    for (auto const& [e, n] : q.exact().numerators)
        residues.emplace_back(e, static_cast<std::uint64_t>(mod_floor(n, static_cast<std::int64_t>(modulus))));
    return make_terms(ModRing{modulus}, residues, outer_axis);
}

inline detail::PhaseTerms<WrapRing> fixed_terms(RealPoly2 const& q, int outer_axis) {
    return make_terms(WrapRing{}, q.fixed_fractions(), outer_axis);
}

/// Sum of e(Q) over outer x inner, exact histogram path.
inline ExpSumValue histogram_sum(PhaseTerms<ModRing> const& pt, Span outer, Span inner) {
    std::uint64_t const L = pt.ring.modulus;
    auto const blocks = partition_range(outer.lo, outer.hi + 1, worker_count());
    std::vector<std::vector<std::int64_t>> partial(blocks.size());
    run_blocks(blocks.size(), [&](std::size_t b) {
        auto& h = partial[b];
        h.assign(L, 0);
        std::vector<std::uint64_t> c;
        for (std::int64_t x = blocks[b].begin; x < blocks[b].end; ++x) {
            pt.inner_coefficients(x, c);
            for (std::int64_t y = inner.lo; y <= inner.hi; ++y) ++h[pt.evaluate_inner(c, y)];
        }
    });
    ExpSumValue out;
    out.mode = PhaseMode::ExactRational;
    out.modulus = L;
    out.histogram.assign(L, 0);
    for (auto const& h : partial)
        for (std::uint64_t t = 0; t < L; ++t) out.histogram[t] += h[t];
    out.term_count = outer.size() * inner.size();
    out.value = sum_histogram(out.histogram);
    return out;
}

/// Direct compensated accumulation; `unit` maps a ring value to e(phase).
template <typename Ring, typename Unit>
ExpSumValue direct_sum(PhaseTerms<Ring> const& pt, Span outer, Span inner, Unit unit) {
    auto const blocks = partition_range(outer.lo, outer.hi + 1, kSumBlocks);
    std::vector<ComplexAccumulator> partial(blocks.size());
    run_blocks(blocks.size(), [&](std::size_t b) {
        auto& acc = partial[b];
        std::vector<typename Ring::value_type> c;
        for (std::int64_t x = blocks[b].begin; x < blocks[b].end; ++x) {
            pt.inner_coefficients(x, c);
            for (std::int64_t y = inner.lo; y <= inner.hi; ++y) acc.add(unit(pt.evaluate_inner(c, y)));
            acc.track_peak();
        }
    });
    ComplexAccumulator total = tree_reduce(partial, [](ComplexAccumulator& a, ComplexAccumulator const& b) { a.merge(b); });
    ExpSumValue out;
    out.mode = PhaseMode::Float;
    out.term_count = outer.size() * inner.size();
    out.value = total.value();
    out.error_budget = float_budget(out.term_count, total.peak);
    return out;
}

/// Sum over m_outer in `outer`, m_inner in `inner` of e(Q(m1, m2)).
inline ExpSumValue rectangle_sum(RealPoly2 const& q, int outer_axis, Span outer, Span inner) {
    if (outer.size() == 0 || inner.size() == 0) {
        ExpSumValue v;
        v.value = {0.0, 0.0};
        v.mode = q.is_exact() ? PhaseMode::ExactRational : PhaseMode::Float;
        return v;
    }
    std::uint64_t L = 0;
    if (exact_modulus(q, L)) {
        auto const pt = modular_terms(q, L, outer_axis);
        if (L <= kRootTableLimit) return histogram_sum(pt, outer, inner);
        return direct_sum(pt, outer, inner, [L](std::uint64_t t) { return unit_root(t, L); });
    }
    return direct_sum(fixed_terms(q, outer_axis), outer, inner, [](u128 t) { return unit_fixed(t); });
}

/// sum over outer of |sum over inner of e(Q)|.
inline double rectangle_abs_sum(RealPoly2 const& q, int outer_axis, Span outer, Span inner) {
    NeumaierSum total;
    auto run = [&](auto const& pt, auto unit) {
        std::vector<typename std::decay_t<decltype(pt.ring)>::value_type> c;
        for (std::int64_t x = outer.lo; x <= outer.hi; ++x) {
            pt.inner_coefficients(x, c);
            ComplexAccumulator acc;
            for (std::int64_t y = inner.lo; y <= inner.hi; ++y) acc.add(unit(pt.evaluate_inner(c, y)));
            total.add(std::abs(acc.value()));
        }
    };
    std::uint64_t L = 0;
    if (exact_modulus(q, L)) {
        auto const pt = modular_terms(q, L, outer_axis);
        if (L <= kRootTableLimit) {
            RootTable const table(L);
            run(pt, [&table](std::uint64_t t) { return table[t]; });
        } else {
            run(pt, [L](std::uint64_t t) { return unit_root(t, L); });
        }
    } else {
        run(fixed_terms(q, outer_axis), [](u128 t) { return unit_fixed(t); });
    }
    return total.value();
}

inline void check_ranges(std::int64_t K1, std::int64_t M1, std::int64_t K2, std::int64_t M2) {
    if (K1 < 0 || K1 > M1 || K2 < 0 || K2 > M2)
        throw ContractError("exponential sum ranges require 0 <= K1 <= M1 and 0 <= K2 <= M2");
}

} // namespace detail

/// sum_{K1 < m1 <= M1} sum_{K2 < m2 <= M2} e(Q(m1, m2)).
inline ExpSumValue double_sum(RealPoly2 const& q, std::int64_t K1, std::int64_t M1, std::int64_t K2, std::int64_t M2) {
    detail::check_ranges(K1, M1, K2, M2);
    return detail::rectangle_sum(q, 1, {K1 + 1, M1}, {K2 + 1, M2});
}

/// outer_axis 1: sum_{m1} |sum_{m2} e(Q)|; outer_axis 2: the transpose.
inline double double_sum_abs(RealPoly2 const& q, std::int64_t K1, std::int64_t M1, std::int64_t K2, std::int64_t M2,
                             int outer_axis) {
    detail::check_ranges(K1, M1, K2, M2);
    if (outer_axis == 1) return detail::rectangle_abs_sum(q, 1, {K1 + 1, M1}, {K2 + 1, M2});
    if (outer_axis == 2) return detail::rectangle_abs_sum(q, 2, {K2 + 1, M2}, {K1 + 1, M1});
    throw DomainError("outer_axis must be 1 or 2");
}

/// Phase polynomial xi_1 n + ... + xi_k n^k placed on the m2 axis.
inline RealPoly2 moment_phase(std::span<Frequency const> xi) {
    bool all_exact = true;
    for (auto const& f : xi) all_exact = all_exact && is_exact(f);
    if (all_exact) {
        std::map<Exponent, Rational> c;
        for (std::size_t i = 0; i < xi.size(); ++i) c[{0, static_cast<int>(i + 1)}] = std::get<Rational>(xi[i]);
        return RealPoly2::from_rationals(c);
    }
    std::map<Exponent, double> c;
    for (std::size_t i = 0; i < xi.size(); ++i) c[{0, static_cast<int>(i + 1)}] = to_double(xi[i]);
    return RealPoly2::from_doubles(c);
}

/// S_k(xi; N) restricted to K < n <= N: sum e(xi_1 n + ... + xi_k n^k).
inline ExpSumValue weyl_sum(std::span<Frequency const> xi, std::int64_t N, std::int64_t K = 0) {
    if (xi.empty() || xi.size() > 8) throw ContractError("weyl_sum: requires 1 <= k <= 8");
    if (N < 1 || K < 0 || K >= N) throw ContractError("weyl_sum: requires 0 <= K < N");
    return detail::rectangle_sum(moment_phase(xi), 1, {1, 1}, {K + 1, N});
}

inline ExpSumValue weyl_sum(std::vector<Frequency> const& xi, std::int64_t N, std::int64_t K = 0) {
    return weyl_sum(std::span<Frequency const>(xi), N, K);
}

// ---------------------------------------------------------------------------
// Sum versus integral

namespace detail {

inline double poly_eval(std::span<double const> c, double x) {
    long double acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return static_cast<double>(acc);
}

inline std::vector<double> derivative(std::span<double const> c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
}

} // namespace detail

/**
 * |sum_{a < n <= b} e(phi(n)) - int_a^b e(phi(s)) ds| for a real polynomial
 * phase phi (coefficients in increasing degree) whose derivative is monotone
 * with |phi'| <= 1/2 on [a, b].
 */
inline double sum_integral_gap(std::span<double const> phase, double a, double b, double tol = 1e-12) {
    if (!(b > a)) throw ContractError("sum_integral_gap: requires b > a");
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("sum_integral_gap: non-finite endpoint");
    auto const d1 = detail::derivative(phase);
    auto const d2 = detail::derivative(d1);
    int const degree = static_cast<int>(phase.size()) - 1;
    auto sign = [](double v) { return (v > 0) - (v < 0); };
    if (degree <= 3) {
        int const sa = sign(detail::poly_eval(d2, a));
        int const sb = sign(detail::poly_eval(d2, b));
        if (sa * sb < 0) throw ContractError("sum_integral_gap: phase derivative is not monotone on [a, b]");
    } else {
        int seen = 0;
        for (int i = 0; i <= 2048; ++i) {
            int const s = sign(detail::poly_eval(d2, a + (b - a) * i / 2048.0));
            if (s == 0) continue;
            if (seen != 0 && s != seen) throw ContractError("sum_integral_gap: phase derivative is not monotone on [a, b]");
            seen = s;
        }
    }
    for (double x : {a, b})
        if (!leq_guarded(std::fabs(detail::poly_eval(d1, x)), 0.5))
            throw ContractError("sum_integral_gap: requires |phi'| <= 1/2 on [a, b]");

    std::map<Exponent, double> coeffs;
    for (std::size_t k = 1; k < phase.size(); ++k)
        if (phase[k] != 0.0) coeffs[{0, static_cast<int>(k)}] = phase[k];
    double const c0 = phase.empty() ? 0.0 : phase[0];
    auto const shift = std::polar(1.0, 2.0 * std::numbers::pi * (c0 - std::floor(c0)));
    auto const lo = static_cast<std::int64_t>(std::floor(a)) + 1;
    auto const hi = static_cast<std::int64_t>(std::floor(b));
    std::complex<double> sum = detail::rectangle_sum(RealPoly2::from_doubles(coeffs), 1, {1, 1}, {lo, hi}).value * shift;

    auto integrand = [&](double s) {
        double const ph = detail::poly_eval(phase, s);
        return std::polar(1.0, 2.0 * std::numbers::pi * (ph - std::floor(ph)));
    };
    std::complex<double> const integral = integrate_adaptive(integrand, a, b, tol);
    return std::abs(sum - integral);
}

} // namespace nc
