// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Phase engines for e(t) = exp(2 pi i t).
 *
 * Two rings evaluate polynomial phases without rounding:
 *  - ModRing: residues modulo a common denominator L (exact rational phases);
 *  - WrapRing: 0.128 fixed-point fractions modulo 2^128 (float phases).
 * Only the final conversion of a phase to a unit complex number rounds.
 */

#include "arith.hpp"
#include "bigint.hpp"
#include "poly.hpp"
#include "summation.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace nc {

inline constexpr std::uint64_t kRootTableLimit = std::uint64_t{1} << 16;
inline constexpr std::uint64_t kModularLimit = std::uint64_t{1} << 62;

struct ModRing {
    using value_type = std::uint64_t;
    std::uint64_t modulus;

    value_type add(value_type a, value_type b) const {
        value_type s = a + b;
        return s >= modulus ? s - modulus : s;
    }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(static_cast<u128>(a) * b % modulus);
    }
    value_type from_int(std::int64_t m) const {
        return static_cast<value_type>(detail::floor_mod(m, static_cast<std::int64_t>(modulus)));
    }
};

struct WrapRing {
    using value_type = u128;

    value_type add(value_type a, value_type b) const { return a + b; }
    value_type mul(value_type a, value_type b) const { return a * b; }
    value_type from_int(std::int64_t m) const { return static_cast<u128>(static_cast<i128>(m)); }
};

/// e(t / L) with the pairing e((L - t)/L) = conj(e(t/L)) built in.
inline std::complex<double> unit_root(std::uint64_t t, std::uint64_t L) {
    if (L == 1 || t == 0) return {1.0, 0.0};
    bool const upper = 2 * t > L;
    std::uint64_t const s = upper ? L - t : t;
    long double const angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(s) /
                              static_cast<long double>(L);
    double const c = static_cast<double>(std::cos(angle));
    double const si = static_cast<double>(std::sin(angle));
    return {c, upper ? -si : si};
}

/// e(t / 2^128), evaluated from the signed top 64 bits.
inline std::complex<double> unit_fixed(u128 t) {
    auto const top = static_cast<std::int64_t>(static_cast<std::uint64_t>(t >> 64));
    long double const turns = std::ldexp(static_cast<long double>(top), -64);
    long double const angle = 2.0L * std::numbers::pi_v<long double> * turns;
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

/// Table of q-th roots of unity for q <= 2^16.
class RootTable {
public:
    explicit RootTable(std::uint64_t modulus) : modulus_(modulus), roots_(modulus) {
        for (std::uint64_t t = 0; t < modulus; ++t) roots_[t] = unit_root(t, modulus);
    }
    std::uint64_t modulus() const noexcept { return modulus_; }
    std::complex<double> operator[](std::uint64_t t) const { return roots_[t]; }

private:
    std::uint64_t modulus_;
    std::vector<std::complex<double>> roots_;
};

/**
 * sum_t h(t) e(t/L) for a phase histogram, summing the conjugate pairs
 * (t, L - t) together so that reversing the histogram conjugates the result
 * bit for bit.
 */
inline std::complex<double> sum_histogram(std::span<std::int64_t const> h) {
    std::uint64_t const L = h.size();
    NeumaierSum re;
    NeumaierSum im;
    if (L == 0) return {0.0, 0.0};
    re.add(static_cast<double>(h[0]));
    for (std::uint64_t t = 1; 2 * t < L; ++t) {
        std::int64_t const lo = h[t];
        std::int64_t const hi = h[L - t];
        if (lo == 0 && hi == 0) continue;
        auto const z = unit_root(t, L);
        re.add(static_cast<double>(lo + hi) * z.real());
        im.add(static_cast<double>(lo - hi) * z.imag());
    }
    if (L % 2 == 0) re.add(-static_cast<double>(h[L / 2]));
    return {re.value(), im.value()};
}

namespace detail {

/// Dense coefficient lists of the inner polynomial for a fixed outer variable.
template <typename Ring>
struct PhaseTerms {
    Ring ring;
    /// (outer exponent, inner exponent, coefficient) with the axis already resolved.
    struct Term {
        int outer;
        int inner;
        typename Ring::value_type coefficient;
    };
    std::vector<Term> terms;
    int inner_degree = 0;

    /// Coefficients c_k of the inner polynomial at outer value x.
    void inner_coefficients(std::int64_t x, std::vector<typename Ring::value_type>& out) const {
        out.assign(inner_degree + 1, typename Ring::value_type{0});
        auto const xv = ring.from_int(x);
        for (auto const& t : terms) {
            auto p = t.coefficient;
            for (int i = 0; i < t.outer; ++i) p = ring.mul(p, xv);
            out[t.inner] = ring.add(out[t.inner], p);
        }
    }

    typename Ring::value_type evaluate_inner(std::vector<typename Ring::value_type> const& c, std::int64_t y) const {
        auto const yv = ring.from_int(y);
        typename Ring::value_type acc{0};
        for (int k = inner_degree; k >= 0; --k) acc = ring.add(ring.mul(acc, yv), c[k]);
        return acc;
    }
};

/// outer_axis = 1 means the outer variable is m1.
template <typename Ring, typename Coeffs>
PhaseTerms<Ring> make_terms(Ring ring, Coeffs const& coeffs, int outer_axis) {
    PhaseTerms<Ring> pt{ring, {}, 0};
    for (auto const& [e, c] : coeffs) {
        int const outer = outer_axis == 1 ? e.e1 : e.e2;
        int const inner = outer_axis == 1 ? e.e2 : e.e1;
        pt.terms.push_back({outer, inner, c});
        pt.inner_degree = std::max(pt.inner_degree, inner);
    }
    return pt;
}

} // namespace detail

} // namespace nc
