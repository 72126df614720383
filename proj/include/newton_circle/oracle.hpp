// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Brute-force reference implementations used by the test suites and the
 * `verify` command. Nothing in the library proper includes this header;
 * every routine here is written directly from the definition it checks and
 * shares no code path with the optimized implementation it is compared to.
 */

#include "arith.hpp"
#include "bigint.hpp"
#include "poly.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

namespace nc::oracle {

/// Smallest-denominator a/q, q <= Q, with |xi - a/q| <= 1/(qQ), by exhaustive search.
inline Rational dirichlet_search(BigRational const& xi, std::int64_t Q) {
    for (std::int64_t q = 1; q <= Q; ++q) {
        BigRational const scaled = xi * q;
        BigInt lo = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
        for (BigInt a = lo - 1; a <= lo + 1; ++a) {
            BigRational d = xi - BigRational(a, q);
            if (d < 0) d = -d;
            if (d * q * Q <= 1) return Rational(static_cast<std::int64_t>(a), q);
        }
    }
    return Rational(0);
}

/// Smallest q' in [q/(2Q), 2M] with some a' making ||Q theta - a'/q'|| <= 1/(2q'M); torus-normalized.
inline std::optional<Rational> rescale_search(BigRational const& theta, std::int64_t q, std::int64_t Q, std::int64_t M) {
    BigRational const x = theta * Q;
    for (std::int64_t qq = 1; qq <= 2 * M; ++qq) {
        if (2 * Q * qq < q) continue;
        for (std::int64_t a = 0; a < qq; ++a) {
            if (std::gcd(a, qq) != 1 && !(a == 0 && qq == 1)) continue;
            // distance to the nearest integer of x - a/qq
            BigRational d = x - BigRational(a, qq);
            BigInt fl = boost::multiprecision::numerator(d) / boost::multiprecision::denominator(d);
            BigRational best = 1;
            for (BigInt k = fl - 1; k <= fl + 1; ++k) {
                BigRational e = d - BigRational(k);
                if (e < 0) e = -e;
                if (e < best) best = e;
            }
            if (best * 2 * qq * M <= 1) return Rational(a, qq);
        }
    }
    return std::nullopt;
}

/// e(phase) with the phase reduced mod 1 exactly before any rounding.
inline std::complex<long double> unit(BigRational const& phase) {
    BigInt const n = boost::multiprecision::numerator(phase);
    BigInt const d = boost::multiprecision::denominator(phase);
    BigInt r = n % d;
    if (r < 0) r += d;
    long double const frac = static_cast<long double>(BigRational(r, d));
    long double const ang = 2 * std::numbers::pi_v<long double> * frac;
    return {std::cos(ang), std::sin(ang)};
}

/// Double sum of e(xi * P) term by term with exact rational phases.
inline std::complex<long double> double_sum(Poly2 const& p, Rational const& xi, std::int64_t K1, std::int64_t M1,
                                            std::int64_t K2, std::int64_t M2) {
    std::complex<long double> acc{0, 0};
    BigRational const x = exact_value(xi);
    for (std::int64_t a = K1 + 1; a <= M1; ++a)
        for (std::int64_t b = K2 + 1; b <= M2; ++b) acc += unit(x * BigRational(evaluate(p, a, b)));
    return acc;
}

/// Double sum of e(Q) for real coefficients, phase formed in long double per term.
inline std::complex<long double> double_sum_real(std::map<Exponent, double> const& q, std::int64_t K1, std::int64_t M1,
                                                 std::int64_t K2, std::int64_t M2) {
    std::complex<long double> acc{0, 0};
    for (std::int64_t a = K1 + 1; a <= M1; ++a)
        for (std::int64_t b = K2 + 1; b <= M2; ++b) {
            BigRational ph = 0;
            for (auto const& [e, c] : q) ph += exact_value(c) * BigRational(detail::big_pow(a, e.e1) * detail::big_pow(b, e.e2));
            acc += unit(ph);
        }
    return acc;
}

/// Phase histogram of a * P(r1, r2) mod q over [1, q]^2.
inline std::vector<std::int64_t> gauss_histogram(Poly2 const& p, Rational const& a_over_q) {
    std::int64_t const q = a_over_q.den();
    std::vector<std::int64_t> h(static_cast<std::size_t>(q), 0);
    for (std::int64_t r1 = 1; r1 <= q; ++r1)
        for (std::int64_t r2 = 1; r2 <= q; ++r2) {
            BigInt v = evaluate(p, r1, r2) * a_over_q.num();
            v %= q;
            if (v < 0) v += q;
            ++h[static_cast<std::size_t>(v)];
        }
    return h;
}

/// Corner points of the backwards Newton diagram via witness directions in [1, 2 deg + 1]^2.
inline std::set<Exponent> newton_vertices(Poly2 const& p) {
    auto const s = support(p);
    int const bound = 2 * p.total_degree() + 1;
    std::set<Exponent> out;
    for (auto const& v : s) {
        bool vertex = false;
        for (int a = 1; a <= bound && !vertex; ++a)
            for (int b = 1; b <= bound && !vertex; ++b) {
                bool all = true;
                for (auto const& w : s) {
                    if (w == v) continue;
                    if (a * (v.e1 - w.e1) + b * (v.e2 - w.e2) <= 0) {
                        all = false;
                        break;
                    }
                }
                vertex = all;
            }
        if (vertex) out.insert(v);
    }
    return out;
}

/// J_{s,k}(N; lambda) by enumerating all 2s-tuples.
inline BigInt vinogradov_count(int s, int k, std::int64_t N, std::vector<std::int64_t> const& lambda) {
    std::vector<std::int64_t> x(2 * s, 1);
    BigInt count = 0;
    while (true) {
        bool ok = true;
        for (int i = 1; i <= k && ok; ++i) {
            BigInt sum = 0;
            for (int j = 0; j < s; ++j) sum += detail::big_pow(x[j], i) - detail::big_pow(x[s + j], i);
            ok = sum == lambda[i - 1];
        }
        if (ok) ++count;
        int pos = 0;
        while (pos < 2 * s && x[pos] == N) x[pos++] = 1;
        if (pos == 2 * s) break;
        ++x[pos];
    }
    return count;
}

} // namespace nc::oracle
