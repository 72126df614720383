// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Ionescu–Wainger denominator sets.
 *
 * For rho in (0,1): D = floor(2/rho) + 1, N0 = floor(2^{rho l / 2}) + 1,
 * Q0 = (N0!)^D, W_{<=l} = products of 1..D distinct primes from (N0, 2^l]
 * each raised to a power in 1..D, and
 *   P_{<=l} = { Q w : Q | Q0, w in W_{<=l} or w = 1 },
 * enumerated up to a cap with an explicit truncation flag.
 */

#include "arith.hpp"
#include "bigint.hpp"
#include "errors.hpp"
#include "poly.hpp"
#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace nc {

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;
inline constexpr std::int64_t kDefaultSigmaCap = 5'000'000;

struct IWParams {
    Rational rho;
    std::int64_t l = 0;
    std::int64_t enumeration_cap = kDefaultEnumerationCap;

    std::int64_t D() const { return (Rational(2) / rho).floor() + 1; }

    /// floor(2^{rho l / 2}) + 1, decided exactly: largest n with n^{2 den} <= 2^{num l}.
    std::int64_t N0() const {
        std::int64_t const num = rho.num();
        std::int64_t const den = rho.den();
        BigInt const target = BigInt(1) << static_cast<unsigned>(num * l);
        std::int64_t lo = 1;
        std::int64_t hi = 2;
        while (detail::big_pow(BigInt(hi), static_cast<int>(2 * den)) <= target) hi *= 2;
        while (hi - lo > 1) {
            std::int64_t const mid = lo + (hi - lo) / 2;
            if (detail::big_pow(BigInt(mid), static_cast<int>(2 * den)) <= target) lo = mid;
            else hi = mid;
        }
        return lo + 1;
    }

    void validate() const {
        if (!(rho > Rational(0)) || !(rho < Rational(1))) throw ConfigurationError("iw: rho must lie in (0, 1)");
        if (l < 0) throw ConfigurationError("iw: l must be >= 0");
        if (l > 40) throw ConfigurationError("iw: l above 40 is outside the enumerable range");
        if (rho.den() > 64) throw ConfigurationError("iw: rho denominator above 64");
        if (enumeration_cap < (std::int64_t{1} << l))
            throw ConfigurationError("iw: enumeration cap smaller than 2^l cannot contain [2^l]");
    }
};

inline BigInt iw_q0(IWParams const& p) {
    BigInt f = 1;
    for (std::int64_t i = 2; i <= p.N0(); ++i) f *= i;
    return detail::big_pow(f, static_cast<int>(p.D()));
}

namespace detail {

inline std::vector<std::int64_t> primes_in(std::int64_t lo_exclusive, std::int64_t hi_inclusive) {
    std::vector<std::int64_t> out;
    if (hi_inclusive < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(hi_inclusive + 1), false);
    for (std::int64_t i = 2; i <= hi_inclusive; ++i) {
        if (composite[i]) continue;
        if (i > lo_exclusive) out.push_back(i);
        for (std::int64_t j = i * i; j <= hi_inclusive; j += i) composite[j] = true;
    }
    return out;
}

/// v_p(n!) by Legendre's formula.
inline std::int64_t factorial_valuation(std::int64_t n, std::int64_t p) {
    std::int64_t v = 0;
    for (std::int64_t pk = p; pk <= n; pk *= p) v += n / pk;
    return v;
}

inline bool mul_le(std::int64_t a, std::int64_t b, std::int64_t cap) { return b != 0 && a <= cap / b; }

} // namespace detail

struct IWSets {
    IWParams params;
    std::vector<std::int64_t> p_le;
    bool truncated = false;
    std::vector<std::int64_t> w_le;
    std::vector<std::int64_t> medium_primes;
};

inline IWSets build_p_le(IWParams const& params) {
    params.validate();
    std::int64_t const cap = params.enumeration_cap;
    std::int64_t const D = params.D();
    std::int64_t const N0 = params.N0();
    IWSets out{params, {}, false, {}, {}};

    // divisors of (N0!)^D up to cap
    std::vector<std::int64_t> divisors{1};
    for (std::int64_t p : detail::primes_in(1, N0)) {
        std::int64_t const e = D * detail::factorial_valuation(N0, p);
        std::vector<std::int64_t> next;
        for (std::int64_t d : divisors) {
            std::int64_t v = d;
            next.push_back(v);
            for (std::int64_t i = 1; i <= e; ++i) {
                if (!detail::mul_le(v, p, cap)) {
                    out.truncated = true;
                    break;
                }
                v *= p;
                next.push_back(v);
            }
        }
        divisors = std::move(next);
    }

    // W: products of 1..D distinct medium primes, powers 1..D, up to cap
    std::int64_t const top = std::int64_t{1} << params.l;
    out.medium_primes = detail::primes_in(N0, top);
    auto const& primes = out.medium_primes;
    std::vector<std::int64_t> w;
    auto extend = [&](auto&& self, std::size_t start, std::int64_t value, std::int64_t used) -> void {
        for (std::size_t i = start; i < primes.size(); ++i) {
            std::int64_t const p = primes[i];
            if (!detail::mul_le(value, p, cap)) {
                out.truncated = true;
                break; // primes ascend, so every later prime overflows too
            }
            std::int64_t v = value;
            for (std::int64_t e = 1; e <= D; ++e) {
                if (!detail::mul_le(v, p, cap)) {
                    out.truncated = true;
                    break;
                }
                v *= p;
                w.push_back(v);
                if (used + 1 < D) self(self, i + 1, v, used + 1);
            }
        }
    };
    extend(extend, 0, 1, 0);
    std::sort(w.begin(), w.end());
    out.w_le = w;

    std::vector<std::int64_t> all;
    for (std::int64_t q : divisors) {
        all.push_back(q);
        for (std::int64_t x : w) {
            if (!detail::mul_le(q, x, cap)) {
                out.truncated = true;
                continue;
            }
            all.push_back(q * x);
        }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    out.p_le = std::move(all);
    return out;
}

/// Euler phi by trial division.
inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

/// Number of a in [0, q)^d with gcd(a_1, ..., a_d, q) = 1 (Jordan's totient J_d).
inline std::int64_t jordan_totient(std::int64_t q, int d) {
    std::int64_t r = 1;
    for (int i = 0; i < d; ++i) r *= q;
    std::int64_t n = q;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        std::int64_t pd = 1;
        for (int i = 0; i < d; ++i) pd *= p;
        r = r / pd * (pd - 1);
    }
    if (n > 1) {
        std::int64_t pd = 1;
        for (int i = 0; i < d; ++i) pd *= n;
        r = r / pd * (pd - 1);
    }
    return r;
}

/// A point a/q of Sigma^d: numerators a_1..a_d over the common denominator q.
struct FractionTuple {
    std::vector<std::int64_t> a;
    std::int64_t q;

    friend auto operator<=>(FractionTuple const&, FractionTuple const&) = default;
    friend bool operator==(FractionTuple const&, FractionTuple const&) = default;
};

/// Sigma^d_{<=l}: all a/q with q in P_{<=l}, a in [0,q)^d, gcd(a, q) = 1.
inline std::vector<FractionTuple> build_sigma(IWSets const& sets, int d, std::int64_t cap = kDefaultSigmaCap) {
    if (d < 1 || d > 2) throw ContractError("build_sigma: requires d in {1, 2}");
    double expected = 0;
    for (std::int64_t q : sets.p_le) expected += static_cast<double>(jordan_totient(q, d));
    if (expected > static_cast<double>(cap))
        throw ResourceError("build_sigma: cardinality " + std::to_string(static_cast<long long>(expected)) +
                            " exceeds the cap (the set grows like 2^{C (d+1) 2^{rho l}})");
    std::vector<FractionTuple> out;
    out.reserve(static_cast<std::size_t>(expected));
    for (std::int64_t q : sets.p_le) {
        if (d == 1) {
            for (std::int64_t a = 0; a < q; ++a)
                if (std::gcd(a, q) == 1) out.push_back({{a}, q});
        } else {
            for (std::int64_t a1 = 0; a1 < q; ++a1) {
                std::int64_t const g = std::gcd(a1, q);
                for (std::int64_t a2 = 0; a2 < q; ++a2)
                    if (std::gcd(g, a2) == 1) out.push_back({{a1, a2}, q});
            }
        }
    }
    return out;
}

/// Sigma_l = Sigma_{<=l} minus Sigma_{<=l-1}; both inputs sorted as produced by build_sigma.
inline std::vector<FractionTuple> sigma_level(std::vector<FractionTuple> le_l, std::vector<FractionTuple> le_prev) {
    std::sort(le_l.begin(), le_l.end());
    std::sort(le_prev.begin(), le_prev.end());
    std::vector<FractionTuple> out;
    std::set_difference(le_l.begin(), le_l.end(), le_prev.begin(), le_prev.end(), std::back_inserter(out));
    return out;
}

/// Q_{<=l} = lcm(P_{<=l}) exactly.
inline BigInt lcm_of(std::vector<std::int64_t> const& set) {
    BigInt r = 1;
    for (std::int64_t q : set) r = boost::multiprecision::lcm(r, BigInt(q));
    return r;
}

inline double log2_big(BigInt const& v) {
    if (v <= 0) return 0.0;
    auto const bits = static_cast<std::int64_t>(boost::multiprecision::msb(v));
    if (bits < 60) return std::log2(static_cast<double>(v));
    BigInt const top = v >> static_cast<unsigned>(bits - 52);
    return static_cast<double>(bits - 52) + std::log2(static_cast<double>(top));
}

/**
 * Structural checks on explicit sets P_{<=0}, ..., P_{<=lmax} (sets[l] sorted):
 * nesting, [2^l] containment, closure under divisors, and 2^{l-1} < q on P_l.
 */
inline VerificationReport check_iw_sets(std::vector<std::vector<std::int64_t>> const& sets) {
    VerificationReport rep;
    rep.command = "iw-properties";
    for (std::size_t l = 0; l < sets.size(); ++l) {
        auto const& cur = sets[l];
        std::string const tag = "l=" + std::to_string(l) + ": ";
        auto contains = [&](std::int64_t v) { return std::binary_search(cur.begin(), cur.end(), v); };

        std::int64_t missing_nest = 0;
        if (l > 0)
            for (std::int64_t q : sets[l - 1]) missing_nest += !contains(q);
        rep.check_le(tag + "nesting P_{<=l-1} in P_{<=l} (missing count)", static_cast<double>(missing_nest), 0.0);

        std::int64_t missing_range = 0;
        for (std::int64_t n = 1; n <= (std::int64_t{1} << l); ++n) missing_range += !contains(n);
        rep.check_le(tag + "[2^l] in P_{<=l} (missing count)", static_cast<double>(missing_range), 0.0);

        std::int64_t closure_fail = 0;
        for (std::int64_t q : cur) {
            std::int64_t n = q;
            for (std::int64_t p = 2; p * p <= n; ++p) {
                if (n % p != 0) continue;
                while (n % p == 0) n /= p;
                closure_fail += !contains(q / p);
            }
            if (n > 1) closure_fail += !contains(q / n);
        }
        rep.check_le(tag + "closed under divisors (violations)", static_cast<double>(closure_fail), 0.0);

        std::int64_t min_new = -1;
        std::int64_t below = 0;
        if (l > 0) {
            auto const& prev = sets[l - 1];
            for (std::int64_t q : cur) {
                if (std::binary_search(prev.begin(), prev.end(), q)) continue;
                if (min_new < 0 || q < min_new) min_new = q;
                below += !(2 * q > (std::int64_t{1} << l));
            }
        }
        rep.check_le(tag + "2^{l-1} < q on P_l (violations)", static_cast<double>(below), 0.0);
        nlohmann::ordered_json row;
        row["l"] = l;
        row["size"] = cur.size();
        row["min_new_q"] = min_new;
        rep.results.push_back(row);
    }
    return rep;
}

/// Builds P_{<=l} for l = 0..lmax and runs check_iw_sets; results carry sizes, truncation, log2 lcm.
inline VerificationReport verify_iw_properties(Rational rho, std::int64_t lmax,
                                               std::int64_t cap = kDefaultEnumerationCap) {
    std::vector<std::vector<std::int64_t>> sets;
    std::vector<IWSets> built;
    for (std::int64_t l = 0; l <= lmax; ++l) {
        built.push_back(build_p_le(IWParams{rho, l, cap}));
        sets.push_back(built.back().p_le);
    }
    VerificationReport rep = check_iw_sets(sets);
    rep.command = "iw";
    rep.params["rho"] = rho.str();
    rep.params["lmax"] = lmax;
    rep.params["enumeration_cap"] = cap;
    for (std::size_t l = 0; l < built.size(); ++l) {
        auto& row = rep.results[l];
        row["D"] = built[l].params.D();
        row["N0"] = built[l].params.N0();
        row["q0"] = iw_q0(built[l].params).str();
        row["medium_primes"] = built[l].medium_primes.size();
        row["truncated"] = built[l].truncated;
        row["log2_lcm"] = log2_big(lcm_of(built[l].p_le));
    }
    return rep;
}

} // namespace nc
