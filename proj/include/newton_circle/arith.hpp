// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Exact rational arithmetic on the torus.
 *
 * `Rational` is a reduced fraction with 64-bit parts; every intermediate
 * product is formed in 128 bits and overflow of the reduced result throws.
 * Real inputs (`double`) are converted to their exact binary value before
 * any comparison, so approximation bounds are decided exactly for both
 * rational and floating inputs.
 */

#include "bigint.hpp"
#include "errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace nc {

using BigRational = boost::multiprecision::cpp_rational;

namespace detail {

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline bool fits64(i128 v) {
    return v >= static_cast<i128>(std::numeric_limits<std::int64_t>::min()) &&
           v <= static_cast<i128>(std::numeric_limits<std::int64_t>::max());
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
    std::int64_t r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

} // namespace detail

class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT(implicit)

    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    std::int64_t floor() const { return detail::floor_div(num_, den_); }

    /// Representative in [0, 1).
    Rational torus_normalized() const {
        Rational r;
        r.num_ = detail::floor_mod(num_, den_);
        r.den_ = den_;
        return r;
    }

    /// Distance to the nearest integer, as an exact rational in [0, 1/2].
    Rational torus_norm() const {
        Rational f = torus_normalized();
        Rational g = Rational(1) - f;
        return f < g ? f : g;
    }

    Rational operator-() const { return from128(-static_cast<i128>(num_), den_); }

    friend Rational operator+(Rational const& a, Rational const& b) {
        return from128(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                       static_cast<i128>(a.den_) * b.den_);
    }
    friend Rational operator-(Rational const& a, Rational const& b) { return a + (-b); }
    friend Rational operator*(Rational const& a, Rational const& b) {
        return from128(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
    }
    friend Rational operator/(Rational const& a, Rational const& b) {
        if (b.num_ == 0) throw DomainError("rational division by zero");
        return from128(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
    }
    Rational& operator+=(Rational const& o) { return *this = *this + o; }
    Rational& operator-=(Rational const& o) { return *this = *this - o; }
    Rational& operator*=(Rational const& o) { return *this = *this * o; }
    Rational& operator/=(Rational const& o) { return *this = *this / o; }

    friend bool operator==(Rational const& a, Rational const& b) = default;
    friend std::strong_ordering operator<=>(Rational const& a, Rational const& b) {
        i128 const lhs = static_cast<i128>(a.num_) * b.den_;
        i128 const rhs = static_cast<i128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, Rational const& r) { return os << r.str(); }

    /// Accepts "a", "a/b", or a finite decimal such as "-1.25".
    static Rational parse(std::string_view text);

    static Rational from128(i128 n, i128 d) {
        if (d == 0) throw DomainError("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 const g = detail::gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (!detail::fits64(n) || !detail::fits64(d)) throw ResourceError("rational overflow beyond 64 bits");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        if (r.num_ == 0) r.den_ = 1;
        return r;
    }

private:
    void assign(std::int64_t n, std::int64_t d) { *this = from128(n, d); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
    auto fail = [&](std::size_t pos) -> Rational {
        throw ParseError("malformed rational '" + std::string(text) + "'", pos);
    };
    std::size_t i = 0;
    while (i < text.size() && text[i] == ' ') ++i;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    i128 whole = 0;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        whole = whole * 10 + (text[i++] - '0');
        if (++digits > 18) return fail(i);
    }
    if (digits == 0) return fail(i);
    i128 den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        std::size_t dd = 0;
        den = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            den = den * 10 + (text[i++] - '0');
            if (++dd > 18) return fail(i);
        }
        if (dd == 0) return fail(i);
        if (den == 0) throw DomainError("rational with zero denominator");
    } else if (i < text.size() && text[i] == '.') {
        ++i;
        std::size_t fd = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            whole = whole * 10 + (text[i++] - '0');
            den *= 10;
            if (++fd + digits > 18) return fail(i);
        }
    }
    while (i < text.size() && text[i] == ' ') ++i;
    if (i != text.size()) return fail(i);
    return from128(negative ? -whole : whole, den);
}

/// A frequency on the torus: exact when rational, otherwise a finite double.
using Frequency = std::variant<Rational, double>;

inline bool is_exact(Frequency const& f) { return std::holds_alternative<Rational>(f); }

inline double to_double(Frequency const& f) {
    return std::visit([](auto const& v) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Rational>) return v.to_double();
        else return v;
    }, f);
}

/// Exact binary value of a finite double.
inline BigRational exact_value(double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite real input");
    if (x == 0.0) return BigRational(0);
    int exponent = 0;
    double const mantissa = std::frexp(x, &exponent); // x = mantissa * 2^exponent, |mantissa| in [1/2, 1)
    auto const m = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    BigInt num = m;
    BigInt den = 1;
    if (exponent >= 0) num <<= exponent;
    else den <<= -exponent;
    return BigRational(num, den);
}

inline BigRational exact_value(Rational const& r) { return BigRational(BigInt(r.num()), BigInt(r.den())); }

inline BigRational exact_value(Frequency const& f) {
    return std::visit([](auto const& v) { return exact_value(v); }, f);
}

inline BigInt floor_big(BigRational const& x) {
    BigInt n = boost::multiprecision::numerator(x);
    BigInt d = boost::multiprecision::denominator(x);
    BigInt q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q;
}

/// Reduced fraction a/q; with `torus_normalize` the numerator is taken mod q.
inline Rational reduce(std::int64_t a, std::int64_t q, bool torus_normalize = false) {
    if (q <= 0) throw DomainError("reduce: denominator must satisfy q >= 1");
    Rational r(a, q);
    return torus_normalize ? r.torus_normalized() : r;
}

/// gcd of q and every entry of a; gcd((), q) = q.
inline std::int64_t coefficient_gcd(std::span<std::int64_t const> a, std::int64_t q) {
    if (q <= 0) throw DomainError("coefficient_gcd: q must be positive");
    std::int64_t g = q;
    for (auto v : a) g = std::gcd(g, v);
    return g;
}

namespace detail {

/// Last continued-fraction convergent of x with denominator <= bound (at most 64 convergents).
inline Rational last_convergent(BigRational const& x, std::int64_t bound) {
    BigInt num = boost::multiprecision::numerator(x);
    BigInt den = boost::multiprecision::denominator(x);
    BigInt p2 = 0, p1 = 1, q2 = 1, q1 = 0;
    BigInt best_p = 0, best_q = 0;
    for (int step = 0; step < 64; ++step) {
        BigInt a = num / den;
        if (num % den != 0 && num < 0) a -= 1;
        BigInt p = a * p1 + p2;
        BigInt q = a * q1 + q2;
        if (q > bound) break;
        best_p = p;
        best_q = q;
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
        BigInt rem = num - a * den;
        if (rem == 0) break;
        num = den;
        den = rem;
    }
    auto pn = to_int64(best_p);
    if (!pn) throw ResourceError("dirichlet_approx: numerator exceeds 64 bits");
    return Rational(*pn, static_cast<std::int64_t>(best_q));
}

/// |x - a/q| * scale <= 1/q, decided exactly.
inline bool within(BigRational const& x, Rational const& r, BigRational const& bound) {
    BigRational diff = x - exact_value(r);
    if (diff < 0) diff = -diff;
    return diff <= bound;
}

} // namespace detail

/**
 * Dirichlet approximation: reduced a/q with 1 <= q <= Q and |xi - a/q| <= 1/(qQ).
 *
 * Uses the last continued-fraction convergent with denominator at most Q;
 * falls back to exhaustive search over q <= Q if the 64-convergent cap is hit.
 */
inline Rational dirichlet_approx(BigRational const& xi, std::int64_t Q) {
    if (Q < 1) throw DomainError("dirichlet_approx: Q must be >= 1");
    Rational best = detail::last_convergent(xi, Q);
    if (detail::within(xi, best, BigRational(1, BigInt(best.den()) * Q))) return best;
    if (Q > 10'000'000) throw ConvergenceError("dirichlet_approx: convergent cap reached and Q too large for search");
    for (std::int64_t q = 1; q <= Q; ++q) {
        BigInt a = floor_big(xi * q + BigRational(1, 2));
        auto an = to_int64(a);
        if (!an) continue;
        Rational r(*an, q);
        if (r.den() == q && detail::within(xi, r, BigRational(1, BigInt(q) * Q))) return r;
    }
    throw ConvergenceError("dirichlet_approx: no approximation found");
}

inline Rational dirichlet_approx(Frequency const& xi, std::int64_t Q) { return dirichlet_approx(exact_value(xi), Q); }
inline Rational dirichlet_approx(double xi, std::int64_t Q) { return dirichlet_approx(exact_value(xi), Q); }

/**
 * Rescaled approximation: given |theta - a/q| <= 1/q^2 with 0 <= a < q <= M and (a,q) = 1,
 * returns the torus-normalized a'/q' of smallest denominator with
 * ||Q*theta - a'/q'|| <= 1/(2 q' M) and q/(2Q) <= q' <= 2M.
 */
inline Rational rescale_approx(Frequency const& theta, Rational const& a_over_q, std::int64_t scale_Q,
                               std::int64_t M) {
    if (scale_Q < 1 || M < 1) throw ContractError("rescale_approx: requires Q >= 1 and M >= 1");
    std::int64_t const a = a_over_q.num();
    std::int64_t const q = a_over_q.den();
    if (a < 0 || a >= q) throw ContractError("rescale_approx: requires 0 <= a < q");
    if (q > M) throw ContractError("rescale_approx: requires q <= M");
    BigRational const th = exact_value(theta);
    {
        BigRational d = th - exact_value(a_over_q);
        if (d < 0) d = -d;
        if (d > BigRational(1, BigInt(q) * q)) throw ContractError("rescale_approx: requires |theta - a/q| <= 1/q^2");
    }
    BigRational x = th * scale_Q;
    x -= BigRational(floor_big(x));
    BigInt const lower_num = q;
    BigInt const lower_den = 2 * BigInt(scale_Q);

    auto accept = [&](Rational const& r) {
        BigInt const qq = r.den();
        if (qq * lower_den < lower_num || qq > 2 * BigInt(M)) return false;
        return detail::within(x, r, BigRational(1, 2 * qq * M));
    };

    if (2 * M <= (1 << 16)) {
        for (std::int64_t qq = 1; qq <= 2 * M; ++qq) {
            BigInt an = floor_big(x * qq + BigRational(1, 2));
            Rational r(static_cast<std::int64_t>(an), qq);
            if (r.den() != qq) continue;
            if (accept(r)) return r.torus_normalized();
        }
    } else {
        Rational r = dirichlet_approx(x, 2 * M);
        if (accept(r)) return r.torus_normalized();
    }
    throw ContractError("rescale_approx: no fraction satisfies |Q theta - a'/q'| <= 1/(2q'M) with q/(2Q) <= q' <= 2M");
}

/// `lhs <= rhs` allowing a 4-ulp guard band on the right-hand side.
inline bool leq_guarded(double lhs, double rhs) {
    double const ulp = std::nextafter(std::fabs(rhs), std::numeric_limits<double>::infinity()) - std::fabs(rhs);
    return lhs <= rhs + 4.0 * ulp;
}

} // namespace nc
