// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Sparse bivariate integer polynomials P(m1, m2) = sum c_{g1,g2} m1^g1 m2^g2.
 *
 * Coefficients are arbitrary-precision; exponents are bounded by
 * `kMaxExponent` per axis so every evaluation is overflow free by
 * construction. `RealPoly2` carries the real scaling xi * P together with
 * the data needed for exact phase evaluation downstream.
 */

#include "arith.hpp"
#include "bigint.hpp"
#include "errors.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nc {

inline constexpr int kMaxExponent = 64;

struct Exponent {
    int e1 = 0;
    int e2 = 0;

    friend auto operator<=>(Exponent const&, Exponent const&) = default;
    friend bool operator==(Exponent const&, Exponent const&) = default;
};

namespace detail {

inline BigInt big_pow(BigInt base, int e) {
    BigInt r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline void check_exponent(Exponent e) {
    if (e.e1 < 0 || e.e2 < 0 || e.e1 > kMaxExponent || e.e2 > kMaxExponent)
        throw DomainError("exponent outside [0, 64] per axis");
}

inline std::string monomial_text(Exponent e) {
    std::string s;
    auto var = [&](char const* name, int k) {
        if (k == 0) return;
        if (!s.empty()) s += "*";
        s += name;
        if (k > 1) s += "^" + std::to_string(k);
    };
    var("m1", e.e1);
    var("m2", e.e2);
    return s;
}

} // namespace detail

/// Univariate integer polynomial, coefficients in increasing degree; no trailing zeros.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

    std::vector<BigInt> const& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    BigInt coefficient(int k) const { return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : BigInt(0); }

    void add(int k, BigInt const& c) {
        if (k < 0) throw DomainError("negative exponent");
        if (static_cast<int>(coeffs_.size()) <= k) coeffs_.resize(k + 1);
        coeffs_[k] += c;
        trim();
    }

    BigInt evaluate(BigInt const& x) const {
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    std::string str(std::string const& var = "m1") const;

    friend bool operator==(UniPoly const&, UniPoly const&) = default;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

class Poly2 {
public:
    using TermMap = std::map<Exponent, BigInt>;

    Poly2() = default;

    static Poly2 monomial(BigInt c, int e1, int e2) {
        Poly2 p;
        p.add_term({e1, e2}, c);
        return p;
    }

    /// Adds c * m1^e1 m2^e2, merging like terms and dropping exact zeros.
    void add_term(Exponent e, BigInt const& c) {
        detail::check_exponent(e);
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TermMap const& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    BigInt coefficient(Exponent e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigInt(0) : it->second;
    }
    BigInt constant_term() const { return coefficient({0, 0}); }

    int total_degree() const {
        int d = 0;
        for (auto const& [e, c] : terms_) d = std::max(d, e.e1 + e.e2);
        return d;
    }
    /// Partial degree in m1 (d_1).
    int degree1() const {
        int d = 0;
        for (auto const& [e, c] : terms_) d = std::max(d, e.e1);
        return d;
    }
    /// Partial degree in m2 (d_2).
    int degree2() const {
        int d = 0;
        for (auto const& [e, c] : terms_) d = std::max(d, e.e2);
        return d;
    }

    Poly2 operator-() const {
        Poly2 r;
        for (auto const& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend Poly2 operator+(Poly2 a, Poly2 const& b) {
        for (auto const& [e, c] : b.terms_) a.add_term(e, c);
        return a;
    }
    friend Poly2 operator-(Poly2 const& a, Poly2 const& b) { return a + (-b); }
    friend bool operator==(Poly2 const&, Poly2 const&) = default;

    /// Canonical text in the parser grammar, e.g. "2*m1*m2 - m2^4".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            auto const& [e, c] = *it;
            BigInt mag = c < 0 ? BigInt(-c) : c;
            if (first) s += c < 0 ? "-" : "";
            else s += c < 0 ? " - " : " + ";
            std::string mono = detail::monomial_text(e);
            if (mono.empty()) s += mag.str();
            else if (mag == 1) s += mono;
            else s += mag.str() + "*" + mono;
            first = false;
        }
        return s;
    }

private:
    TermMap terms_;
};

inline std::string UniPoly::str(std::string const& var) const {
    Poly2 p;
    for (int k = 0; k <= degree(); ++k) p.add_term({k, 0}, coeffs_[k]);
    std::string s = p.str();
    if (var != "m1") {
        for (std::size_t pos = s.find("m1"); pos != std::string::npos; pos = s.find("m1", pos + var.size()))
            s.replace(pos, 2, var);
    }
    return s;
}

/// S_P: exponent pairs carrying a nonzero coefficient.
inline std::set<Exponent> support(Poly2 const& p) {
    std::set<Exponent> s;
    for (auto const& [e, c] : p.terms()) s.insert(e);
    return s;
}

/// True iff P has no mixed monomial, i.e. P = P1(m1) + P2(m2). Requires P(0,0) = 0.
inline bool is_degenerate(Poly2 const& p) {
    if (p.constant_term() != 0) throw DomainError("is_degenerate: requires P(0,0) = 0");
    for (auto const& [e, c] : p.terms())
        if (e.e1 > 0 && e.e2 > 0) return false;
    return true;
}

/// Exact value, term by term.
inline BigInt evaluate(Poly2 const& p, BigInt const& m1, BigInt const& m2) {
    BigInt acc = 0;
    for (auto const& [e, c] : p.terms()) acc += c * detail::big_pow(m1, e.e1) * detail::big_pow(m2, e.e2);
    return acc;
}

struct AxisDecomposition {
    /// 2: P = sum_g P_{1,g}(m1) m2^g; 1: P = sum_g P_{2,g}(m2) m1^g.
    int axis = 2;
    std::map<int, UniPoly> parts;
    /// Largest exponent along `axis` (d_2 for axis 2, d_1 for axis 1).
    int top_exponent = 0;
    /// Degree of the part at `top_exponent` (the tilde-d exponent).
    int tilde_degree = -1;
};

inline AxisDecomposition axis_decompose(Poly2 const& p, int axis) {
    if (axis != 1 && axis != 2) throw DomainError("axis must be 1 or 2");
    AxisDecomposition d;
    d.axis = axis;
    for (auto const& [e, c] : p.terms()) {
        int const outer = axis == 2 ? e.e2 : e.e1;
        int const inner = axis == 2 ? e.e1 : e.e2;
        d.parts[outer].add(inner, c);
    }
    if (!d.parts.empty()) {
        d.top_exponent = d.parts.rbegin()->first;
        d.tilde_degree = d.parts.rbegin()->second.degree();
    }
    return d;
}

inline Poly2 recompose(AxisDecomposition const& d) {
    Poly2 p;
    for (auto const& [outer, part] : d.parts) {
        for (int k = 0; k <= part.degree(); ++k) {
            Exponent e = d.axis == 2 ? Exponent{k, outer} : Exponent{outer, k};
            p.add_term(e, part.coefficient(k));
        }
    }
    return p;
}

/// Second evaluation path: Horner in m2 over the axis-2 parts, each part by Horner in m1.
inline BigInt evaluate_horner(Poly2 const& p, BigInt const& m1, BigInt const& m2) {
    auto const d = axis_decompose(p, 2);
    BigInt acc = 0;
    for (int g = d.top_exponent; g >= 0; --g) {
        acc *= m2;
        if (auto it = d.parts.find(g); it != d.parts.end()) acc += it->second.evaluate(m1);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Real scalings

namespace detail {

/// Fractional part of a finite double as a 0.128 fixed-point number (exact for |x| >= 2^-75).
inline u128 fixed_fraction(double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite coefficient");
    // x + 1 would round for tiny negative x; negate in fixed point instead.
    if (x < 0) return static_cast<u128>(0) - fixed_fraction(-x);
    double const f = x - std::floor(x);
    if (f == 0.0) return 0;
    int exponent = 0;
    double const mantissa = std::frexp(f, &exponent);
    auto const m = static_cast<u128>(static_cast<std::uint64_t>(std::ldexp(mantissa, 53)));
    int const shift = 128 + exponent - 53;
    if (shift >= 128 || shift <= -128) return 0;
    return shift >= 0 ? (m << shift) : (m >> -shift);
}

/// floor(2^128 * r / L) for 0 <= r < L < 2^63.
inline u128 fixed_ratio(std::uint64_t r, std::uint64_t L) {
    u128 const hi_num = static_cast<u128>(r) << 64;
    u128 const hi = hi_num / L;
    u128 const rem = hi_num % L;
    u128 const lo = (rem << 64) / L;
    return (hi << 64) | lo;
}

} // namespace detail

/// Coefficients num_g / den with a common positive denominator.
struct ExactCoefficients {
    std::map<Exponent, BigInt> numerators;
    BigInt denominator = 1;
};

/**
 * Real-coefficient bivariate polynomial. Always carries 0.128 fixed-point
 * fractional parts of its coefficients for float-phase evaluation; carries
 * exact rational coefficients when built from rationals (the exact tag).
 */
class RealPoly2 {
public:
    RealPoly2() = default;

    static RealPoly2 from_doubles(std::map<Exponent, double> const& coeffs) {
        RealPoly2 r;
        for (auto const& [e, c] : coeffs) {
            detail::check_exponent(e);
            if (!std::isfinite(c)) throw DomainError("non-finite coefficient");
            if (c == 0.0) continue;
            r.coeffs_[e] = c;
            r.fixed_[e] = detail::fixed_fraction(c);
        }
        return r;
    }

    static RealPoly2 from_rationals(std::map<Exponent, Rational> const& coeffs) {
        BigInt L = 1;
        for (auto const& [e, c] : coeffs) L = boost::multiprecision::lcm(L, BigInt(c.den()));
        ExactCoefficients ex;
        ex.denominator = L;
        for (auto const& [e, c] : coeffs) {
            detail::check_exponent(e);
            if (c.is_zero()) continue;
            ex.numerators[e] = BigInt(c.num()) * (L / c.den());
        }
        return from_exact(std::move(ex));
    }

    static RealPoly2 from_exact(ExactCoefficients ex) {
        RealPoly2 r;
        if (ex.denominator <= 0) throw DomainError("exact denominator must be positive");
        for (auto it = ex.numerators.begin(); it != ex.numerators.end();) {
            if (it->second == 0) it = ex.numerators.erase(it);
            else ++it;
        }
        for (auto const& [e, n] : ex.numerators) {
            r.coeffs_[e] = static_cast<double>(BigRational(n, ex.denominator));
            r.fixed_[e] = fixed_of_ratio(n, ex.denominator);
        }
        r.exact_ = std::move(ex);
        return r;
    }

    std::map<Exponent, double> const& coefficients() const noexcept { return coeffs_; }
    std::map<Exponent, u128> const& fixed_fractions() const noexcept { return fixed_; }
    bool is_exact() const noexcept { return exact_.has_value(); }
    ExactCoefficients const& exact() const { return *exact_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    RealPoly2 negated() const {
        RealPoly2 r;
        for (auto const& [e, c] : coeffs_) r.coeffs_[e] = -c;
        for (auto const& [e, f] : fixed_) r.fixed_[e] = static_cast<u128>(0) - f;
        if (exact_) {
            ExactCoefficients ex;
            ex.denominator = exact_->denominator;
            for (auto const& [e, n] : exact_->numerators) ex.numerators[e] = -n;
            r.exact_ = std::move(ex);
        }
        return r;
    }

    double evaluate(double m1, double m2) const {
        long double acc = 0;
        for (auto const& [e, c] : coeffs_)
            acc += static_cast<long double>(c) * std::pow(static_cast<long double>(m1), e.e1) *
                   std::pow(static_cast<long double>(m2), e.e2);
        return static_cast<double>(acc);
    }

    /// Builds the float-phase data for xi * P directly from exact integer coefficients.
    static RealPoly2 scaled(Poly2 const& p, double xi) {
        RealPoly2 r;
        if (!std::isfinite(xi)) throw DomainError("non-finite frequency");
        if (xi == 0.0) return r;
        // frac(xi * c) = frac(frac(xi) * c) because floor(xi) * c is an integer.
        u128 const fx = detail::fixed_fraction(xi);
        for (auto const& [e, c] : p.terms()) {
            r.coeffs_[e] = xi * static_cast<double>(c);
            r.fixed_[e] = fx * wrap_u128(c);
        }
        return r;
    }

private:
    static u128 fixed_of_ratio(BigInt const& n, BigInt const& d) {
        BigInt r = n % d;
        if (r < 0) r += d;
        BigInt scaled = (r << 128) / d;
        return wrap_u128(scaled);
    }

    std::map<Exponent, double> coeffs_;
    std::map<Exponent, u128> fixed_;
    std::optional<ExactCoefficients> exact_;
};

/// P_xi = xi * P; exact-tagged when xi is rational.
inline RealPoly2 scale(Poly2 const& p, Frequency const& xi) {
    if (auto const* r = std::get_if<Rational>(&xi)) {
        ExactCoefficients ex;
        ex.denominator = r->den();
        for (auto const& [e, c] : p.terms()) ex.numerators[e] = c * r->num();
        return RealPoly2::from_exact(std::move(ex));
    }
    return RealPoly2::scaled(p, std::get<double>(xi));
}

} // namespace nc
