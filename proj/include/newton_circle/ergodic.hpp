// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Polynomial averages on the integer shift system: full and truncated averages
 * of finitely supported functions, character averages, lacunary sector grids
 * and the factorization identity for separable polynomials.
 */

#include "arith.hpp"
#include "errors.hpp"
#include "expsum.hpp"
#include "newton.hpp"
#include "parallel.hpp"
#include "poly.hpp"
#include "summation.hpp"

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nc {

/// Finitely supported f: Z -> C; absent points are zero.
class FiniteFunction {
public:
    FiniteFunction() = default;

    static FiniteFunction delta(std::int64_t at) {
        FiniteFunction f;
        f.set(at, 1.0);
        return f;
    }

    void set(std::int64_t x, std::complex<double> v) {
        if (v == std::complex<double>(0.0, 0.0)) values_.erase(x);
        else values_[x] = v;
    }

    void add(std::int64_t x, std::complex<double> v) { set(x, at(x) + v); }

    std::complex<double> at(std::int64_t x) const {
        auto it = values_.find(x);
        return it == values_.end() ? std::complex<double>(0.0, 0.0) : it->second;
    }

    std::map<std::int64_t, std::complex<double>> const& support() const { return values_; }

    /// {"x": [re, im], ...}
    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (auto const& [x, v] : values_) j[std::to_string(x)] = {v.real(), v.imag()};
        return j;
    }

    static FiniteFunction from_json(nlohmann::json const& j) {
        if (!j.is_object()) throw ParseError("finite function must be a JSON object", 0);
        FiniteFunction f;
        std::size_t pos = 0;
        for (auto const& [key, val] : j.items()) {
            std::size_t used = 0;
            std::int64_t x = 0;
            try {
                x = std::stoll(key, &used);
            } catch (std::exception const&) {
                used = 0;
            }
            if (used == 0 || used != key.size()) throw ParseError("finite function key '" + key + "' is not an integer", pos);
            if (!val.is_array() || val.size() != 2 || !val[0].is_number() || !val[1].is_number())
                throw ParseError("finite function value at '" + key + "' must be [re, im]", pos);
            f.set(x, {val[0].get<double>(), val[1].get<double>()});
            ++pos;
        }
        return f;
    }

private:
    std::map<std::int64_t, std::complex<double>> values_;
};

enum class RegionKind { Full, Truncated };

/// Q_M = [M1] x [M2], or R_M = ([M1] \ [M1/tau]) x ([M2] \ [M2/tau]) when truncated.
struct AverageSpec {
    Poly2 P;
    Rational M1{1};
    Rational M2{1};
    RegionKind region = RegionKind::Full;
    Rational tau{2};
};

/// Integer range K < m <= N on each axis.
struct RegionBounds {
    std::int64_t K1 = 0, N1 = 0, K2 = 0, N2 = 0;
    std::uint64_t cardinality() const {
        return static_cast<std::uint64_t>(N1 - K1) * static_cast<std::uint64_t>(N2 - K2);
    }
};

inline RegionBounds region_bounds(Rational const& M1, Rational const& M2, RegionKind kind, Rational const& tau) {
    if (kind == RegionKind::Truncated && !(tau > Rational(1))) throw ContractError("truncated region requires rational tau > 1");
    RegionBounds b;
    b.N1 = M1.floor();
    b.N2 = M2.floor();
    if (kind == RegionKind::Truncated) {
        b.K1 = (M1 / tau).floor();
        b.K2 = (M2 / tau).floor();
    }
    if (b.N1 <= std::max<std::int64_t>(b.K1, 0) || b.N2 <= std::max<std::int64_t>(b.K2, 0))
        throw DomainError("averaging region is empty");
    b.K1 = std::max<std::int64_t>(b.K1, 0);
    b.K2 = std::max<std::int64_t>(b.K2, 0);
    return b;
}

inline RegionBounds region_bounds(AverageSpec const& s) { return region_bounds(s.M1, s.M2, s.region, s.tau); }

namespace detail {

/// P(m1, m2) in 128-bit arithmetic, or nullopt on overflow.
inline std::optional<i128> evaluate_small(Poly2 const& p, std::int64_t m1, std::int64_t m2) {
    i128 acc = 0;
    for (auto const& [e, c] : p.terms()) {
        if (c > std::numeric_limits<std::int64_t>::max() || c < std::numeric_limits<std::int64_t>::min()) return std::nullopt;
        i128 t = static_cast<std::int64_t>(c);
        for (int i = 0; i < e.e1; ++i)
            if (__builtin_mul_overflow(t, static_cast<i128>(m1), &t)) return std::nullopt;
        for (int i = 0; i < e.e2; ++i)
            if (__builtin_mul_overflow(t, static_cast<i128>(m2), &t)) return std::nullopt;
        if (__builtin_add_overflow(acc, t, &acc)) return std::nullopt;
    }
    return acc;
}

/// f(x - v) with v given exactly; zero when x - v leaves the 64-bit range.
inline std::complex<double> pull_back(FiniteFunction const& f, std::int64_t x, Poly2 const& p, std::int64_t m1, std::int64_t m2) {
    if (auto v = evaluate_small(p, m1, m2)) {
        i128 const y = static_cast<i128>(x) - *v;
        return fits64(y) ? f.at(static_cast<std::int64_t>(y)) : std::complex<double>(0.0, 0.0);
    }
    BigInt const y = BigInt(x) - evaluate(p, BigInt(m1), BigInt(m2));
    if (y > std::numeric_limits<std::int64_t>::max() || y < std::numeric_limits<std::int64_t>::min()) return {0.0, 0.0};
    return f.at(static_cast<std::int64_t>(y));
}

} // namespace detail

/// |R|^{-1} sum_{m in R} f(x - P(m1, m2)).
inline std::complex<double> shift_average(AverageSpec const& spec, FiniteFunction const& f, std::int64_t x) {
    auto const b = region_bounds(spec);
    ComplexAccumulator acc;
    for (std::int64_t m1 = b.K1 + 1; m1 <= b.N1; ++m1)
        for (std::int64_t m2 = b.K2 + 1; m2 <= b.N2; ++m2) acc.add(detail::pull_back(f, x, spec.P, m1, m2));
    return acc.value() / static_cast<double>(b.cardinality());
}

/// shift_average at every x, in input order.
inline std::vector<std::complex<double>> shift_averages(AverageSpec const& spec, FiniteFunction const& f,
                                                        std::vector<std::int64_t> const& xs) {
    region_bounds(spec);
    std::vector<std::complex<double>> out(xs.size());
    run_blocks(xs.size(), [&](std::size_t i) { out[i] = shift_average(spec, f, xs[i]); });
    return out;
}

struct CharacterAverage {
    std::complex<double> value;
    ExpSumValue sum;
    std::uint64_t cardinality = 0;
};

/// |R|^{-1} sum_{m in R} e(theta P(m)). The shift average of x -> e(theta x) is
/// e(theta x) times the conjugate of this value.
inline CharacterAverage character_average(Poly2 const& P, Frequency const& theta, Rational const& M1, Rational const& M2,
                                          RegionKind region = RegionKind::Full, Rational const& tau = Rational(2)) {
    auto const b = region_bounds(M1, M2, region, tau);
    CharacterAverage c;
    c.sum = double_sum(scale(P, theta), b.K1, b.N1, b.K2, b.N2);
    c.cardinality = b.cardinality();
    c.value = c.sum.value / static_cast<double>(c.cardinality);
    return c;
}

/// A scale (tau^n1, tau^n2) of the lacunary grid.
struct ScalePoint {
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    Rational M1;
    Rational M2;
};

/// All (tau^n1, tau^n2) with (n1, n2) in the closed sector S(j) and both scales <= bound.
inline std::vector<ScalePoint> sector_grid(NewtonDiagram const& d, int j, Rational const& tau, double bound) {
    detail::check_j(d, j);
    if (!(tau > Rational(1))) throw ContractError("sector_grid: tau must be a rational > 1");
    std::vector<Rational> powers;
    for (Rational p(1); p.to_double() <= bound; p *= tau) powers.push_back(p);
    std::vector<ScalePoint> out;
    for (std::size_t a = 0; a < powers.size(); ++a)
        for (std::size_t b = 0; b < powers.size(); ++b) {
            IntPair const pt{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
            auto const in = sector_membership(d, pt);
            if (std::find(in.begin(), in.end(), j) != in.end()) out.push_back({pt.x, pt.y, powers[a], powers[b]});
        }
    return out;
}

/// One-parameter average g = A^{Q}_{M} f, built by pushing f forward along Q(1..floor(M)).
inline FiniteFunction one_parameter_average(UniPoly const& Q, Rational const& M, FiniteFunction const& f) {
    std::int64_t const N = M.floor();
    if (N < 1) throw DomainError("one_parameter_average: empty range");
    std::vector<std::int64_t> shifts;
    for (std::int64_t m = 1; m <= N; ++m) {
        BigInt const v = Q.evaluate(BigInt(m));
        if (v > std::numeric_limits<std::int64_t>::max() / 2 || v < std::numeric_limits<std::int64_t>::min() / 2)
            throw ResourceError("one_parameter_average: shift exceeds the 64-bit range");
        shifts.push_back(static_cast<std::int64_t>(v));
    }
    std::map<std::int64_t, ComplexAccumulator> acc;
    for (auto const& [y, v] : f.support())
        for (std::int64_t s : shifts) acc[y + s].add(v);
    FiniteFunction g;
    for (auto const& [x, a] : acc) g.set(x, a.value() / static_cast<double>(N));
    return g;
}

/// max over both composition orders of |A^{P1+P2}_{M1,M2} f(x) - A^{P1}_{M1} A^{P2}_{M2} f(x)|.
/// The two-parameter side pulls f back point by point; the composed side pushes f forward.
inline double degenerate_factorization_gap(UniPoly const& P1, UniPoly const& P2, FiniteFunction const& f,
                                           Rational const& M1, Rational const& M2, std::int64_t x) {
    if (P1.coefficient(0) != 0 || P2.coefficient(0) != 0)
        throw ContractError("degenerate_factorization_gap: requires P1(0) = P2(0) = 0");
    Poly2 P;
    for (int k = 1; k <= P1.degree(); ++k) P.add_term({k, 0}, P1.coefficient(k));
    for (int k = 1; k <= P2.degree(); ++k) P.add_term({0, k}, P2.coefficient(k));
    std::complex<double> const direct = shift_average(AverageSpec{P, M1, M2}, f, x);
    std::complex<double> const a = one_parameter_average(P1, M1, one_parameter_average(P2, M2, f)).at(x);
    std::complex<double> const b = one_parameter_average(P2, M2, one_parameter_average(P1, M1, f)).at(x);
    return std::max(std::abs(direct - a), std::abs(direct - b));
}

/// A non-separable P compared with the composition of its pure m1 and pure m2 parts.
struct SeparableControl {
    UniPoly P1;
    UniPoly P2;
    std::int64_t x = 0;
    double gap = 0.0;
};

/// Searches x in [-radius, radius] with f = delta_0 for the largest gap between A^P f(x) and
/// A^{P1} A^{P2} f(x), where P1, P2 collect the monomials of P in m1 alone and m2 alone.
inline SeparableControl separable_control(Poly2 const& P, Rational const& M1, Rational const& M2, std::int64_t radius) {
    SeparableControl c;
    for (auto const& [e, coef] : P.terms()) {
        if (e.e2 == 0) c.P1.add(e.e1, coef);
        else if (e.e1 == 0) c.P2.add(e.e2, coef);
    }
    FiniteFunction const f = FiniteFunction::delta(0);
    FiniteFunction const composed = one_parameter_average(c.P1, M1, one_parameter_average(c.P2, M2, f));
    for (std::int64_t x = -radius; x <= radius; ++x) {
        double const g = std::abs(shift_average(AverageSpec{P, M1, M2}, f, x) - composed.at(x));
        if (g > c.gap) {
            c.gap = g;
            c.x = x;
        }
    }
    return c;
}

/// The full sum over Q_{tau^n} against the sum of truncated sums over R_{tau^l}, l <= n.
struct DecompositionCheck {
    ExpSumValue full;
    std::complex<double> pieces_value;
    std::vector<std::int64_t> pieces_histogram;
    bool histograms_equal = false;
};

inline DecompositionCheck truncated_decomposition(Poly2 const& P, Frequency const& theta, Rational const& tau, int n1, int n2) {
    if (!(tau > Rational(1))) throw ContractError("truncated_decomposition: tau must be a rational > 1");
    if (n1 < 0 || n2 < 0) throw ContractError("truncated_decomposition: exponents must be nonnegative");
    auto power = [&](int n) {
        Rational p(1);
        for (int i = 0; i < n; ++i) p *= tau;
        return p;
    };
    RealPoly2 const q = scale(P, theta);
    DecompositionCheck out;
    out.full = double_sum(q, 0, power(n1).floor(), 0, power(n2).floor());
    ComplexAccumulator acc;
    bool exact = out.full.mode == PhaseMode::ExactRational;
    if (exact) out.pieces_histogram.assign(out.full.histogram.size(), 0);
    for (int l1 = 0; l1 <= n1; ++l1)
        for (int l2 = 0; l2 <= n2; ++l2) {
            Rational const M1 = power(l1), M2 = power(l2);
            std::int64_t const K1 = (M1 / tau).floor(), N1 = M1.floor();
            std::int64_t const K2 = (M2 / tau).floor(), N2 = M2.floor();
            if (N1 <= K1 || N2 <= K2) continue; // R_M can be empty when tau is not an integer
            auto const piece = double_sum(q, K1, N1, K2, N2);
            acc.add(piece.value);
            if (exact && piece.histogram.size() == out.pieces_histogram.size()) {
                for (std::size_t t = 0; t < piece.histogram.size(); ++t) out.pieces_histogram[t] += piece.histogram[t];
            } else {
                exact = false;
            }
        }
    out.pieces_value = acc.value();
    out.histograms_equal = exact && out.pieces_histogram == out.full.histogram;
    return out;
}

} // namespace nc
