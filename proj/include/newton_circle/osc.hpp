// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Multi-parameter oscillation semi-norms over finite index sets, rho-variation,
 * and the dyadic Rademacher–Menshov majorant.
 */

#include "errors.hpp"
#include "report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace nc {

/// Finite family of complex values indexed by points of R^K.
template <std::size_t K>
class IndexedFamily {
public:
    static_assert(K == 1 || K == 2, "only one- and two-parameter families are supported");
    using Point = std::array<double, K>;

    IndexedFamily() = default;

    /// 1-D family on the integers t0, t0 + 1, ...
    static IndexedFamily from_values(std::vector<std::complex<double>> const& values, std::int64_t t0 = 0)
        requires(K == 1)
    {
        IndexedFamily f;
        for (std::size_t i = 0; i < values.size(); ++i) f.set({static_cast<double>(t0 + static_cast<std::int64_t>(i))}, values[i]);
        return f;
    }

    void set(Point const& t, std::complex<double> v) { values_[t] = v; }
    bool contains(Point const& t) const { return values_.count(t) != 0; }

    std::complex<double> at(Point const& t) const {
        auto it = values_.find(t);
        if (it == values_.end()) throw DomainError("IndexedFamily: point outside the index set");
        return it->second;
    }

    std::map<Point, std::complex<double>> const& entries() const { return values_; }
    std::size_t size() const { return values_.size(); }

    IndexedFamily operator+(IndexedFamily const& o) const {
        IndexedFamily r = *this;
        for (auto const& [t, v] : o.values_) r.values_[t] += v;
        return r;
    }

    IndexedFamily operator*(std::complex<double> c) const {
        IndexedFamily r = *this;
        for (auto& [t, v] : r.values_) v *= c;
        return r;
    }

private:
    std::map<Point, std::complex<double>> values_;
};

/// I_0 < I_1 < ... < I_J, strictly in every coordinate.
template <std::size_t K>
struct IncreasingSequence {
    std::vector<std::array<double, K>> points;
    std::size_t J() const { return points.empty() ? 0 : points.size() - 1; }
};

namespace detail {

template <std::size_t K>
bool strictly_below(std::array<double, K> const& a, std::array<double, K> const& b) {
    for (std::size_t i = 0; i < K; ++i)
        if (!(a[i] < b[i])) return false;
    return true;
}

template <std::size_t K>
bool in_box(std::array<double, K> const& t, std::array<double, K> const& lo, std::array<double, K> const& hi) {
    for (std::size_t i = 0; i < K; ++i)
        if (t[i] < lo[i] || !(t[i] < hi[i])) return false;
    return true;
}

} // namespace detail

template <std::size_t K>
bool validate_sequence(IncreasingSequence<K> const& seq, IndexedFamily<K> const& ambient) {
    if (seq.points.size() < 2) return false;
    for (auto const& p : seq.points)
        if (!ambient.contains(p)) return false;
    for (std::size_t i = 0; i + 1 < seq.points.size(); ++i)
        if (!detail::strictly_below(seq.points[i], seq.points[i + 1])) return false;
    return true;
}

/// O_{I,J} restricted to the points accepted by `in_subdomain`. Boxes are half-open
/// [I_j, I_{j+1}); the anchor value is always read from the full family.
template <std::size_t K, typename Pred>
    requires std::predicate<Pred&, std::array<double, K> const&>
double oscillation(IndexedFamily<K> const& family, IncreasingSequence<K> const& seq, Pred&& in_subdomain) {
    if (!validate_sequence(seq, family)) throw DomainError("oscillation: sequence is not strictly increasing in the index set");
    double total = 0.0;
    for (std::size_t j = 0; j < seq.J(); ++j) {
        auto const anchor = family.at(seq.points[j]);
        double sup = 0.0;
        for (auto const& [t, v] : family.entries())
            if (detail::in_box(t, seq.points[j], seq.points[j + 1]) && in_subdomain(t)) sup = std::max(sup, std::norm(v - anchor));
        total += sup;
    }
    return std::sqrt(total);
}

template <std::size_t K>
double oscillation(IndexedFamily<K> const& family, IncreasingSequence<K> const& seq) {
    return oscillation(family, seq, [](auto const&) { return true; });
}

template <std::size_t K>
double oscillation(IndexedFamily<K> const& family, IncreasingSequence<K> const& seq,
                   std::set<std::array<double, K>> const& subdomain) {
    return oscillation(family, seq, [&](auto const& t) { return subdomain.count(t) != 0; });
}

/// V^rho over all increasing subsequences, by longest-path dynamic programming on the
/// sum of rho-th powers (exact for every rho >= 1).
inline double variation(IndexedFamily<1> const& family, double rho) {
    if (!(rho >= 1.0)) throw ContractError("variation: rho must be >= 1");
    std::vector<std::complex<double>> a;
    for (auto const& [t, v] : family.entries()) a.push_back(v);
    std::vector<double> best(a.size(), 0.0);
    double top = 0.0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double const d = std::abs(a[i] - a[j]);
            double const step = rho == 2.0 ? d * d : (rho == 1.0 ? d : std::pow(d, rho));
            best[i] = std::max(best[i], best[j] + step);
        }
        top = std::max(top, best[i]);
    }
    return rho == 1.0 ? top : (rho == 2.0 ? std::sqrt(top) : std::pow(top, 1.0 / rho));
}

/// Two sides of an inequality lhs <= C * rhs.
struct Sides {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio() const { return rhs > 0 ? lhs / rhs : (lhs > 0 ? INFINITY : 0.0); }
};

/// lhs = O_{I,J} on [j0, 2^m); rhs = sqrt(2) * sum_i (sum_j |a_{(j+1)2^i} - a_{j2^i}|^2)^{1/2} over
/// dyadic U_j^i = [j2^i, (j+1)2^i) inside [j0, 2^m). Blocks ending at 2^m need a value outside
/// the family and are left out.
inline Sides rademacher_menshov_sides(IndexedFamily<1> const& family, IncreasingSequence<1> const& seq) {
    auto const& e = family.entries();
    if (e.empty()) throw DomainError("rademacher_menshov_sides: empty family");
    double const lo = e.begin()->first[0];
    double const hi = e.rbegin()->first[0];
    auto const j0 = static_cast<std::int64_t>(lo);
    auto const last = static_cast<std::int64_t>(hi);
    if (j0 < 0 || static_cast<double>(j0) != lo || static_cast<double>(last) != hi ||
        static_cast<std::int64_t>(e.size()) != last - j0 + 1)
        throw DomainError("rademacher_menshov_sides: index set must be an integer interval [j0, 2^m)");
    std::int64_t const top = last + 1;
    if ((top & (top - 1)) != 0) throw DomainError("rademacher_menshov_sides: interval must end at 2^m - 1");
    int m = 0;
    while ((std::int64_t{1} << m) < top) ++m;

    auto value = [&](std::int64_t k) { return family.at({static_cast<double>(k)}); };
    double rhs = 0.0;
    for (int i = 0; i <= m; ++i) {
        std::int64_t const len = std::int64_t{1} << i;
        double level = 0.0;
        for (std::int64_t j = 0; (j + 1) * len <= top; ++j) {
            std::int64_t const a = j * len;
            std::int64_t const b = (j + 1) * len;
            if (a < j0 || b >= top) continue;
            level += std::norm(value(b) - value(a));
        }
        rhs += std::sqrt(level);
    }
    return {oscillation(family, seq), std::sqrt(2.0) * rhs};
}

/// O_{I,J} over a subdomain against 2 (sum_t |a_t|^2)^{1/2}.
template <std::size_t K, typename Pred>
Sides crude_bound_sides(IndexedFamily<K> const& family, IncreasingSequence<K> const& seq, Pred&& in_subdomain) {
    double l2 = 0.0;
    for (auto const& [t, v] : family.entries()) l2 += std::norm(v);
    return {oscillation(family, seq, in_subdomain), 2.0 * std::sqrt(l2)};
}

/// max_t |a_t| against max over the sequence points plus O_{I,J}. The sequence must start
/// at the smallest index and end at the largest.
inline Sides max_vs_osc(IndexedFamily<1> const& family, IncreasingSequence<1> const& seq) {
    auto const& e = family.entries();
    if (seq.points.empty() || seq.points.front() != e.begin()->first || seq.points.back() != e.rbegin()->first)
        throw ContractError("max_vs_osc: sequence must span the index set");
    double mx = 0.0;
    for (auto const& [t, v] : e) mx = std::max(mx, std::abs(v));
    double on_seq = 0.0;
    for (auto const& p : seq.points) on_seq = std::max(on_seq, std::abs(family.at(p)));
    return {mx, on_seq + oscillation(family, seq)};
}

/// Both sides of the projection comparison for a two-parameter family: O_{I,J} over the whole
/// index set against (sum over coordinate l values of the sup of |a|^2 along that slice)^{1/2}.
/// The implied constant is unquantified, so only the ratio is meaningful.
inline Sides projection_sup_sides(IndexedFamily<2> const& family, IncreasingSequence<2> const& seq, int l) {
    if (l != 1 && l != 2) throw ContractError("projection_sup_sides: l must be 1 or 2");
    std::map<double, double> slice;
    for (auto const& [t, v] : family.entries()) {
        double& s = slice[t[l - 1]];
        s = std::max(s, std::norm(v));
    }
    double rhs = 0.0;
    for (auto const& [x, s] : slice) rhs += s;
    return {oscillation(family, seq), std::sqrt(rhs)};
}

namespace detail {

inline double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::complex<double> random_value(std::mt19937_64& rng) {
    return {2.0 * unit_draw(rng) - 1.0, 2.0 * unit_draw(rng) - 1.0};
}

/// Random strictly increasing 1-D sequence of integers in [lo, hi] with at least two points.
inline IncreasingSequence<1> random_sequence(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi, bool span) {
    std::vector<std::int64_t> pick;
    for (std::int64_t t = lo; t <= hi; ++t)
        if ((span && (t == lo || t == hi)) || rng() % 3 == 0) pick.push_back(t);
    if (pick.size() < 2) pick = {lo, hi};
    IncreasingSequence<1> s;
    for (auto t : pick) s.points.push_back({static_cast<double>(t)});
    return s;
}

} // namespace detail

/// Random-family sweep of the oscillation inequalities. Each property is one check whose lhs
/// is its failure count; `tol` is the relative slack allowed for reordered float sums.
inline VerificationReport verify_oscillation(int families = 500, int max_length = 64, std::uint64_t seed = 1,
                                             double tol = 1e-12) {
    VerificationReport rep;
    rep.command = "osc";
    rep.params["families"] = families;
    rep.params["max_length"] = max_length;
    rep.params["seed"] = seed;
    rep.params["relative_tolerance"] = tol;
    int m = 0;
    while ((1 << m) < max_length) ++m;
    std::int64_t const top = std::int64_t{1} << m;

    std::mt19937_64 rng(seed);
    std::map<std::string, int> failures;
    std::map<std::string, double> worst;
    std::vector<std::string> const names = {
        "semi-norm triangle inequality", "semi-norm homogeneity",   "disjoint subdomain splitting",
        "O <= V^2",                      "O <= V^1",                "Rademacher-Menshov lhs <= rhs",
        "O <= 2 * l2 norm",              "max |a| <= max on sequence + O", "two-parameter triangle inequality"};
    for (auto const& n : names) failures[n] = 0, worst[n] = 0.0;
    auto record = [&](std::string const& name, double lhs, double rhs) {
        double const slack = tol * std::max(1.0, std::fabs(rhs));
        if (!(lhs <= rhs + slack)) ++failures[name];
        if (rhs > 0) worst[name] = std::max(worst[name], lhs / rhs);
    };

    for (int f = 0; f < families; ++f) {
        std::int64_t const len = 2 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(top - 1));
        std::int64_t const j0 = top - len;
        std::vector<std::complex<double>> va(len), vb(len);
        for (auto& z : va) z = detail::random_value(rng);
        for (auto& z : vb) z = detail::random_value(rng);
        if (f % 5 == 0) // piecewise-constant families exercise the zero-sup boxes
            for (std::int64_t i = 1; i < len; ++i)
                if (rng() % 4 != 0) va[i] = va[i - 1];
        auto const a = IndexedFamily<1>::from_values(va, j0);
        auto const b = IndexedFamily<1>::from_values(vb, j0);
        auto const seq = detail::random_sequence(rng, j0, top - 1, false);

        double const oa = oscillation(a, seq);
        record(names[0], oscillation(a + b, seq), oa + oscillation(b, seq));
        std::complex<double> const c = detail::random_value(rng) * 3.0;
        double const oc = oscillation(a * c, seq);
        if (!(std::fabs(oc - std::abs(c) * oa) <= tol * std::max(1.0, oc))) ++failures[names[1]];

        std::set<std::array<double, 1>> part1, part2;
        for (auto const& [t, v] : a.entries()) (rng() % 2 ? part1 : part2).insert(t);
        std::set<std::array<double, 1>> all(part1);
        all.insert(part2.begin(), part2.end());
        record(names[2], oscillation(a, seq, all), oscillation(a, seq, part1) + oscillation(a, seq, part2));

        record(names[3], oa, variation(a, 2.0));
        record(names[4], oa, variation(a, 1.0));
        auto const rm = rademacher_menshov_sides(a, seq);
        record(names[5], rm.lhs, rm.rhs);
        auto const crude = crude_bound_sides(a, seq, [&](auto const& t) { return part1.count(t) != 0; });
        record(names[6], crude.lhs, crude.rhs);
        auto const mv = max_vs_osc(a, detail::random_sequence(rng, j0, top - 1, true));
        record(names[7], mv.lhs, mv.rhs);

        // two-parameter grid of side <= 8
        std::int64_t const side = 2 + static_cast<std::int64_t>(rng() % 7);
        IndexedFamily<2> g, h;
        for (std::int64_t x = 0; x < side; ++x)
            for (std::int64_t y = 0; y < side; ++y) {
                g.set({double(x), double(y)}, detail::random_value(rng));
                h.set({double(x), double(y)}, detail::random_value(rng));
            }
        IncreasingSequence<2> s2;
        std::int64_t x = static_cast<std::int64_t>(rng() % 2), y = static_cast<std::int64_t>(rng() % 2);
        while (x < side && y < side) {
            s2.points.push_back({double(x), double(y)});
            x += 1 + static_cast<std::int64_t>(rng() % 3);
            y += 1 + static_cast<std::int64_t>(rng() % 3);
        }
        if (s2.points.size() < 2) s2.points = {{0.0, 0.0}, {double(side - 1), double(side - 1)}};
        record(names[8], oscillation(g + h, s2), oscillation(g, s2) + oscillation(h, s2));
    }

    for (auto const& n : names) {
        rep.check_le(n + " (failures)", failures[n], 0.0);
        nlohmann::ordered_json row;
        row["property"] = n;
        row["failures"] = failures[n];
        row["worst_ratio"] = worst[n];
        rep.results.push_back(row);
    }
    return rep;
}

} // namespace nc
