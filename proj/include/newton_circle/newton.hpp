// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Backwards Newton diagram of a non-degenerate P: the corners v_1..v_r of the
 * convex hull of the union of the quadrants v + (-inf, 0]^2 over the support,
 * ordered by increasing first coordinate, with the primitive outer normals
 * omega_0 = (0,1), ..., omega_r = (1,0) between them.
 *
 * Sector j is the closed cone spanned by omega_{j-1} and omega_j.
 */

#include "arith.hpp"
#include "errors.hpp"
#include "poly.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nc {

struct IntPair {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend auto operator<=>(IntPair const&, IntPair const&) = default;
    friend bool operator==(IntPair const&, IntPair const&) = default;
};

/// sigma_j; `infinite` when the support is the single vertex.
struct Gap {
    bool infinite = false;
    Rational value;
    std::string str() const { return infinite ? "inf" : value.str(); }
};

struct NewtonDiagram {
    std::set<Exponent> support;
    /// v_1..v_r (stored 0-based).
    std::vector<Exponent> vertices;
    /// omega_0..omega_r.
    std::vector<IntPair> normals;
    /// d_1..d_r (stored 0-based).
    std::vector<std::int64_t> determinants;
    /// sigma_1..sigma_r (stored 0-based).
    std::vector<Gap> gaps;

    int r() const { return static_cast<int>(vertices.size()); }
    Exponent const& vertex(int j) const { return vertices.at(j - 1); }
    IntPair const& normal(int j) const { return normals.at(j); }
    std::int64_t determinant(int j) const { return determinants.at(j - 1); }
    Gap const& gap(int j) const { return gaps.at(j - 1); }
};

namespace detail {

inline std::int64_t dot(IntPair w, Exponent v) { return w.x * v.e1 + w.y * v.e2; }

inline std::int64_t cross(Exponent o, Exponent a, Exponent b) {
    return static_cast<std::int64_t>(a.e1 - o.e1) * (b.e2 - o.e2) - static_cast<std::int64_t>(a.e2 - o.e2) * (b.e1 - o.e1);
}

inline void check_j(NewtonDiagram const& d, int j) {
    if (j < 1 || j > d.r()) throw DomainError("sector index out of range");
}

} // namespace detail

/// Sigma_j = min over v != v_j of (v_j - v).(omega_{j-1} + omega_j) / d_j.
inline Gap sigma(NewtonDiagram const& d, int j) {
    detail::check_j(d, j);
    Exponent const vj = d.vertex(j);
    IntPair const w{d.normal(j - 1).x + d.normal(j).x, d.normal(j - 1).y + d.normal(j).y};
    std::optional<std::int64_t> best;
    for (auto const& v : d.support) {
        if (v == vj) continue;
        std::int64_t const t = detail::dot(w, Exponent{vj.e1 - v.e1, vj.e2 - v.e2});
        if (!best || t < *best) best = t;
    }
    if (!best) return Gap{true, Rational(0)};
    return Gap{false, Rational(*best, d.determinant(j))};
}

inline NewtonDiagram build_diagram(Poly2 const& p) {
    if (p.constant_term() != 0) throw DomainError("build_diagram: requires P(0,0) = 0");
    if (is_degenerate(p))
        throw DomainError("build_diagram: P is degenerate (P = P1(m1) + P2(m2) has no mixed monomial)");
    NewtonDiagram d;
    d.support = support(p);

    // Pareto-maximal points, increasing e1 (hence strictly decreasing e2).
    std::vector<Exponent> pareto;
    for (auto it = d.support.rbegin(); it != d.support.rend(); ++it) {
        if (pareto.empty() || it->e2 > pareto.back().e2) pareto.push_back(*it);
    }
    std::reverse(pareto.begin(), pareto.end());

    // Upper-right convex chain: drop points on or below the segment joining their neighbours.
    std::vector<Exponent> chain;
    for (auto const& v : pareto) {
        while (chain.size() >= 2 && detail::cross(chain[chain.size() - 2], chain.back(), v) >= 0) chain.pop_back();
        chain.push_back(v);
    }
    d.vertices = chain;

    d.normals.push_back({0, 1});
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        std::int64_t const dx = chain[i + 1].e1 - chain[i].e1;
        std::int64_t const dy = chain[i].e2 - chain[i + 1].e2;
        std::int64_t const g = std::gcd(dx, dy);
        d.normals.push_back({dy / g, dx / g});
    }
    d.normals.push_back({1, 0});

    for (int j = 1; j <= d.r(); ++j) {
        IntPair const a = d.normals[j - 1];
        IntPair const b = d.normals[j];
        d.determinants.push_back(-(a.x * b.y - a.y * b.x));
    }
    for (int j = 1; j <= d.r(); ++j) d.gaps.push_back(sigma(d, j));
    return d;
}

namespace detail {

/// Coordinates (t1, t2) with d_j (a, b) = t1 omega_{j-1} + t2 omega_j.
inline std::pair<std::int64_t, std::int64_t> cone_coordinates(NewtonDiagram const& d, int j, IntPair pt) {
    IntPair const u = d.normal(j - 1);
    IntPair const w = d.normal(j);
    return {-pt.x * w.y + pt.y * w.x, pt.x * u.y - pt.y * u.x};
}

/// Open cone W(j) by half-planes: strictly between the rays omega_{j-1} and omega_j.
inline bool in_open_cone(NewtonDiagram const& d, int j, IntPair pt) {
    IntPair const u = d.normal(j - 1);
    IntPair const w = d.normal(j);
    // left of omega_j and right of omega_{j-1} (the normals turn clockwise with j)
    return (w.x * pt.y - w.y * pt.x) > 0 && (u.x * pt.y - u.y * pt.x) < 0;
}

inline bool on_ray(IntPair ray, IntPair pt) { return ray.x * pt.y - ray.y * pt.x == 0 && ray.x * pt.x + ray.y * pt.y >= 0; }

} // namespace detail

/// Every j whose closed cone contains (a, b); cross-checked against the open-cone half-plane test.
inline std::vector<int> sector_membership(NewtonDiagram const& d, IntPair pt) {
    if (pt.x < 0 || pt.y < 0) throw DomainError("sector_membership: point must be nonnegative");
    std::vector<int> out;
    for (int j = 1; j <= d.r(); ++j) {
        auto const [t1, t2] = detail::cone_coordinates(d, j, pt);
        bool const by_inverse = t1 >= 0 && t2 >= 0;
        bool const by_halfplane = detail::in_open_cone(d, j, pt) || detail::on_ray(d.normal(j - 1), pt) ||
                                  detail::on_ray(d.normal(j), pt);
        if (by_inverse != by_halfplane) throw ContractError("sector_membership: cone tests disagree");
        if (by_inverse) out.push_back(j);
    }
    return out;
}

/// Open-cone membership (a, b) in W(j); W(1) is all of Z_+^2 when r = 1.
inline bool in_cone_w(NewtonDiagram const& d, int j, IntPair pt) {
    detail::check_j(d, j);
    if (d.r() == 1) return pt.x > 0 && pt.y > 0;
    return detail::in_open_cone(d, j, pt);
}

inline int canonical_sector(NewtonDiagram const& d, IntPair pt) { return sector_membership(d, pt).front(); }

struct SectorPoint {
    IntPair point;
    int sector = 1;
    int branch = 1;
    std::int64_t level_N = 0;
    std::int64_t offset_n = 0;
};

inline SectorPoint subsector(NewtonDiagram const& d, int j, IntPair pt) {
    detail::check_j(d, j);
    auto const [t1, t2] = detail::cone_coordinates(d, j, pt);
    if (t1 < 0 || t2 < 0 || pt.x < 0 || pt.y < 0) throw DomainError("subsector: point is outside S(j)");
    SectorPoint s{pt, j, 1, 0, 0};
    if (t1 >= t2) {
        s.branch = 1;
        s.level_N = t2;
        s.offset_n = t1 - t2;
    } else {
        s.branch = 2;
        s.level_N = t1;
        s.offset_n = t2 - t1;
    }
    return s;
}

/// d_j (a, b) recomputed from the branch data; equals d_j * point.
inline IntPair reconstruct(NewtonDiagram const& d, SectorPoint const& s) {
    IntPair const u = d.normal(s.sector - 1);
    IntPair const w = d.normal(s.sector);
    std::int64_t const big = s.offset_n + s.level_N;
    std::int64_t const c1 = s.branch == 1 ? big : s.level_N;
    std::int64_t const c2 = s.branch == 1 ? s.level_N : big;
    return {c1 * u.x + c2 * w.x, c1 * u.y + c2 * w.y};
}

inline Poly2 dominant_monomial(NewtonDiagram const& d, int j, Poly2 const& p) {
    detail::check_j(d, j);
    Exponent const v = d.vertex(j);
    return Poly2::monomial(p.coefficient(v), v.e1, v.e2);
}

/// M*_{r,j}; requires (log M1, log M2) to lie in the closed cone of sector j.
inline double m_star(NewtonDiagram const& d, int j, double M1, double M2) {
    detail::check_j(d, j);
    if (!(M1 >= 1.0) || !(M2 >= 1.0) || !std::isfinite(M1) || !std::isfinite(M2))
        throw DomainError("m_star: requires finite M1, M2 >= 1");
    double const x = std::log(M1);
    double const y = std::log(M2);
    IntPair const u = d.normal(j - 1);
    IntPair const w = d.normal(j);
    double const tol = 1e-12 * std::max({1.0, x, y});
    double const t1 = -x * static_cast<double>(w.y) + y * static_cast<double>(w.x);
    double const t2 = x * static_cast<double>(u.y) - y * static_cast<double>(u.x);
    if (t1 < -tol || t2 < -tol) throw DomainError("m_star: (M1, M2) is not in the lacunary sector of j");
    if (d.r() == 1) return std::max(M1, M2);
    if (j == 1) return M2;
    if (j == d.r()) return M1;
    return std::max(M1, M2);
}

} // namespace nc
