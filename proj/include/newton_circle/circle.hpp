// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Circle-method multipliers: discrete averages m over truncated regions, their
 * continuous counterparts, the cutoff eta, projections onto Ionescu–Wainger
 * fractions, periodized approximants, arc classification and scale bookkeeping.
 *
 * eta is the even quintic smoothstep cutoff: 1 on [-1, 1], 0 outside (-2, 2),
 * 1 - s(|t| - 1) with s(u) = 6u^5 - 15u^4 + 10u^3 in between.
 */

#include "arith.hpp"
#include "complete.hpp"
#include "ergodic.hpp"
#include "errors.hpp"
#include "expsum.hpp"
#include "iw.hpp"
#include "newton.hpp"
#include "poly.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace nc {

/// Axis-partial selection: freeze m_axis at `frozen`.
struct AxisPartial {
    int axis = 1;
    std::int64_t frozen = 1;
};

namespace detail {

inline void check_partial(std::optional<AxisPartial> const& partial) {
    if (partial && partial->axis != 1 && partial->axis != 2) throw DomainError("axis partial must use axis 1 or 2");
}

/// Integers in (N / tau, N].
inline Span chi_support(Rational const& N, Rational const& tau) {
    return {(N / tau).floor() + 1, N.floor()};
}

} // namespace detail

/// m_{M1,M2}(xi) = sum e(xi P(m1, m2)) chi_{M1}(m1) chi_{M2}(m2), or the axis partial
/// m^1_{m1,M2} (axis 1 frozen) / m^2_{M1,m2} (axis 2 frozen).
inline std::complex<double> discrete_multiplier(Poly2 const& P, Frequency const& xi, Rational const& M1, Rational const& M2,
                                                Rational const& tau, std::optional<AxisPartial> partial = std::nullopt) {
    if (!(tau > Rational(1))) throw ContractError("discrete_multiplier: tau must be a rational > 1");
    detail::check_partial(partial);
    auto const s1 = detail::chi_support(M1, tau);
    auto const s2 = detail::chi_support(M2, tau);
    RealPoly2 const q = scale(P, xi);
    if (!partial) {
        if (s1.size() == 0 || s2.size() == 0) throw DomainError("discrete_multiplier: empty region");
        auto const v = detail::rectangle_sum(q, 1, s1, s2);
        return v.value / (static_cast<double>(s1.size()) * static_cast<double>(s2.size()));
    }
    auto const& inner = partial->axis == 1 ? s2 : s1;
    if (inner.size() == 0) throw DomainError("discrete_multiplier: empty region");
    auto const v = detail::rectangle_sum(q, partial->axis, {partial->frozen, partial->frozen}, inner);
    return v.value / static_cast<double>(inner.size());
}

namespace detail {

/// Phase xi P(M1 y1, M2 y2) as sum k y1^e1 y2^e2 with k = xi c M1^e1 M2^e2 folded in.
struct ScaledPhase {
    struct Term {
        int e1 = 0;
        int e2 = 0;
        long double k = 0;
    };
    std::vector<Term> terms;

    ScaledPhase(Poly2 const& P, double xi, double M1, double M2) {
        for (auto const& [e, c] : P.terms()) {
            long double k = static_cast<long double>(xi) * static_cast<long double>(c);
            for (int i = 0; i < e.e1; ++i) k *= M1;
            for (int i = 0; i < e.e2; ++i) k *= M2;
            terms.push_back({e.e1, e.e2, k});
        }
    }

    /// Upper bound on |d phase / d y_axis| over [0, 1]^2.
    double slope(int axis) const {
        long double s = 0;
        for (auto const& t : terms) s += std::fabs(t.k) * (axis == 1 ? t.e1 : t.e2);
        return static_cast<double>(s);
    }

    std::complex<double> operator()(double y1, double y2) const {
        long double ph = 0;
        for (auto const& t : terms) {
            long double v = t.k;
            for (int i = 0; i < t.e1; ++i) v *= y1;
            for (int i = 0; i < t.e2; ++i) v *= y2;
            ph += v;
        }
        ph -= std::floor(ph);
        double const a = 2.0 * std::numbers::pi * static_cast<double>(ph);
        return {std::cos(a), std::sin(a)};
    }
};

/// Power-of-two panel count with at most 8 oscillations per 32-node panel.
inline int initial_panels(double cycles) {
    int p = 1;
    while (p < (1 << 20) && p * 8.0 < cycles) p *= 2;
    return p;
}

inline constexpr int kMaxRefinements = 20;
inline constexpr double kMaxQuadratureNodes = 0x1p30;

} // namespace detail

/// (1 - 1/tau)^{-2} int int_{[1/tau, 1]^2} e(xi P(M1 y1, M2 y2)) dy, or the single-integral
/// partials m^1_{m1,M2} / m^2_{M1,m2}. Tensor Gauss–Legendre (32 nodes per panel); the starting
/// panel count follows the phase slope on each axis and is doubled until two successive
/// estimates differ by less than tol.
inline std::complex<double> continuous_multiplier(Poly2 const& P, double xi, double M1, double M2, double tau,
                                                  double tol = 1e-10, std::optional<AxisPartial> partial = std::nullopt) {
    if (!(tol > 0)) throw ContractError("continuous_multiplier: tol must be positive");
    if (!(tau > 1.0) || !std::isfinite(xi)) throw ContractError("continuous_multiplier: requires tau > 1 and finite xi");
    detail::check_partial(partial);
    double const lo = 1.0 / tau;
    double const norm = 1.0 - lo;

    if (partial) {
        double const frozen = static_cast<double>(partial->frozen);
        int const axis = partial->axis;
        detail::ScaledPhase const phase(P, xi, axis == 1 ? frozen : M1, axis == 1 ? M2 : frozen);
        double const cycles = phase.slope(axis == 1 ? 2 : 1) * norm;
        if (32.0 * detail::initial_panels(cycles) > detail::kMaxQuadratureNodes)
            throw ResourceError("continuous_multiplier: quadrature grid exceeds the node budget");
        auto f = [&](double y) { return axis == 1 ? phase(1.0, y) : phase(y, 1.0); };
        return integrate_adaptive(f, lo, 1.0, tol * norm, detail::initial_panels(cycles), detail::kMaxRefinements) / norm;
    }

    detail::ScaledPhase const phase(P, xi, M1, M2);
    int p1 = detail::initial_panels(phase.slope(1) * norm);
    int p2 = detail::initial_panels(phase.slope(2) * norm);
    double const area = norm * norm;
    auto grid = [&](int a, int b) { return integrate_panels_2d(phase, lo, 1.0, lo, 1.0, a, b); };
    std::complex<double> previous{0.0, 0.0};
    for (int d = 0; d <= detail::kMaxRefinements; ++d) {
        // the next refinement must fit as well, otherwise convergence cannot be confirmed
        if (4096.0 * p1 * p2 > detail::kMaxQuadratureNodes)
            throw ResourceError("continuous_multiplier: quadrature grid exceeds the node budget");
        if (d == 0) {
            previous = grid(p1, p2);
            continue;
        }
        p1 *= 2;
        p2 *= 2;
        std::complex<double> const current = grid(p1, p2);
        if (std::abs(current - previous) <= tol * area) return current / area;
        previous = current;
    }
    throw ConvergenceError("continuous_multiplier: refinement depth exceeded");
}

/// eta(t) for the chosen quintic cutoff.
inline double eta(double t) {
    double const a = std::fabs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    double const u = a - 1.0;
    return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

/// eta_{<=n}(xi) = eta(2^{-n} xi).
inline double cutoff_eta(std::int64_t n, double xi) {
    if (n > 1000 || n < -1000) throw DomainError("cutoff_eta: |n| above 1000");
    return eta(std::ldexp(xi, static_cast<int>(-n)));
}

/// Representative of x modulo 1 in [-1/2, 1/2).
inline double torus_rep(double x) {
    double r = x - std::floor(x + 0.5);
    if (r >= 0.5) r -= 1.0;
    return r;
}

/// Sorted one-dimensional fraction set a/q in [0, 1) with bump lookup by torus distance.
class FractionSet {
public:
    FractionSet() = default;

    explicit FractionSet(std::vector<Rational> fractions) : fractions_(std::move(fractions)) {
        for (auto& f : fractions_) f = f.torus_normalized();
        std::sort(fractions_.begin(), fractions_.end());
        fractions_.erase(std::unique(fractions_.begin(), fractions_.end()), fractions_.end());
        for (auto const& f : fractions_) values_.push_back(f.to_double());
    }

    /// Sigma_{<=l}^1 for the given parameters.
    static FractionSet ionescu_wainger(IWParams const& params) {
        auto const sets = build_p_le(params);
        std::vector<Rational> out;
        for (auto const& t : build_sigma(sets, 1)) out.emplace_back(t.a[0], t.q);
        FractionSet s(std::move(out));
        s.truncated_ = sets.truncated;
        return s;
    }

    std::vector<Rational> const& fractions() const { return fractions_; }
    std::size_t size() const { return fractions_.size(); }
    bool truncated() const { return truncated_; }

    /// Smallest torus distance between two distinct members; 1 for a single member.
    double min_gap() const {
        if (values_.size() < 2) return 1.0;
        double g = 1.0 - values_.back() + values_.front();
        for (std::size_t i = 1; i < values_.size(); ++i) g = std::min(g, values_[i] - values_[i - 1]);
        return g;
    }

    /// Calls visit(fraction, xi - fraction in [-1/2, 1/2)) for members within torus distance `radius`.
    template <typename Visit>
    void for_each_near(double xi, double radius, Visit&& visit) const {
        if (values_.empty()) return;
        if (radius >= 0.5) {
            for (std::size_t i = 0; i < values_.size(); ++i) visit(fractions_[i], torus_rep(xi - values_[i]));
            return;
        }
        double const x = xi - std::floor(xi);
        auto scan = [&](double lo, double hi) {
            auto it = std::lower_bound(values_.begin(), values_.end(), lo);
            for (; it != values_.end() && *it <= hi; ++it) {
                std::size_t const i = static_cast<std::size_t>(it - values_.begin());
                visit(fractions_[i], torus_rep(xi - values_[i]));
            }
        };
        double const lo = x - radius;
        double const hi = x + radius;
        if (lo < 0) {
            scan(lo + 1.0, 1.0);
            scan(0.0, hi);
        } else if (hi >= 1.0) {
            scan(lo, 1.0);
            scan(0.0, hi - 1.0);
        } else {
            scan(lo, hi);
        }
    }

private:
    std::vector<Rational> fractions_;
    std::vector<double> values_;
    bool truncated_ = false;
};

struct ProjectionValue {
    double value = 0.0;
    double complement = 1.0;
    /// Bumps of width 2^{n+1} are not separated by the fraction set.
    bool overlap_warning = false;
};

/// Delta_{<=l,<=n}(xi) = sum_{a/q in Sigma} eta_{<=n}(xi - a/q), torus distance.
inline ProjectionValue projection_multiplier(FractionSet const& sigma, std::int64_t n, double xi) {
    ProjectionValue out;
    double const radius = std::ldexp(2.0, static_cast<int>(n));
    out.overlap_warning = radius >= 0.5 * sigma.min_gap();
    double total = 0.0;
    sigma.for_each_near(xi, radius, [&](Rational const&, double d) { total += cutoff_eta(n, d); });
    out.value = total;
    out.complement = 1.0 - total;
    return out;
}

inline ProjectionValue projection_multiplier(IWParams const& params, std::int64_t n, double xi) {
    return projection_multiplier(FractionSet::ionescu_wainger(params), n, xi);
}

/// Which G and which continuous multiplier enter the periodized approximant.
enum class GMode { Full, Axis1, Axis2, Unit };

/// Phi^Sigma_{<=n}[G, m](xi) = sum_{a/q in Sigma} G(a/q) m(xi - a/q) eta_{<=n}(xi - a/q).
/// Full: G = complete sum, m = two-parameter continuous multiplier. Axis1/Axis2: partial sums
/// G^1_{frozen}, G^2_{frozen} with the matching partial multiplier. Unit: G = 1 (bare periodization).
inline std::complex<double> major_approximant(Poly2 const& P, FractionSet const& sigma, std::int64_t n, double xi, double M1,
                                              double M2, double tau, GMode mode, std::int64_t frozen = 1, double tol = 1e-10) {
    std::complex<double> total{0.0, 0.0};
    std::optional<AxisPartial> partial;
    if (mode == GMode::Axis1) partial = AxisPartial{1, frozen};
    if (mode == GMode::Axis2) partial = AxisPartial{2, frozen};
    sigma.for_each_near(xi, std::ldexp(2.0, static_cast<int>(n)), [&](Rational const& aq, double d) {
        double const cut = cutoff_eta(n, d);
        if (cut == 0.0) return;
        std::complex<double> G{1.0, 0.0};
        if (mode == GMode::Full) G = gauss_sum(P, aq);
        else if (mode == GMode::Axis1) G = partial_gauss(P, aq, frozen, 1);
        else if (mode == GMode::Axis2) G = partial_gauss(P, aq, frozen, 2);
        total += G * continuous_multiplier(P, d, M1, M2, tau, tol, partial) * cut;
    });
    return total;
}

/// l^beta(M), n^v_{M1,M2}(N) and n^{v,beta}_{M1,M2}(M) for a fixed vertex v; logs base tau.
struct ScaleBook {
    Exponent v;
    double beta = 4.0;
    double tau = 2.0;

    double log_tau(double M) const { return std::log(M) / std::log(tau); }
    double l_beta(double M) const { return beta * std::log2(log_tau(M)); }
    double n_v(double M1, double M2, double N) const {
        return v.e1 * std::log2(M1) + v.e2 * std::log2(M2) - N;
    }
    double n_v_beta(double M1, double M2, double M) const { return n_v(M1, M2, l_beta(M)); }
    /// (log_tau M2)^beta / (M1^{v1} M2^{v2}), the admissible |xi - a/q| for the approximation formula.
    double xi_window(double M1, double M2) const {
        return std::pow(log_tau(M2), beta) / (std::pow(M1, v.e1) * std::pow(M2, v.e2));
    }
};

enum class ArcKind { Major, Minor };

inline char const* to_string(ArcKind k) { return k == ArcKind::Major ? "major" : "minor"; }

struct ArcClassification {
    ArcKind kind = ArcKind::Minor;
    /// Dirichlet approximant at resolution Q (always recorded).
    Rational approximant;
    std::optional<Rational> center;
    std::optional<double> offset;
    /// (log_tau M*)^beta
    double log_power = 0.0;
    /// M1^{v1} M2^{v2} (log_tau M*)^{-beta}
    double resolution = 0.0;
    std::int64_t Q = 0;
};

/// Approximates xi by a/q with q <= Q = floor(resolution) and classifies major iff
/// q <= (log_tau M*)^beta and |xi - a/q| <= (log_tau M*)^beta / (q M1^{v1} M2^{v2}).
inline ArcClassification arc_classify(NewtonDiagram const& d, int j, Frequency const& xi, double M1, double M2, double beta,
                                      double tau) {
    if (!(beta > 0) || !(tau > 1.0)) throw ContractError("arc_classify: requires beta > 0 and tau > 1");
    double const Mstar = m_star(d, j, M1, M2);
    if (!(Mstar > tau)) throw DomainError("arc_classify: requires M* > tau");
    Exponent const v = d.vertex(j);
    ArcClassification out;
    out.log_power = std::pow(std::log(Mstar) / std::log(tau), beta);
    long double const mv = std::pow(static_cast<long double>(M1), v.e1) * std::pow(static_cast<long double>(M2), v.e2);
    out.resolution = static_cast<double>(mv / out.log_power);
    if (out.resolution < 1.0) throw DomainError("arc_classify: resolution below 1");
    if (out.resolution > 0x1p62) throw ResourceError("arc_classify: resolution above 2^62");
    out.Q = static_cast<std::int64_t>(std::floor(out.resolution));
    out.approximant = dirichlet_approx(xi, out.Q);
    BigRational diff = exact_value(xi) - exact_value(out.approximant);
    if (diff < 0) diff = -diff;
    double const off = static_cast<double>(exact_value(xi) - exact_value(out.approximant));
    long double const bound = out.log_power / (static_cast<long double>(out.approximant.den()) * mv);
    bool const small_q = static_cast<double>(out.approximant.den()) <= out.log_power;
    bool const close = static_cast<long double>(static_cast<double>(diff)) <= bound;
    if (small_q && close) {
        out.kind = ArcKind::Major;
        out.center = out.approximant.torus_normalized();
        out.offset = off;
    }
    return out;
}

/// Warnings for beta and rho outside the relations beta * rho < 1/1000 and
/// beta > 1000 (1 + deg P)^4 alpha (alpha >= 1 assumed when not given).
inline std::vector<std::string> parameter_warnings(double beta, double rho, int degree = 0, double alpha = 1.0) {
    std::vector<std::string> w;
    if (!(beta * rho < 1e-3))
        w.push_back("beta*rho = " + std::to_string(beta * rho) +
                    " is not below 1/1000; thresholds are desk-scale probes, the asymptotic constants do not apply");
    if (degree > 0) {
        double const need = 1000.0 * std::pow(1.0 + degree, 4) * alpha;
        if (!(beta > need))
            w.push_back("beta = " + std::to_string(beta) + " does not exceed 1000 (1 + deg P)^4 alpha = " + std::to_string(need));
    }
    return w;
}

struct ApproximationError {
    double measured = 0.0;
    double budget = 0.0;
    double ratio() const { return measured / budget; }
};

/// |m^1_{m1,M2'}(xi) - G^1_{m1}(a/q) m^1_{m1,M2'}(xi - a/q)| against q / M2' at xi = a/q + offset.
/// `window` bounds |offset| (see ScaleBook::xi_window); the continuous partial uses tau as a real.
inline ApproximationError claim3_error(Poly2 const& P, std::int64_t m1, std::int64_t M2prime, Rational const& center, double offset,
                                Rational const& tau, double window = std::numeric_limits<double>::infinity(),
                                double tol = 1e-12) {
    std::int64_t const q = center.den();
    if (q > M2prime) throw ContractError("claim3_error: requires q <= M2'");
    if (!(std::fabs(offset) <= window)) throw ContractError("claim3_error: |xi - a/q| exceeds the approximation window");
    Frequency const xi = offset == 0.0 ? Frequency{center} : Frequency{center.to_double() + offset};
    auto const lhs = discrete_multiplier(P, xi, Rational(1), Rational(M2prime), tau, AxisPartial{1, m1});
    auto const G = partial_gauss(P, center, m1, 1);
    auto const cont = continuous_multiplier(P, offset, 1.0, static_cast<double>(M2prime), tau.to_double(), tol, AxisPartial{1, m1});
    return {std::abs(lhs - G * cont), static_cast<double>(q) / static_cast<double>(M2prime)};
}

} // namespace nc
