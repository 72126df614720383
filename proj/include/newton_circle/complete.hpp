// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Complete sums G(a/q) = q^-2 sum_{r1, r2 in [q]} e(a P(r1, r2) / q), their
 * one-variable partial versions, and Vinogradov mean-value counts
 * J_{s,k}(N; lambda).
 *
 * All complete sums go through the phase histogram of P mod q, so
 * q^2 G(a/q) is the same double as the exact-mode double_sum of (a/q) P.
 */

#include "arith.hpp"
#include "bigint.hpp"
#include "errors.hpp"
#include "expsum.hpp"
#include "phase.hpp"
#include "poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace nc {

// ---------------------------------------------------------------------------
// Complete sums

/// h[t] = #{(r1, r2) in [q]^2 : P(r1, r2) = t mod q}.
inline std::vector<std::int64_t> residue_histogram(Poly2 const& p, std::int64_t q) {
    if (q < 1) throw DomainError("residue_histogram: q must be >= 1");
    if (static_cast<std::uint64_t>(q) > kRootTableLimit) throw ResourceError("residue_histogram: q above 2^16");
    if (q == 1) return {1};
    auto const v = double_sum(scale(p, Frequency{Rational(1, q)}), 0, q, 0, q);
    return v.histogram;
}

/// Histogram of a * t mod q given the histogram of t mod q.
inline std::vector<std::int64_t> rescale_histogram(std::vector<std::int64_t> const& h, std::int64_t a) {
    auto const q = static_cast<std::int64_t>(h.size());
    std::vector<std::int64_t> out(h.size(), 0);
    std::int64_t const am = detail::floor_mod(a, q);
    for (std::int64_t t = 0; t < q; ++t) out[static_cast<std::size_t>(static_cast<i128>(am) * t % q)] += h[t];
    return out;
}

struct GaussSum {
    std::complex<double> value;
    /// q^2 G(a/q) before normalization.
    std::complex<double> unnormalized;
    /// Phase histogram of a P(r1, r2) mod q over [q]^2 (sums to q^2).
    std::vector<std::int64_t> histogram;
};

inline GaussSum gauss_sum_detailed(Poly2 const& p, Rational const& a_over_q) {
    std::int64_t const q = a_over_q.den();
    double const q2 = static_cast<double>(q) * static_cast<double>(q);
    if (static_cast<std::uint64_t>(q) > kRootTableLimit) {
        auto const v = double_sum(scale(p, Frequency{a_over_q}), 0, q, 0, q);
        return {v.value / q2, v.value, {}};
    }
    GaussSum g;
    g.histogram = rescale_histogram(residue_histogram(p, q), a_over_q.num());
    g.unnormalized = sum_histogram(g.histogram);
    g.value = g.unnormalized / q2;
    return g;
}

/// G(a/q).
inline std::complex<double> gauss_sum(Poly2 const& p, Rational const& a_over_q) {
    return gauss_sum_detailed(p, a_over_q).value;
}

/// G(a/q) for every a in [0, q) coprime to q, in increasing a.
inline std::vector<std::pair<std::int64_t, std::complex<double>>> gauss_sums_all(Poly2 const& p, std::int64_t q) {
    auto const base = residue_histogram(p, q);
    double const q2 = static_cast<double>(q) * static_cast<double>(q);
    std::vector<std::pair<std::int64_t, std::complex<double>>> out;
    for (std::int64_t a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        out.emplace_back(a, sum_histogram(rescale_histogram(base, a)) / q2);
    }
    return out;
}

/// axis 1: q^-1 sum_{r2 in [q]} e(a P(frozen, r2)/q); axis 2: the transpose.
inline std::complex<double> partial_gauss(Poly2 const& p, Rational const& a_over_q, std::int64_t frozen, int axis) {
    if (axis != 1 && axis != 2) throw DomainError("axis must be 1 or 2");
    std::int64_t const q = a_over_q.den();
    auto const v = detail::rectangle_sum(scale(p, Frequency{a_over_q}), axis, {frozen, frozen}, {1, q});
    return v.value / static_cast<double>(q);
}

/// M^-1 sum_{m in [M]} |G^axis_m(a/q)|, using q-periodicity in m.
inline double averaged_partial(Poly2 const& p, Rational const& a_over_q, std::int64_t M, int axis) {
    if (M < 1) throw DomainError("averaged_partial: M must be >= 1");
    std::int64_t const q = a_over_q.den();
    NeumaierSum total;
    for (std::int64_t m = 1; m <= std::min(M, q); ++m) {
        std::int64_t const copies = (M - m) / q + 1;
        total.add(static_cast<double>(copies) * std::abs(partial_gauss(p, a_over_q, m, axis)));
    }
    return total.value() / static_cast<double>(M);
}

struct EnvelopePoint {
    std::int64_t Q;
    /// max over q in [Q, 2Q], (a, q) = 1, of |G(a/q)|.
    double envelope;
    std::int64_t argmax_a;
    std::int64_t argmax_q;
};

struct DecayReport {
    std::vector<EnvelopePoint> points;
    /// Least-squares slope of -log(envelope) against log Q.
    double fitted_delta = 0.0;
};

inline DecayReport gauss_decay(Poly2 const& p, std::vector<std::int64_t> const& dyadic_Q) {
    DecayReport rep;
    std::unordered_map<std::int64_t, std::pair<double, std::int64_t>> per_q;
    for (std::int64_t Q : dyadic_Q) {
        EnvelopePoint pt{Q, 0.0, 0, 1};
        for (std::int64_t q = Q; q <= 2 * Q; ++q) {
            auto it = per_q.find(q);
            if (it == per_q.end()) {
                std::pair<double, std::int64_t> m{0.0, 0};
                for (auto const& [a, g] : gauss_sums_all(p, q))
                    if (std::abs(g) > m.first) m = {std::abs(g), a};
                it = per_q.emplace(q, m).first;
            }
            if (it->second.first > pt.envelope) pt = {Q, it->second.first, it->second.second, q};
        }
        rep.points.push_back(pt);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (auto const& pt : rep.points) {
        if (pt.envelope <= 0) continue;
        double const x = std::log(static_cast<double>(pt.Q));
        double const y = -std::log(pt.envelope);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2 && n * sxx - sx * sx > 0) rep.fitted_delta = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rep;
}

// ---------------------------------------------------------------------------
// Vinogradov mean values

inline constexpr std::uint64_t kVinogradovSupportCap = 10'000'000;
inline constexpr std::uint64_t kVinogradovPairCap = 400'000'000;

namespace detail {

inline void check_vinogradov(int s, int k, std::int64_t N) {
    if (s < 1 || s > 6) throw ContractError("vinogradov: requires 1 <= s <= 6");
    if (k < 1 || k > 3) throw ContractError("vinogradov: requires 1 <= k <= 3");
    if (N < 2) throw ContractError("vinogradov: requires N >= 2");
}

/// Number of multisets of size s from [N], an upper bound on the support of r_s.
inline double multiset_bound(int s, std::int64_t N) {
    double b = 1;
    for (int i = 1; i <= s; ++i) b = b * static_cast<double>(N - 1 + i) / i;
    return b;
}

} // namespace detail

/**
 * r_s(mu) = #{(x_1..x_s) in [N]^s : sum_j x_j^i = mu_i for i <= k}, stored
 * sparsely. Keys encode mu in mixed radix over [0, s N^i].
 */
class MomentConvolution {
public:
    MomentConvolution(int s, int k, std::int64_t N) : s_(s), k_(k), N_(N) {
        detail::check_vinogradov(s, k, N);
        if (detail::multiset_bound(s, N) > static_cast<double>(kVinogradovSupportCap))
            throw ResourceError("vinogradov: support bound exceeds the configured work cap");
        double cells = 1;
        for (int i = 0; i < k; ++i) cells *= s * std::pow(static_cast<double>(N), i + 1) + 1;
        if (cells > 0x1p62) throw ResourceError("vinogradov: moment range exceeds the 64-bit key space");
        std::int64_t stride = 1;
        for (int i = 0; i < k; ++i) {
            strides_[i] = stride;
            std::int64_t span = s;
            for (int e = 0; e < i + 1; ++e) span *= N;
            extent_[i] = span;
            stride *= span + 1;
        }
        std::unordered_map<std::int64_t, std::uint64_t> cur{{0, 1}};
        for (int step = 0; step < s; ++step) {
            std::unordered_map<std::int64_t, std::uint64_t> next;
            next.reserve(cur.size() * 4);
            for (auto const& [key, c] : cur)
                for (std::int64_t x = 1; x <= N; ++x) {
                    std::int64_t add = 0;
                    std::int64_t pw = 1;
                    for (int i = 0; i < k; ++i) {
                        pw *= x;
                        add += pw * strides_[i];
                    }
                    next[key + add] += c;
                }
            cur = std::move(next);
        }
        entries_.assign(cur.begin(), cur.end());
        std::sort(entries_.begin(), entries_.end());
        for (auto const& [key, c] : entries_) index_.emplace(key, c);
    }

    int s() const { return s_; }
    int k() const { return k_; }
    std::int64_t N() const { return N_; }
    std::vector<std::pair<std::int64_t, std::uint64_t>> const& entries() const { return entries_; }

    std::array<std::int64_t, 3> decode(std::int64_t key) const {
        std::array<std::int64_t, 3> mu{0, 0, 0};
        for (int i = k_ - 1; i >= 0; --i) {
            mu[i] = key / strides_[i];
            key %= strides_[i];
        }
        return mu;
    }

    /// Key shift for lambda, or nullopt when some |lambda_i| exceeds s N^i.
    std::optional<std::int64_t> offset(std::span<std::int64_t const> lambda) const {
        std::int64_t off = 0;
        for (int i = 0; i < k_; ++i) {
            if (lambda[i] > extent_[i] || lambda[i] < -extent_[i]) return std::nullopt;
            off += lambda[i] * strides_[i];
        }
        return off;
    }

    /// J_{s,k}(N; lambda) = sum_mu r(mu + lambda) r(mu).
    u128 count(std::span<std::int64_t const> lambda) const {
        if (static_cast<int>(lambda.size()) != k_) throw DomainError("vinogradov: lambda must have length k");
        auto const off = offset(lambda);
        if (!off) return 0;
        u128 total = 0;
        for (auto const& [key, c] : entries_) {
            auto const mu = decode(key);
            bool inside = true;
            for (int i = 0; i < k_; ++i) {
                std::int64_t const v = mu[i] + lambda[i];
                if (v < 0 || v > extent_[i]) inside = false;
            }
            if (!inside) continue;
            auto it = index_.find(key + *off);
            if (it != index_.end()) total += static_cast<u128>(it->second) * c;
        }
        return total;
    }

private:
    int s_;
    int k_;
    std::int64_t N_;
    std::array<std::int64_t, 3> strides_{1, 1, 1};
    std::array<std::int64_t, 3> extent_{0, 0, 0};
    std::vector<std::pair<std::int64_t, std::uint64_t>> entries_;
    std::unordered_map<std::int64_t, std::uint64_t> index_;
};

struct VinogradovCount {
    int s;
    int k;
    std::int64_t N;
    std::vector<std::int64_t> lambda;
    BigInt count;
};

inline BigInt to_big(u128 v) {
    BigInt b = static_cast<std::uint64_t>(v >> 64);
    b <<= 64;
    b += static_cast<std::uint64_t>(v);
    return b;
}

inline VinogradovCount vinogradov_count(int s, int k, std::int64_t N, std::vector<std::int64_t> const& lambda) {
    MomentConvolution const conv(s, k, N);
    return {s, k, N, lambda, to_big(conv.count(lambda))};
}

/// The full map lambda -> J_{s,k}(N; lambda), lambda encoded as in MomentConvolution.
class VinogradovDistribution {
public:
    explicit VinogradovDistribution(MomentConvolution const& conv) : conv_(&conv) {
        auto const& e = conv.entries();
        for (int i = 0; i < conv.k(); ++i) {
            double const ext = conv.s() * std::pow(static_cast<double>(conv.N()), i + 1);
            if (ext >= static_cast<double>(std::int64_t{1} << 20))
                throw ResourceError("vinogradov: lambda range exceeds the distribution encoding");
        }
        double const pairs = static_cast<double>(e.size()) * static_cast<double>(e.size());
        if (pairs > static_cast<double>(kVinogradovPairCap))
            throw ResourceError("vinogradov: full distribution exceeds the configured work cap");
        std::unordered_map<std::int64_t, u128> acc;
        acc.reserve(e.size() * 8);
        // difference keys can be negative per digit; encode lambda directly instead
        for (auto const& [k1, c1] : e) {
            auto const mu1 = conv.decode(k1);
            for (auto const& [k2, c2] : e) {
                auto const mu2 = conv.decode(k2);
                acc[encode({mu1[0] - mu2[0], mu1[1] - mu2[1], mu1[2] - mu2[2]})] += static_cast<u128>(c1) * c2;
            }
        }
        values_.assign(acc.begin(), acc.end());
        std::sort(values_.begin(), values_.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
    }

    std::array<std::int64_t, 3> lambda(std::size_t i) const { return decode(values_[i].first); }
    u128 count(std::size_t i) const { return values_[i].second; }
    std::size_t size() const { return values_.size(); }

    /// Sum of e(xi . lambda) J(lambda); exact phases for rational xi with small common denominator.
    std::complex<double> fourier(std::span<Frequency const> xi) const {
        int const k = conv_->k();
        ComplexAccumulator acc;
        bool exact = true;
        std::int64_t L = 1;
        for (int i = 0; i < k; ++i) {
            if (!is_exact(xi[i])) {
                exact = false;
                break;
            }
            L = std::lcm(L, std::get<Rational>(xi[i]).den());
            if (static_cast<std::uint64_t>(L) > kModularLimit) {
                exact = false;
                break;
            }
        }
        for (auto const& [key, c] : values_) {
            auto const lam = decode(key);
            std::complex<double> z;
            if (exact) {
                ModRing const ring{static_cast<std::uint64_t>(L)};
                std::uint64_t t = 0;
                for (int i = 0; i < k; ++i) {
                    Rational const r = std::get<Rational>(xi[i]);
                    auto const num = ring.mul(ring.from_int(r.num()), ring.from_int(L / r.den()));
                    t = ring.add(t, ring.mul(num, ring.from_int(lam[i])));
                }
                z = unit_root(t, static_cast<std::uint64_t>(L));
            } else {
                u128 t = 0;
                for (int i = 0; i < k; ++i)
                    t += detail::fixed_fraction(to_double(xi[i])) * static_cast<u128>(static_cast<i128>(lam[i]));
                z = unit_fixed(t);
            }
            double const w = static_cast<double>(c);
            acc.add(w * z.real(), w * z.imag());
        }
        return acc.value();
    }

private:
    static std::int64_t encode(std::array<std::int64_t, 3> lam) {
        // each |lambda_i| < 2^20 under the caps above
        constexpr std::int64_t B = std::int64_t{1} << 21;
        return ((lam[2] + B / 2) * B + (lam[1] + B / 2)) * B + (lam[0] + B / 2);
    }
    static std::array<std::int64_t, 3> decode(std::int64_t key) {
        constexpr std::int64_t B = std::int64_t{1} << 21;
        std::array<std::int64_t, 3> lam{};
        lam[0] = key % B - B / 2;
        key /= B;
        lam[1] = key % B - B / 2;
        lam[2] = key / B - B / 2;
        return lam;
    }

    MomentConvolution const* conv_;
    std::vector<std::pair<std::int64_t, u128>> values_;
};

struct MomentIdentity {
    double lhs;                 // |S_k(xi; N)|^{2s}
    std::complex<double> rhs;   // sum_lambda J(lambda) e(xi . lambda)
    double gap;
};

inline MomentIdentity moment_identity(VinogradovDistribution const& dist, MomentConvolution const& conv,
                                      std::span<Frequency const> xi) {
    if (static_cast<int>(xi.size()) != conv.k()) throw DomainError("moment identity: xi must have length k");
    double const s_abs = std::abs(weyl_sum(xi, conv.N()).value);
    double const lhs = std::pow(s_abs, 2 * conv.s());
    auto const rhs = dist.fourier(xi);
    return {lhs, rhs, std::abs(lhs - rhs)};
}

inline double moment_identity_gap(int s, int k, std::int64_t N, std::vector<Frequency> const& xi) {
    MomentConvolution const conv(s, k, N);
    VinogradovDistribution const dist(conv);
    return moment_identity(dist, conv, xi).gap;
}

} // namespace nc
