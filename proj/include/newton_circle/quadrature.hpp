// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "errors.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace nc {

/// Gauss–Legendre nodes and weights on [-1, 1].
template <int N>
struct GaussLegendre {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussLegendre() {
        for (int i = 0; i < (N + 1) / 2; ++i) {
            long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (N + 0.5L));
            long double dp = 0;
            for (int iter = 0; iter < 100; ++iter) {
                long double p0 = 1;
                long double p1 = x;
                for (int k = 2; k <= N; ++k) {
                    long double const p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1);
                long double const dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-19L) break;
            }
            long double const w = 2 / ((1 - x * x) * dp * dp);
            nodes[i] = static_cast<double>(-x);
            nodes[N - 1 - i] = static_cast<double>(x);
            weights[i] = weights[N - 1 - i] = static_cast<double>(w);
        }
    }

    static GaussLegendre const& instance() {
        static GaussLegendre const rule;
        return rule;
    }
};

using GL32 = GaussLegendre<32>;

/// Composite 32-point rule over `panels` equal panels of [a, b].
template <typename F>
std::complex<double> integrate_panels(F&& f, double a, double b, int panels) {
    auto const& rule = GL32::instance();
    double const h = (b - a) / panels;
    std::complex<double> total{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
        double const mid = a + (p + 0.5) * h;
        std::complex<double> part{0.0, 0.0};
        for (int i = 0; i < 32; ++i) part += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        total += 0.5 * h * part;
    }
    return total;
}

/// Doubles the panel count until two successive estimates agree within tol.
template <typename F>
std::complex<double> integrate_adaptive(F&& f, double a, double b, double tol, int initial_panels = 1,
                                        int max_doublings = 20) {
    int panels = std::max(1, initial_panels);
    std::complex<double> previous = integrate_panels(f, a, b, panels);
    for (int d = 0; d < max_doublings; ++d) {
        panels *= 2;
        std::complex<double> const current = integrate_panels(f, a, b, panels);
        if (std::abs(current - previous) <= tol) return current;
        previous = current;
    }
    throw ConvergenceError("quadrature did not reach the requested tolerance");
}

/// Tensor 32x32 rule over panels1 x panels2 equal panels of [a1, b1] x [a2, b2].
template <typename F>
std::complex<double> integrate_panels_2d(F&& f, double a1, double b1, double a2, double b2, int panels1, int panels2) {
    auto const& rule = GL32::instance();
    double const h1 = (b1 - a1) / panels1;
    double const h2 = (b2 - a2) / panels2;
    std::complex<double> total{0.0, 0.0};
    for (int p = 0; p < panels1; ++p) {
        double const mid1 = a1 + (p + 0.5) * h1;
        for (int i = 0; i < 32; ++i) {
            double const x = mid1 + 0.5 * h1 * rule.nodes[i];
            std::complex<double> row{0.0, 0.0};
            for (int q = 0; q < panels2; ++q) {
                double const mid2 = a2 + (q + 0.5) * h2;
                std::complex<double> part{0.0, 0.0};
                for (int j = 0; j < 32; ++j) part += rule.weights[j] * f(x, mid2 + 0.5 * h2 * rule.nodes[j]);
                row += 0.5 * h2 * part;
            }
            total += 0.5 * h1 * rule.weights[i] * row;
        }
    }
    return total;
}

} // namespace nc
