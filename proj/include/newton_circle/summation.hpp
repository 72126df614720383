// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>

namespace nc {

/// Neumaier (improved Kahan–Babuška) compensated sum of reals.
struct NeumaierSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double value) {
        double const t = sum + value;
        if (std::fabs(sum) >= std::fabs(value)) compensation += (sum - t) + value;
        else compensation += (value - t) + sum;
        sum = t;
    }

    double value() const { return sum + compensation; }
};

/// Componentwise compensated sum of complex values; tracks the largest running magnitude.
struct ComplexAccumulator {
    NeumaierSum re;
    NeumaierSum im;
    double peak = 0.0;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }

    void add(double r, double i) {
        re.add(r);
        im.add(i);
    }

    void track_peak() {
        double const m = std::hypot(re.sum, im.sum);
        if (m > peak) peak = m;
    }

    void merge(ComplexAccumulator const& other) {
        re.add(other.re.sum);
        re.add(other.re.compensation);
        im.add(other.im.sum);
        im.add(other.im.compensation);
        if (other.peak > peak) peak = other.peak;
    }

    std::complex<double> value() const { return {re.value(), im.value()}; }
};

} // namespace nc
