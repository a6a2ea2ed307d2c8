// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations, independent of the library's
// evaluation paths: brute-force series and fixed-grid composite Simpson
// quadrature.
#pragma once

#include <cmath>
#include <functional>

namespace oracles {

// e^{-x} I_n(x) by 60 terms of the ascending series.
inline double bessel_i_scaled_series(int n, double x) {
    double sum = 0.0;
    for (int m = 0; m < 60; ++m) {
        const double log_term = (n + 2.0 * m) * std::log(0.5 * x) - std::lgamma(m + 1.0) -
                                std::lgamma(n + m + 1.0);
        sum += std::exp(log_term - x);
    }
    return sum;
}

// Composite Simpson on [a, b] with n panels (n even).
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 == 1)
        ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// e^{x} K_nu(x) from the integral representation, dense Simpson grid.
inline double bessel_k_scaled_integral(int nu, double x) {
    const double t_max = std::acosh(1.0 + 50.0 / x);
    const auto f = [nu, x](double t) {
        const double w = std::exp(-x * (std::cosh(t) - 1.0));
        return nu == 0 ? w : w * std::cosh(t);
    };
    return simpson(f, 0.0, t_max, 200000);
}

// E_1(x) by brute quadrature of e^{-t}/t on [x, x + 60].
inline double exp_integral_e1_bruteforce(double x) {
    const auto f = [](double t) { return std::exp(-t) / t; };
    return simpson(f, x, x + 60.0, 400000);
}

} // namespace oracles
