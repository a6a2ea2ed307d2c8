// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

namespace wpcsec::specfun {

inline constexpr double kEulerGamma = 0.577215664901532860606512;

/// A non-negative quantity stored as mantissa * exp(log_scale), for values
/// whose plain-double representation would overflow or underflow.
struct ScaledValue {
    double mantissa = 0.0;
    double log_scale = 0.0;

    double value() const;
    static ScaledValue from_value(double v);
    static ScaledValue from_log(double log_v);

    ScaledValue operator*(const ScaledValue& o) const {
        return {mantissa * o.mantissa, log_scale + o.log_scale};
    }
};

/// e^{-x} I_order(x) for integer order in [0, 64], x >= 0.
///
/// Small arguments (x < 15) use the ascending power series; all terms are
/// positive and the scaled sum is bounded by 1, so no cancellation or
/// overflow occurs. For x >= 15 orders 0 and 1 use the large-argument
/// expansion in 1/x (full double accuracy at the switchover), and higher
/// orders come from a normalized downward recurrence seeded well above
/// max(order, sqrt(45 x)).
double bessel_i_scaled(int order, double x);

/// Batch form of bessel_i_scaled: fills out[k] = e^{-x} I_k(x) for
/// k = 0..max_order in one downward-recurrence pass. Accepts orders up to
/// 20000 (deep orders feed the Marcum Q series).
void bessel_i_scaled_many(int max_order, double x, std::span<double> out);

/// e^{x} K_order(x) for order 0 or 1, x > 0.
///
/// x <= 2 uses the ascending log-series (at most two decimal digits lost to
/// cancellation there), 2 < x < 16 evaluates the integral representation
/// int_0^inf e^{-x(cosh t - 1)} cosh(order t) dt with a fixed-step
/// trapezoid rule (spectrally accurate for this integrand), and x >= 16
/// uses the large-argument expansion.
double bessel_k_scaled(int order, double x);

/// E_1(x) = int_x^inf e^{-t}/t dt, x > 0. Ascending series for x <= 1,
/// modified-Lentz continued fraction above.
double exp_integral_e1(double x);

/// e^{x} E_1(x); stays finite (~1/x) for large x where E_1 underflows.
double exp_integral_e1_scaled(double x);

} // namespace wpcsec::specfun
