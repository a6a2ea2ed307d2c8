// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "wpcsec/specfun.hpp"

using namespace wpcsec::specfun;

TEST_CASE("scaled I at the origin") {
    CHECK(bessel_i_scaled(0, 0.0) == 1.0);
    CHECK(bessel_i_scaled(1, 0.0) == 0.0);
    CHECK(bessel_i_scaled(7, 0.0) == 0.0);
}

TEST_CASE("scaled I against the series oracle") {
    CHECK(bessel_i_scaled(0, 1.0) ==
          doctest::Approx(oracles::bessel_i_scaled_series(0, 1.0)).epsilon(1e-13));
    CHECK(bessel_i_scaled(0, 1.0) == doctest::Approx(0.46575960759).epsilon(1e-10));
    for (int n : {0, 1, 2, 5, 10, 20}) {
        for (double x : {0.05, 0.7, 3.0, 9.0, 14.0, 15.5, 24.0}) {
            CAPTURE(n);
            CAPTURE(x);
            CHECK(bessel_i_scaled(n, x) ==
                  doctest::Approx(oracles::bessel_i_scaled_series(n, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("scaled I batch matches the single-order path") {
    for (double x : {0.3, 4.0, 17.0, 60.0, 300.0, 4000.0}) {
        std::vector<double> out(13);
        bessel_i_scaled_many(12, x, out);
        for (int k = 0; k <= 12; ++k) {
            CAPTURE(x);
            CAPTURE(k);
            CHECK(out[k] == doctest::Approx(bessel_i_scaled(k, x)).epsilon(1e-11));
        }
    }
}

TEST_CASE("scaled I is monotone non-increasing in the order") {
    for (double x : {0.5, 2.0, 10.0, 40.0, 1000.0}) {
        double prev = bessel_i_scaled(0, x);
        for (int n = 1; n <= 12; ++n) {
            const double cur = bessel_i_scaled(n, x);
            CHECK(cur <= prev * (1.0 + 1e-12));
            prev = cur;
        }
    }
    CHECK(bessel_i_scaled(0, 3.0) > 0.0);
    CHECK(bessel_i_scaled(0, 3.0) <= 1.0);
}

TEST_CASE("scaled K against the integral-representation oracle") {
    CHECK(bessel_k_scaled(0, 1.0) ==
          doctest::Approx(oracles::bessel_k_scaled_integral(0, 1.0)).epsilon(1e-12));
    CHECK(bessel_k_scaled(0, 1.0) == doctest::Approx(1.14446308).epsilon(1e-8));
    CHECK(bessel_k_scaled(1, 1.0) ==
          doctest::Approx(oracles::bessel_k_scaled_integral(1, 1.0)).epsilon(1e-12));
    CHECK(bessel_k_scaled(1, 1.0) == doctest::Approx(1.63615349).epsilon(1e-8));
    for (int nu : {0, 1}) {
        for (double x : {0.02, 0.4, 1.9, 2.1, 5.0, 12.0, 15.9, 16.1, 80.0}) {
            CAPTURE(nu);
            CAPTURE(x);
            CHECK(bessel_k_scaled(nu, x) ==
                  doctest::Approx(oracles::bessel_k_scaled_integral(nu, x)).epsilon(1e-11));
        }
    }
}

TEST_CASE("scaled K large-argument tail") {
    // e^x K_0(x) -> sqrt(pi / (2x))
    const double expected = std::sqrt(3.14159265358979323846 / 100.0);
    CHECK(bessel_k_scaled(0, 50.0) == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("exponential integral") {
    CHECK(exp_integral_e1(1.0) ==
          doctest::Approx(oracles::exp_integral_e1_bruteforce(1.0)).epsilon(1e-12));
    CHECK(exp_integral_e1(1.0) == doctest::Approx(0.21938393439552).epsilon(1e-12));

    // bracketing bounds e^{-x}/(x+1) < E1(x) < e^{-x}/x
    const double e1_10 = exp_integral_e1(10.0);
    CHECK(e1_10 < std::exp(-10.0) / 10.0 * 1.2);
    CHECK(e1_10 > std::exp(-10.0) / 11.0);

    // E1(x) + log(x) -> -gamma as x -> 0+
    CHECK(exp_integral_e1(1e-8) + std::log(1e-8) ==
          doctest::Approx(-kEulerGamma).epsilon(3e-8));

    for (double x : {0.1, 0.9, 1.1, 4.0, 30.0}) {
        CAPTURE(x);
        CHECK(exp_integral_e1(x) ==
              doctest::Approx(oracles::exp_integral_e1_bruteforce(x)).epsilon(1e-11));
    }
    // scaled variant agrees where both are representable
    for (double x : {0.5, 3.0, 40.0}) {
        CHECK(exp_integral_e1_scaled(x) ==
              doctest::Approx(exp_integral_e1(x) * std::exp(x)).epsilon(1e-12));
    }
    CHECK(std::isfinite(exp_integral_e1_scaled(1e6)));
}

TEST_CASE("Wronskian-style cross check") {
    // I_0 K_1 + I_1 K_0 = 1/x; the e^{+-x} scalings cancel
    for (double x = 0.1; x <= 30.0; x *= 1.37) {
        const double lhs = bessel_i_scaled(0, x) * bessel_k_scaled(1, x) +
                           bessel_i_scaled(1, x) * bessel_k_scaled(0, x);
        CAPTURE(x);
        CHECK(lhs == doctest::Approx(1.0 / x).epsilon(1e-8));
    }
}

TEST_CASE("three-term recurrence consistency") {
    for (double x : {0.5, 1.7, 6.3, 19.9}) {
        std::vector<double> v(13);
        bessel_i_scaled_many(12, x, v);
        for (int k = 1; k <= 10; ++k) {
            const double lhs = v[k + 1];
            const double rhs = v[k - 1] - (2.0 * k / x) * v[k];
            CAPTURE(x);
            CAPTURE(k);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
    }
}

TEST_CASE("scaled outputs stay finite far into the tail") {
    for (double x : {1e3, 1e4, 1e6}) {
        CHECK(std::isfinite(bessel_i_scaled(0, x)));
        CHECK(std::isfinite(bessel_i_scaled(64, x)));
        CHECK(std::isfinite(bessel_k_scaled(0, x)));
        CHECK(std::isfinite(bessel_k_scaled(1, x)));
        CHECK(bessel_i_scaled(0, x) > 0.0);
        CHECK(bessel_k_scaled(0, x) > 0.0);
    }
    std::vector<double> out(65);
    bessel_i_scaled_many(64, 1e6, out);
    for (double v : out)
        CHECK(std::isfinite(v));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(bessel_i_scaled(0, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i_scaled(-1, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i_scaled(65, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_scaled(0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_scaled(0, -2.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_scaled(2, 1.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_e1(0.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_e1(-1.0), std::domain_error);
}

TEST_CASE("ScaledValue round-trips representable values") {
    for (double v : {1e-12, 0.37, 1.0, 6.02e23, 8.9e-300}) {
        const auto s = ScaledValue::from_value(v);
        CHECK(s.value() == doctest::Approx(v).epsilon(1e-12));
        CHECK(s.mantissa >= 0.0);
    }
    const auto big = ScaledValue::from_log(900.0);
    const auto prod = big * ScaledValue::from_log(-900.0);
    CHECK(prod.value() == doctest::Approx(1.0).epsilon(1e-12));
}
