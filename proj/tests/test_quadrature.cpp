// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wpcsec/quadrature.hpp"
#include "wpcsec/specfun.hpp"

using namespace wpcsec;
using quad::integrate_2d;
using quad::integrate_finite;
using quad::integrate_semi_infinite;
using quad::QuadSettings;

TEST_CASE("exponential tail") {
    const auto r = integrate_semi_infinite([](double u) { return std::exp(-u); }, 0.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.error_estimate >= 0.0);
}

TEST_CASE("double-Rayleigh density normalizes") {
    // 2 K_0(2 sqrt(u)) is the density of the product of two unit
    // exponentials; integrable log singularity at the origin
    const auto f = [](double u) {
        const double z = 2.0 * std::sqrt(u);
        return 2.0 * std::exp(-z) * specfun::bessel_k_scaled(0, z);
    };
    const auto r = integrate_semi_infinite(f, 0.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("breakpoint insertion is value-neutral") {
    const auto f = [](double u) { return std::exp(-u); };
    const auto plain = integrate_semi_infinite(f, 0.0);
    const double bps[] = {3.0};
    const auto split = integrate_semi_infinite(f, 0.0, bps);
    CHECK(split.converged);
    CHECK(split.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(split.value - plain.value) <=
          plain.error_estimate + split.error_estimate + 1e-14);
}

TEST_CASE("nonzero lower limit") {
    const auto f = [](double u) { return std::exp(-u); };
    const auto r = integrate_semi_infinite(f, 2.0);
    CHECK(r.value == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("finite interval with interior kink") {
    const auto f = [](double u) { return std::abs(u - 0.3); };
    const double bps[] = {0.3};
    const auto r = integrate_finite(f, 0.0, 1.0, bps);
    const double exact = 0.5 * (0.3 * 0.3 + 0.7 * 0.7);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("2-D separable exponential") {
    quad::InnerBounds bounds;
    bounds.lower = [](double) { return 0.0; };
    bounds.upper_infinite = true;
    const auto r = integrate_2d([](double u, double v) { return std::exp(-u - v); }, bounds);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("2-D wedge region against the 1-D reduction") {
    // v >= max(0, u - 1): inner integral of e^{-u-v} reduces to
    // e^{-u} e^{-max(0, u-1)}
    quad::InnerBounds bounds;
    bounds.lower = [](double u) { return std::max(0.0, u - 1.0); };
    bounds.upper_infinite = true;
    const double bps[] = {1.0};
    const auto full =
        integrate_2d([](double u, double v) { return std::exp(-u - v); }, bounds, bps);

    const auto reduced = integrate_semi_infinite(
        [](double u) { return std::exp(-u - std::max(0.0, u - 1.0)); }, 0.0, bps);

    CHECK(full.converged);
    CHECK(reduced.converged);
    CHECK(full.value == doctest::Approx(reduced.value).epsilon(1e-8));
    CHECK(full.value == doctest::Approx(1.0 - 0.5 * std::exp(-1.0)).epsilon(1e-8));
}

TEST_CASE("2-D empty region yields zero") {
    quad::InnerBounds bounds;
    bounds.lower = [](double) { return 2.0; };
    bounds.upper = [](double) { return 1.0; };
    const auto r = integrate_2d([](double, double) { return 1e100; }, bounds);
    CHECK(r.converged);
    CHECK(r.value == 0.0);
}

TEST_CASE("NaN from the integrand carries the abscissa") {
    const auto f = [](double u) {
        return u > 2.0 && u < 6.0 ? std::nan("") : std::exp(-u);
    };
    try {
        integrate_semi_infinite(f, 0.0);
        FAIL("expected IntegrandError");
    } catch (const quad::IntegrandError& e) {
        CHECK(e.abscissa > 2.0);
        CHECK(e.abscissa < 6.0);
    }
}

TEST_CASE("non-convergence is reported, not silent") {
    QuadSettings s;
    s.max_subdivisions = 8;
    const auto f = [](double u) { return std::cos(40.0 * u) * std::exp(-u); };
    const auto r = integrate_semi_infinite(f, 0.0, {}, s);
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.value));
}

TEST_CASE("deterministic bit-identical results") {
    const auto f = [](double u) {
        const double z = 2.0 * std::sqrt(u);
        return 2.0 * std::exp(-z) * specfun::bessel_k_scaled(0, z);
    };
    const auto a = integrate_semi_infinite(f, 0.0);
    const auto b = integrate_semi_infinite(f, 0.0);
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);
    CHECK(a.subdivisions_used == b.subdivisions_used);
}

TEST_CASE("settings validation") {
    QuadSettings s;
    s.rel_tol = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.max_subdivisions = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("slowly-scaled mass far from the origin") {
    // mean-1e4 exponential: mass sits at the far end of the compactified tail
    const auto f = [](double u) { return std::exp(-u / 1e4) / 1e4; };
    const auto r = integrate_semi_infinite(f, 0.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
}
