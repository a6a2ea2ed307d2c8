// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wpcsec/channel.hpp"
#include "wpcsec/mc.hpp"

using namespace wpcsec;
using channel::delta_po;
using channel::FadingParams;
using channel::LinkBudget;
using channel::ScenarioSpec;

TEST_CASE("power offset factor") {
    CHECK(delta_po({0.0, 0.7}) == doctest::Approx(1.49).epsilon(1e-12));
    CHECK(delta_po({0.0, 0.0}) == 1.0);
    CHECK(delta_po({3.7, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(delta_po({5.0, 0.9}) >= 1.0);
    // Rayleigh reduction: 1 + rho^2
    CHECK(delta_po({0.0, 0.5}) == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("power offset matches the sampled pair moment") {
    const FadingParams params{5.0, 0.9};
    mc::McSettings s;
    s.n_samples = 2'000'000;
    s.seed = 77;
    const auto est = mc::mc_moment(params, mc::McMomentKind::MeanXY, s);
    CHECK(std::abs(est.value - delta_po(params)) <= 3.0 * est.error_estimate);
}

TEST_CASE("nominal SNR from the link budget") {
    LinkBudget pb{1.0, 1.0, 1.0, 2.0, 1.0, 0.1};
    CHECK(channel::nominal_snr_from_budget(pb, 1.0, 1.0) == doctest::Approx(10.0));

    // doubling the transmit power doubles the result
    LinkBudget pb2 = pb;
    pb2.tx_power_w = 2.0;
    CHECK(channel::nominal_snr_from_budget(pb2, 1.0, 1.0) ==
          doctest::Approx(2.0 * channel::nominal_snr_from_budget(pb, 1.0, 1.0)));

    // independent spreadsheet-style recomputation
    LinkBudget pb3{1.0, 1e-3, 5.0, 2.7, 0.6, 1e-9};
    const double energy = 1.0 * 1e-3 * std::exp(-2.7 * std::log(5.0));
    const double info = 1e-3 * std::exp(-2.7 * std::log(5.0));
    const double expected = energy * 0.6 * info / 1e-9;
    CHECK(channel::nominal_snr_from_budget(pb3, 1e-3, 5.0) ==
          doctest::Approx(expected).epsilon(1e-12));

    LinkBudget bad = pb;
    bad.eh_efficiency = 1.5;
    CHECK_THROWS_AS(channel::nominal_snr_from_budget(bad, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("effective SNR accounting") {
    ScenarioSpec s1;
    s1.topology = channel::Topology::S1;
    s1.correlated_pair = {0.0, 0.7};
    s1.gamma_bar_b_db = 20.0;
    s1.gamma_bar_e_db = 5.0;
    s1.eve_mode = channel::EveMode::TrueSnr;
    {
        const auto [gb, ge] = channel::effective_snrs(s1);
        CHECK(gb == doctest::Approx(100.0));
        // 5 dB reduced by delta_po = 1.49 -> about 3.27 dB
        CHECK(channel::linear_to_db(ge) == doctest::Approx(3.268).epsilon(1e-3));
    }
    ScenarioSpec s2 = s1;
    s2.topology = channel::Topology::S2;
    {
        const auto [gb, ge] = channel::effective_snrs(s2);
        CHECK(gb == doctest::Approx(100.0));
        CHECK(channel::linear_to_db(ge) == doctest::Approx(6.732).epsilon(1e-3));
    }
    s1.eve_mode = channel::EveMode::Naive;
    s2.eve_mode = channel::EveMode::Naive;
    CHECK(channel::effective_snrs(s1).second == doctest::Approx(channel::db_to_linear(5.0)));
    CHECK(channel::effective_snrs(s2).second == doctest::Approx(channel::db_to_linear(5.0)));
}

TEST_CASE("pure line-of-sight limit gives deterministic unit gains") {
    RngStream rng(123);
    const auto [x, y] = channel::sample_correlated_rician_pair({1e12, 0.4}, rng);
    CHECK(x == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(y == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("unit correlation duplicates the channel sample by sample") {
    RngStream rng(9);
    for (int i = 0; i < 200; ++i) {
        const auto [x, y] = channel::sample_correlated_rician_pair({2.5, 1.0}, rng);
        CHECK(x == y);
    }
}

TEST_CASE("Rayleigh product moment from samples") {
    const FadingParams params{0.0, 0.6};
    mc::McSettings s;
    s.n_samples = 2'000'000;
    s.seed = 4242;
    const auto est = mc::mc_moment(params, mc::McMomentKind::MeanXY, s);
    CHECK(std::abs(est.value - (1.0 + 0.36)) <= 3.0 * est.error_estimate);
}

TEST_CASE("sample means are normalized") {
    for (const FadingParams params : {FadingParams{0.0, 0.0}, FadingParams{4.0, 0.8}}) {
        mc::McSettings s;
        s.n_samples = 1'000'000;
        s.seed = 31337;
        const auto est = mc::mc_moment(params, mc::McMomentKind::MeanX, s);
        CHECK(std::abs(est.value - 1.0) <= 3.0 * est.error_estimate);
    }
}

TEST_CASE("zero correlation factorizes") {
    RngStream rng = RngStream::substream(5150, 0);
    const FadingParams params{1.0, 0.0};
    double sx = 0, sy = 0, sxy = 0;
    const int n = 500000;
    for (int i = 0; i < n; ++i) {
        const auto [x, y] = channel::sample_correlated_rician_pair(params, rng);
        sx += x;
        sy += y;
        sxy += x * y;
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    // var(x) var(y) are O(1); 3 sigma of the covariance estimate
    CHECK(std::abs(cov) < 3.0 / std::sqrt(static_cast<double>(n)) * 2.0);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(channel::validate_fading({-1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(channel::validate_fading({0.0, 1.0}), std::invalid_argument);
    CHECK_NOTHROW(channel::validate_fading_for_sampling({0.0, 1.0}));
    CHECK_THROWS_AS(channel::validate_fading_for_sampling({0.0, 1.1}), std::invalid_argument);
}
