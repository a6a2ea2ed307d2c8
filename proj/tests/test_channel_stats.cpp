// SPDX-License-Identifier: Apache-2.0
//
// Statistical gates on the correlated-pair sampler at full sample size:
// normalization, the pair moment, marginal correctness against a
// quadrature CDF oracle, and factorization at zero correlation.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "wpcsec/channel.hpp"
#include "wpcsec/dist.hpp"
#include "wpcsec/mc.hpp"
#include "wpcsec/quadrature.hpp"

using namespace wpcsec;
using channel::FadingParams;

namespace {
constexpr long long kSamples = 10'000'000;

const FadingParams kGrid[] = {
    {0.0, 0.0}, {0.0, 0.7}, {1.0, 0.5}, {5.0, 0.9}, {10.0, 0.7},
};
} // namespace

TEST_CASE("sample means of both gains are 1 on the grid") {
    for (const FadingParams& params : kGrid) {
        mc::McSettings s;
        s.n_samples = kSamples;
        s.seed = 1001;
        s.n_streams = 2;
        const auto mean_x = mc::mc_moment(params, mc::McMomentKind::MeanX, s);
        CAPTURE(params.k_factor);
        CAPTURE(params.rho);
        CHECK(std::abs(mean_x.value - 1.0) <= 3.0 * mean_x.error_estimate);
    }
}

TEST_CASE("pair moment reproduces the power offset on the grid") {
    for (const FadingParams& params : kGrid) {
        mc::McSettings s;
        s.n_samples = kSamples;
        s.seed = 1002;
        s.n_streams = 2;
        const auto mean_xy = mc::mc_moment(params, mc::McMomentKind::MeanXY, s);
        CAPTURE(params.k_factor);
        CAPTURE(params.rho);
        CHECK(std::abs(mean_xy.value - channel::delta_po(params)) <=
              3.0 * mean_xy.error_estimate);
    }
}

TEST_CASE("marginal power CDF matches the quadrature oracle at 20 quantiles") {
    const FadingParams params{2.0, 0.8};
    RngStream rng = RngStream::substream(1003, 0);
    std::vector<double> xs;
    xs.reserve(kSamples);
    for (long long i = 0; i < kSamples; ++i)
        xs.push_back(channel::sample_correlated_rician_pair(params, rng).first);
    std::sort(xs.begin(), xs.end());

    for (int q = 1; q <= 20; ++q) {
        const double level = q / 21.0;
        const double x_q = xs[static_cast<size_t>(level * (kSamples - 1))];
        // oracle: integrate the marginal power density up to the quantile
        quad::QuadSettings qs;
        qs.rel_tol = 1e-10;
        const auto cdf = quad::integrate_finite(
            [&](double t) { return dist::rician_power_pdf(t, params.k_factor); }, 0.0, x_q,
            {}, qs);
        REQUIRE(cdf.converged);
        CAPTURE(level);
        CHECK(std::abs(cdf.value - level) < 1e-3);
    }
}

TEST_CASE("empirical covariance vanishes at zero correlation") {
    const FadingParams params{3.0, 0.0};
    RngStream rng = RngStream::substream(1004, 0);
    double sx = 0, sy = 0, sxy = 0;
    for (long long i = 0; i < kSamples; ++i) {
        const auto [x, y] = channel::sample_correlated_rician_pair(params, rng);
        sx += x;
        sy += y;
        sxy += x * y;
    }
    const double n = static_cast<double>(kSamples);
    const double cov = sxy / n - (sx / n) * (sy / n);
    CHECK(std::abs(cov) < 3.0 * 0.5 / std::sqrt(n));
}
