// SPDX-License-Identifier: Apache-2.0
#include "wpcsec/mc.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace wpcsec::mc {

using channel::FadingParams;
using channel::ScenarioSpec;
using channel::Topology;
using metrics::MetricEstimate;
using metrics::Method;
using metrics::RateThreshold;

namespace {

constexpr double kLn2 = 0.69314718055994530942;

struct ChunkSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    long long count = 0;
};

struct PairConstants {
    double los, scatter, rho, cross;
    explicit PairConstants(const FadingParams& p)
        : los(std::sqrt(p.k_factor / (p.k_factor + 1.0))),
          scatter(std::sqrt(1.0 / (p.k_factor + 1.0))),
          rho(p.rho),
          cross(std::sqrt(1.0 - p.rho * p.rho)) {}
};

struct IndependentConstants {
    double los, scatter;
    explicit IndependentConstants(double k)
        : los(std::sqrt(k / (k + 1.0))), scatter(std::sqrt(1.0 / (k + 1.0))) {}
};

constexpr double kSqrtHalf = 0.70710678118654752440;

inline std::pair<double, double> draw_pair(const PairConstants& c, RngStream& rng) {
    const auto [g1, g2] = rng.normal_pair();
    const auto [g3, g4] = rng.normal_pair();
    const double z1_re = g1 * kSqrtHalf, z1_im = g2 * kSqrtHalf;
    const double z2_re = g3 * kSqrtHalf, z2_im = g4 * kSqrtHalf;
    const double hp_re = c.los + c.scatter * z1_re;
    const double hp_im = c.scatter * z1_im;
    const double hi_re = c.los + c.scatter * (c.rho * z1_re + c.cross * z2_re);
    const double hi_im = c.scatter * (c.rho * z1_im + c.cross * z2_im);
    return {hp_re * hp_re + hp_im * hp_im, hi_re * hi_re + hi_im * hi_im};
}

inline double draw_single(const IndependentConstants& c, RngStream& rng) {
    const auto [g1, g2] = rng.normal_pair();
    const double re = c.los + c.scatter * g1 * kSqrtHalf;
    const double im = c.scatter * g2 * kSqrtHalf;
    return re * re + im * im;
}

// Runs fn(chunk_index, rng, take) over every chunk, partial sums reduced in
// index order afterwards. n_threads > 1 only distributes chunks.
template <typename PerSample>
MetricEstimate run_chunks(std::uint64_t seed, long long chunk_begin, long long chunk_end,
                          long long total_samples, int n_threads, PerSample per_sample) {
    const long long n_chunks = chunk_end - chunk_begin;
    std::vector<ChunkSums> partials(static_cast<size_t>(n_chunks));

    auto process = [&](long long chunk) {
        const long long global_index = chunk_begin + chunk;
        RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(global_index));
        const long long first_sample = global_index * kChunkSamples;
        const long long last_sample =
            std::min(first_sample + kChunkSamples, total_samples);
        ChunkSums& s = partials[static_cast<size_t>(chunk)];
        for (long long i = first_sample; i < last_sample; ++i) {
            const double v = per_sample(rng);
            s.sum += v;
            s.sum_sq += v * v;
            ++s.count;
        }
    };

    if (n_threads <= 1) {
        for (long long chunk = 0; chunk < n_chunks; ++chunk)
            process(chunk);
    } else {
        std::atomic<long long> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t)
            workers.emplace_back([&]() {
                while (true) {
                    const long long chunk = next.fetch_add(1);
                    if (chunk >= n_chunks)
                        return;
                    process(chunk);
                }
            });
        for (auto& w : workers)
            w.join();
    }

    double sum = 0.0, sum_sq = 0.0;
    long long count = 0;
    for (const ChunkSums& s : partials) {
        sum += s.sum;
        sum_sq += s.sum_sq;
        count += s.count;
    }

    MetricEstimate e;
    e.method = Method::MonteCarlo;
    e.work = count;
    if (count == 0)
        return e;
    const double mean = sum / static_cast<double>(count);
    e.value = mean;
    if (count > 1) {
        const double var =
            std::max(0.0, (sum_sq - static_cast<double>(count) * mean * mean) /
                              static_cast<double>(count - 1));
        e.error_estimate = std::sqrt(var / static_cast<double>(count));
    }
    return e;
}

} // namespace

void McSettings::validate() const {
    if (n_samples < 1000)
        throw std::invalid_argument("McSettings.n_samples must be >= 1000");
    if (n_streams < 1)
        throw std::invalid_argument("McSettings.n_streams must be >= 1");
}

MetricEstimate mc_metric_range(const ScenarioSpec& spec, McMetricKind kind,
                               const RateThreshold& threshold, const McSettings& settings,
                               long long chunk_begin, long long chunk_end) {
    settings.validate();
    spec.validate();
    if (spec.topology == Topology::P2P &&
        (kind == McMetricKind::Asc || kind == McMetricKind::Opsc))
        throw std::invalid_argument("mc_metric: secrecy metrics need topology S1 or S2");
    if (kind == McMetricKind::Outage || kind == McMetricKind::Opsc)
        threshold.validate();

    const metrics::ResolvedSnrs snrs = metrics::resolve_scenario_snrs(spec);
    const double gb = snrs.gamma_bar_b_internal;
    const double ge = snrs.gamma_bar_e_internal;
    const double gamma_th = threshold.gamma_th();
    const double r_th = threshold.r_th;

    const PairConstants pair(spec.correlated_pair);
    const IndependentConstants indep(spec.independent_link_k);
    const Topology topo = spec.topology;

    const auto per_sample = [&, gb, ge, gamma_th, r_th, topo, kind](RngStream& rng) -> double {
        const auto [x, corr] = draw_pair(pair, rng);
        double u, v = 0.0;
        if (topo == Topology::S2) {
            v = x * corr; // correlated pair feeds the wiretap product
            u = x * draw_single(indep, rng);
        } else {
            u = x * corr;
            if (kind == McMetricKind::Asc || kind == McMetricKind::Opsc)
                v = x * draw_single(indep, rng);
        }
        switch (kind) {
        case McMetricKind::Capacity:
            return std::log1p(gb * u) / kLn2;
        case McMetricKind::Outage:
            return gb * u < gamma_th ? 1.0 : 0.0;
        case McMetricKind::Asc:
            return std::max((std::log1p(gb * u) - std::log1p(ge * v)) / kLn2, 0.0);
        case McMetricKind::Opsc:
            return (std::log1p(gb * u) - std::log1p(ge * v)) / kLn2 < r_th ? 1.0 : 0.0;
        }
        return 0.0;
    };

    MetricEstimate e = run_chunks(settings.seed, chunk_begin, chunk_end, settings.n_samples,
                                  settings.n_streams, per_sample);
    if (kind == McMetricKind::Outage || kind == McMetricKind::Opsc) {
        // binomial standard error
        const double n = static_cast<double>(e.work);
        if (n > 1)
            e.error_estimate = std::sqrt(e.value * (1.0 - e.value) / n);
    }
    return e;
}

MetricEstimate mc_metric(const ScenarioSpec& spec, McMetricKind kind,
                         const RateThreshold& threshold, const McSettings& settings) {
    settings.validate();
    const long long n_chunks = (settings.n_samples + kChunkSamples - 1) / kChunkSamples;
    return mc_metric_range(spec, kind, threshold, settings, 0, n_chunks);
}

MetricEstimate mc_moment(const FadingParams& params, McMomentKind kind,
                         const McSettings& settings) {
    settings.validate();
    channel::validate_fading_for_sampling(params);
    const PairConstants pair(params);

    const auto per_sample = [&, kind](RngStream& rng) -> double {
        const auto [x, y] = draw_pair(pair, rng);
        switch (kind) {
        case McMomentKind::MeanX:
            return x;
        case McMomentKind::MeanXY:
            return x * y;
        case McMomentKind::SecondMomentProduct:
            return x * y * x * y;
        }
        return 0.0;
    };

    const long long n_chunks = (settings.n_samples + kChunkSamples - 1) / kChunkSamples;
    return run_chunks(settings.seed, 0, n_chunks, settings.n_samples, settings.n_streams,
                      per_sample);
}

} // namespace wpcsec::mc
