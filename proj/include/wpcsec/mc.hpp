// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "wpcsec/channel.hpp"
#include "wpcsec/metrics.hpp"

namespace wpcsec::mc {

/// Samples are drawn in fixed-size chunks, each with its own substream
/// keyed by (seed, chunk index), and partial sums are reduced in chunk
/// order. n_streams only controls how many threads process chunks, so the
/// estimate is bit-identical for any thread count.
struct McSettings {
    long long n_samples = 1'000'000;
    std::uint64_t seed = 0x5EEDBA5EULL;
    int n_streams = 1;

    void validate() const;
};

enum class McMetricKind { Capacity, Outage, Asc, Opsc };
enum class McMomentKind { MeanX, MeanXY, SecondMomentProduct };

/// Monte Carlo estimate of a metric directly from channel draws; the
/// independent oracle for every analytic path. P2P supports capacity and
/// outage only.
metrics::MetricEstimate mc_metric(const channel::ScenarioSpec& spec, McMetricKind kind,
                                  const metrics::RateThreshold& threshold,
                                  const McSettings& settings);

/// Moments of the correlated pair (unit nominal SNR).
metrics::MetricEstimate mc_moment(const channel::FadingParams& params, McMomentKind kind,
                                  const McSettings& settings);

/// Estimate over a chunk subrange [chunk_begin, chunk_end) of the same
/// logical sample stream; used for stream-independence checks.
metrics::MetricEstimate mc_metric_range(const channel::ScenarioSpec& spec, McMetricKind kind,
                                        const metrics::RateThreshold& threshold,
                                        const McSettings& settings, long long chunk_begin,
                                        long long chunk_end);

inline constexpr long long kChunkSamples = 1 << 16;

} // namespace wpcsec::mc
