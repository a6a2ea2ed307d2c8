// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace wpcsec {

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic random stream: a std::mt19937_64 engine (whose output
/// sequence is fixed by the standard) plus portable uniform and normal
/// transforms, so identical (seed, stream) pairs give bit-identical draws
/// on any conforming implementation.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Stream `index` of a logical run keyed by `seed`; distinct indices give
    /// statistically independent streams.
    static RngStream substream(std::uint64_t seed, std::uint64_t index) {
        const std::uint64_t mixed =
            splitmix64(splitmix64(seed) ^ splitmix64(0x9E3779B97F4A7C15ULL * (index + 1)));
        return RngStream(mixed);
    }

    /// Uniform on (0, 1] with 53-bit resolution (never 0, so log() is safe).
    double uniform() {
        const std::uint64_t bits = engine_() >> 11;
        return (static_cast<double>(bits) + 1.0) * 0x1p-53;
    }

    /// Standard normal via Box-Muller; one transform yields two deviates.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const auto [a, b] = normal_pair();
        spare_ = b;
        have_spare_ = true;
        return a;
    }

    std::pair<double, double> normal_pair();

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace wpcsec
