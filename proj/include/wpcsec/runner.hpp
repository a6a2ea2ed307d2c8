// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wpcsec/config.hpp"

namespace wpcsec::runner {

/// One CSV row: a grid point, a metric, a method, its estimate.
/// gamma_e_db distinguishes grid points of presets that sweep the
/// eavesdropper's nominal SNR; it is NaN (empty field) for P2P.
struct ResultRow {
    std::string scenario;
    std::string metric;
    std::string method;
    double k_factor = 0.0;
    double rho = 0.0;
    double p = 0.0;
    double snr_db = 0.0;
    std::string eve_mode; // empty for P2P
    double r_th = std::numeric_limits<double>::quiet_NaN();      // NaN if not applicable
    double gamma_e_db = std::numeric_limits<double>::quiet_NaN();
    double value = std::numeric_limits<double>::quiet_NaN();
    double error_estimate = 0.0;
    long long work = 0;
    bool converged = true;
};

struct RunOutcome {
    std::vector<ResultRow> rows;
    bool all_converged = true;
};

/// Evaluate every grid cell of the config. n_threads > 1 distributes cells
/// over a pool; rows come back in a deterministic lexicographic order
/// regardless of the thread count.
RunOutcome run_experiment(const config::ExperimentConfig& cfg, int n_threads = 1);

std::string format_csv(const std::vector<ResultRow>& rows);
void write_csv_file(const std::string& path, const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(std::istream& in);
std::vector<ResultRow> load_csv_file(const std::string& path);

struct CheckReport {
    int checks_run = 0;
    int failures = 0;
    std::vector<std::string> lines;
};

/// Ordering/crossover assertions over a produced result table: analytic
/// monotonicity in the swept SNR, secrecy monotonicity in the eavesdropper
/// SNR, true-vs-naive ordering (and its reversal in S2), the low-SNR
/// benefit / high-SNR penalty crossover of correlated S1 secrecy, and the
/// high-SNR insensitivity of S2 secrecy outage to correlation.
CheckReport check_rows(const std::vector<ResultRow>& rows);

} // namespace wpcsec::runner
