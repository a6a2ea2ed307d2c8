// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "wpcsec/channel.hpp"
#include "wpcsec/dist.hpp"
#include "wpcsec/mc.hpp"
#include "wpcsec/metrics.hpp"
#include "wpcsec/quadrature.hpp"

namespace wpcsec::config {

inline constexpr int kSchemaVersion = 1;

/// A full sweep description: one topology, parameter grids, the swept Bob
/// SNR axis, and which metrics/methods to evaluate at each grid point.
struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    channel::Topology topology = channel::Topology::P2P;
    std::vector<double> k_values{0.0};
    std::vector<double> rho_values{0.0};
    double independent_k = 0.0;
    std::vector<double> gamma_e_db_values{};
    std::vector<channel::EveMode> eve_modes{channel::EveMode::TrueSnr};
    channel::SnrAxis snr_axis = channel::SnrAxis::Achieved;
    std::vector<double> sweep_db{};
    std::vector<std::string> metrics{};  // capacity | outage | asc | opsc
    std::vector<std::string> methods{};  // quadrature | closed_form | monte_carlo |
                                         // asymptotic | asymptotic_t
    double r_th = 1.0;
    mc::McSettings mc{};
    quad::QuadSettings quad{};
    dist::SeriesSettings series{};
    std::string output_path = "results.csv";

    void validate() const; // throws with the offending field named
};

/// Parse the flat key = value format (dotted section names, '#' comments,
/// comma-separated lists). Unknown keys are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Apply one "key=value" override to an already-parsed config.
void apply_override(ExperimentConfig& cfg, const std::string& key_value);

std::string topology_name(channel::Topology t);
std::string eve_mode_name(channel::EveMode m);

} // namespace wpcsec::config
