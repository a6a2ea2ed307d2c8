// SPDX-License-Identifier: Apache-2.0
#include "wpcsec/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace wpcsec::presets {

using channel::EveMode;
using channel::Topology;
using config::ExperimentConfig;

namespace {

std::vector<double> snr_sweep() {
    std::vector<double> v;
    for (int db = 0; db <= 40; db += 5)
        v.push_back(static_cast<double>(db));
    return v;
}

ExperimentConfig base_preset(std::uint64_t seed_salt) {
    ExperimentConfig cfg;
    cfg.sweep_db = snr_sweep();
    cfg.k_values = {0.0, 10.0};
    cfg.mc.seed = 0xC0FFEE00ULL + seed_salt;
    cfg.mc.n_samples = 1'000'000;
    return cfg;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig2", "fig3", "fig4", "fig4b", "fig5", "fig6", "fig7", "fig8"};
}

ExperimentConfig figure_preset(const std::string& name) {
    if (name == "fig2") {
        ExperimentConfig cfg = base_preset(2);
        cfg.topology = Topology::P2P;
        cfg.rho_values = {0.0, std::sqrt(0.5), std::sqrt(0.9)};
        cfg.metrics = {"capacity"};
        cfg.methods = {"quadrature", "monte_carlo"};
        cfg.output_path = "fig2.csv";
        return cfg;
    }
    if (name == "fig3") {
        ExperimentConfig cfg = base_preset(3);
        cfg.topology = Topology::P2P;
        cfg.rho_values = {0.0, std::sqrt(0.5), std::sqrt(0.9)};
        cfg.metrics = {"outage"};
        cfg.methods = {"closed_form", "monte_carlo"};
        cfg.r_th = 1.0;
        cfg.output_path = "fig3.csv";
        return cfg;
    }
    if (name == "fig4" || name == "fig4b" || name == "fig5" || name == "fig6") {
        ExperimentConfig cfg = base_preset(name == "fig6" ? 6 : 4);
        cfg.topology = Topology::S1;
        cfg.rho_values = {0.0, 0.7, 0.9};
        cfg.independent_k = 0.0; // Rayleigh eavesdropper
        cfg.gamma_e_db_values = {5.0};
        cfg.eve_modes = {EveMode::TrueSnr, EveMode::Naive};
        cfg.metrics = {name == "fig6" ? "opsc" : "asc"};
        cfg.methods = {"quadrature", "monte_carlo"};
        cfg.r_th = 1.0;
        cfg.output_path = name + ".csv";
        if (name == "fig4b") {
            cfg.eve_modes = {EveMode::TrueSnr};
            cfg.methods = {"quadrature", "monte_carlo", "asymptotic", "asymptotic_t"};
        }
        return cfg;
    }
    if (name == "fig7" || name == "fig8") {
        ExperimentConfig cfg = base_preset(name == "fig7" ? 7 : 8);
        cfg.topology = Topology::S2;
        cfg.rho_values = {0.0, 0.7, 0.9};
        cfg.independent_k = 0.0; // Rayleigh legitimate link
        cfg.gamma_e_db_values = {5.0, 10.0};
        cfg.eve_modes = {EveMode::TrueSnr, EveMode::Naive};
        cfg.metrics = {name == "fig7" ? "asc" : "opsc"};
        cfg.methods = {"quadrature", "monte_carlo"};
        cfg.r_th = 1.0;
        cfg.output_path = name + ".csv";
        return cfg;
    }
    std::string names;
    for (const std::string& n : preset_names())
        names += (names.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown preset '" + name + "'; valid presets: " + names);
}

} // namespace wpcsec::presets
