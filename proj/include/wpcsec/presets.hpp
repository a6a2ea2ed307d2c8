// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "wpcsec/config.hpp"

namespace wpcsec::presets {

std::vector<std::string> preset_names();

/// Ready-made sweep configurations matching the reference experiment set:
///   fig2   P2P average capacity vs SNR, p in {0, 0.5, 0.9}, K in {0, 10}
///   fig3   P2P outage probability, same grid, R_th = 1
///   fig4   S1 average secrecy capacity, rho in {0, 0.7, 0.9}, both
///          eavesdropper accountings, Rayleigh eavesdropper at 5 dB nominal
///   fig4b  fig4 (true accounting only) plus both high-SNR approximations
///   fig5   fig4 data for the normalized-capacity view
///   fig6   S1 secrecy outage, fig4 grid, R_th = 1
///   fig7   S2 average secrecy capacity, Rayleigh legitimate link,
///          eavesdropper nominal {5, 10} dB
///   fig8   S2 secrecy outage, fig7 grid, R_th = 1
config::ExperimentConfig figure_preset(const std::string& name);

} // namespace wpcsec::presets
