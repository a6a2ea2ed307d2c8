// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "wpcsec/channel.hpp"
#include "wpcsec/dist.hpp"
#include "wpcsec/quadrature.hpp"

namespace wpcsec::metrics {

enum class Method { Quadrature, ClosedForm, MonteCarlo, Asymptotic };

std::string method_name(Method m);

struct MetricEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    Method method = Method::Quadrature;
    long long work = 0; // subdivisions or samples behind the estimate
};

struct RateThreshold {
    double r_th = 1.0; // bits/s/Hz
    double gamma_th() const { return std::exp2(r_th) - 1.0; }
    void validate() const;
};

/// SNR bookkeeping resolved once for all metric and Monte Carlo paths.
/// gamma_bar_b_internal scales the product u = x y (in P2P/S1 the swept
/// achieved SNR divided by delta_po under the Achieved axis reading);
/// gamma_bar_e_internal scales v = x z (in S2 this is Eve's effective SNR
/// divided by delta_po, since E{xz} = delta_po there).
struct ResolvedSnrs {
    double gamma_bar_b_internal = 0.0;
    double gamma_bar_e_internal = 0.0;
    double gamma_bar_e_effective = 0.0;
};

ResolvedSnrs resolve_scenario_snrs(const channel::ScenarioSpec& spec);

/// Average capacity of the correlated product channel, E{log2(1 + g u)}
/// with g = gamma_bar_i. Rayleigh pairs use the closed-form product
/// density; Rician pairs integrate the numerically mixed product density.
MetricEstimate avg_capacity(const channel::FadingParams& params, double gamma_bar_i,
                            const dist::SeriesSettings& series = {},
                            const quad::QuadSettings& settings = {});

/// P(gamma_B < gamma_th). Rayleigh pairs evaluate the closed-form CDF
/// (method ClosedForm) unless prefer_closed_form is false; Rician pairs
/// integrate the product density.
MetricEstimate outage_probability(const channel::FadingParams& params, double gamma_bar_i,
                                  const RateThreshold& threshold,
                                  const dist::SeriesSettings& series = {},
                                  const quad::QuadSettings& settings = {},
                                  bool prefer_closed_form = true);

/// Capacity loss of a single Rician link relative to AWGN, in bits;
/// continuous through K = 0 where it equals gamma_e log2(e).
double single_rician_capacity_loss(double k_factor);

/// High-SNR capacity loss of the correlated product channel:
/// twice the single-link loss plus log2(delta_po).
double capacity_loss_t(const channel::FadingParams& params);

/// log2(gamma_bar_b) - t, clamped at 0; gamma_bar_b is the achieved mean SNR.
MetricEstimate avg_capacity_asymptotic(const channel::FadingParams& params,
                                       double gamma_bar_b);

double instantaneous_secrecy_capacity(double gamma_b, double gamma_e);

/// Average capacity of the product of two independent Rician links with
/// factors k_a, k_b at scale SNR gamma_bar.
MetricEstimate product_capacity_independent(double k_a, double k_b, double gamma_bar,
                                            const quad::QuadSettings& settings = {});

/// Average secrecy capacity over the wedge where the legitimate SNR wins.
/// All-Rayleigh setups integrate the closed-form joint (u, v) density
/// directly; Rician setups evaluate the same double integral after an exact
/// change of variables that absorbs the mixing integral (see README).
MetricEstimate avg_secrecy_capacity(const channel::ScenarioSpec& spec,
                                    const quad::QuadSettings& settings = {},
                                    const dist::SeriesSettings& series = {});

/// Secrecy outage probability. S1 all-Rayleigh uses the validated
/// single-integral reduction; S2 falls back to the double integral because
/// the printed single-integral form disagrees with it (see
/// secrecy_outage_single_integral_printed). force_double_integral forces
/// the literal nested (u, v) evaluation everywhere.
MetricEstimate secrecy_outage(const channel::ScenarioSpec& spec,
                              const RateThreshold& threshold,
                              const quad::QuadSettings& settings = {},
                              const dist::SeriesSettings& series = {},
                              bool force_double_integral = false);

/// The all-Rayleigh single-integral reductions exactly as printed in the
/// source analysis. The S1 form is consistent with the double integral; the
/// S2 form is not (its kernel carries a factor (2 beta alpha + 1) where
/// consistency with the double integral requires (1 + 2 beta / alpha)), so
/// it is exposed for validation and reporting only.
double secrecy_outage_single_integral_printed(const channel::ScenarioSpec& spec,
                                              const RateThreshold& threshold,
                                              const quad::QuadSettings& settings = {});

enum class AscAsymptoticForm {
    ExactLegitimate, // C_S ~ exact C_B minus exact C_E
    LossTerm,        // C_S ~ log2(gamma_bar_B) - t - exact C_E
};

/// High-SNR secrecy-capacity approximations; the eavesdropper term is always
/// the exact product-channel capacity. Clamped at 0.
MetricEstimate asc_asymptotic(const channel::ScenarioSpec& spec, AscAsymptoticForm form,
                              const quad::QuadSettings& settings = {},
                              const dist::SeriesSettings& series = {});

} // namespace wpcsec::metrics
