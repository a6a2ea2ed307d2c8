// SPDX-License-Identifier: Apache-2.0
#include "wpcsec/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wpcsec::channel {

namespace {
constexpr double kSqrtHalf = 0.70710678118654752440;
}

void validate_fading(const FadingParams& p) {
    if (!(p.k_factor >= 0.0) || !std::isfinite(p.k_factor))
        throw std::invalid_argument("FadingParams.k_factor must be finite and >= 0");
    if (!(p.rho >= 0.0 && p.rho < 1.0))
        throw std::invalid_argument("FadingParams.rho must be in [0, 1)");
}

void validate_fading_for_sampling(const FadingParams& p) {
    if (!(p.k_factor >= 0.0) || !std::isfinite(p.k_factor))
        throw std::invalid_argument("FadingParams.k_factor must be finite and >= 0");
    if (!(p.rho >= 0.0 && p.rho <= 1.0))
        throw std::invalid_argument("FadingParams.rho must be in [0, 1] for sampling");
}

void LinkBudget::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("LinkBudget.") + name +
                                        " must be finite and > 0");
    };
    positive(tx_power_w, "tx_power_w");
    positive(aggregate_gain, "aggregate_gain");
    positive(distance_m, "distance_m");
    positive(alpha_pl, "alpha_pl");
    positive(eh_efficiency, "eh_efficiency");
    positive(noise_power_w, "noise_power_w");
    if (eh_efficiency > 1.0)
        throw std::invalid_argument("LinkBudget.eh_efficiency must be <= 1");
}

void ScenarioSpec::validate() const {
    validate_fading(correlated_pair);
    if (!(independent_link_k >= 0.0) || !std::isfinite(independent_link_k))
        throw std::invalid_argument("ScenarioSpec.independent_link_k must be finite and >= 0");
    if (!std::isfinite(gamma_bar_b_db))
        throw std::invalid_argument("ScenarioSpec.gamma_bar_b_db must be finite");
    if (topology != Topology::P2P && !std::isfinite(gamma_bar_e_db))
        throw std::invalid_argument("ScenarioSpec.gamma_bar_e_db must be finite");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double v) { return 10.0 * std::log10(v); }

double delta_po(const FadingParams& p) {
    validate_fading_for_sampling(p);
    const double k = p.k_factor;
    const double r = p.rho;
    return (k * k + 2.0 * k * (1.0 + r) + 1.0 + r * r) / ((k + 1.0) * (k + 1.0));
}

double nominal_snr_from_budget(const LinkBudget& pb_link, double info_gain,
                               double info_distance_m) {
    pb_link.validate();
    if (!(info_gain > 0.0) || !(info_distance_m > 0.0))
        throw std::invalid_argument("nominal_snr_from_budget: info link parameters must be > 0");
    const double energy_hop =
        pb_link.tx_power_w * pb_link.aggregate_gain * std::pow(pb_link.distance_m, -pb_link.alpha_pl);
    const double info_hop = info_gain * std::pow(info_distance_m, -pb_link.alpha_pl);
    return energy_hop * pb_link.eh_efficiency * info_hop / pb_link.noise_power_w;
}

std::pair<double, double> effective_snrs(const ScenarioSpec& spec) {
    spec.validate();
    const double gamma_b = db_to_linear(spec.gamma_bar_b_db);
    if (spec.topology == Topology::P2P)
        return {gamma_b, 0.0};
    const double gamma_e_nominal = db_to_linear(spec.gamma_bar_e_db);
    if (spec.eve_mode == EveMode::Naive)
        return {gamma_b, gamma_e_nominal};
    const double dpo = delta_po(spec.correlated_pair);
    const double gamma_e = (spec.topology == Topology::S1) ? gamma_e_nominal / dpo
                                                           : gamma_e_nominal * dpo;
    return {gamma_b, gamma_e};
}

std::pair<double, double> sample_correlated_rician_pair(const FadingParams& p,
                                                        RngStream& rng) {
    validate_fading_for_sampling(p);
    const double k = p.k_factor;
    const double los = std::sqrt(k / (k + 1.0));
    const double scatter = std::sqrt(1.0 / (k + 1.0));
    const double cross = std::sqrt(1.0 - p.rho * p.rho);

    const auto [g1, g2] = rng.normal_pair();
    const auto [g3, g4] = rng.normal_pair();
    const double z1_re = g1 * kSqrtHalf, z1_im = g2 * kSqrtHalf;
    const double z2_re = g3 * kSqrtHalf, z2_im = g4 * kSqrtHalf;

    const double hp_re = los + scatter * z1_re;
    const double hp_im = scatter * z1_im;
    const double hi_re = los + scatter * (p.rho * z1_re + cross * z2_re);
    const double hi_im = scatter * (p.rho * z1_im + cross * z2_im);

    return {hp_re * hp_re + hp_im * hp_im, hi_re * hi_re + hi_im * hi_im};
}

double sample_rician_power(double k_factor, RngStream& rng) {
    if (!(k_factor >= 0.0))
        throw std::invalid_argument("sample_rician_power: k_factor must be >= 0");
    const double los = std::sqrt(k_factor / (k_factor + 1.0));
    const double scatter = std::sqrt(1.0 / (k_factor + 1.0));
    const auto [g1, g2] = rng.normal_pair();
    const double re = los + scatter * g1 * kSqrtHalf;
    const double im = scatter * g2 * kSqrtHalf;
    return re * re + im * im;
}

} // namespace wpcsec::channel
