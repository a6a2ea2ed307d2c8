// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wpcsec/channel.hpp"
#include "wpcsec/quadrature.hpp"

namespace wpcsec::dist {

/// Truncation depth of the bivariate Rician series. 10 terms match Monte
/// Carlo to well below curve thickness for the K, rho ranges exercised here.
struct SeriesSettings {
    int n_terms = 10;
    void validate() const;
};

struct JointDensityParams {
    channel::Topology scenario = channel::Topology::S1; // S1 or S2
    channel::FadingParams pair;
    double independent_link_k = 0.0;
    SeriesSettings series{};
    quad::QuadSettings quad{};
};

/// Marginal power density of a single Rician link with E{gain} = 1.
double rician_power_pdf(double t, double k_factor);
/// Marginal power CDF; series Marcum Q with a quadrature fallback near the
/// slowly-converging a ~ b diagonal.
double rician_power_cdf(double t, double k_factor);
/// First-order Marcum Q.
double marcum_q1(double a, double b);

/// Joint power density of a correlated Rician pair, truncated series form.
/// rho = 0 is evaluated as the product of the marginals (the series
/// degenerates there); the series itself composes every
/// exponential-times-Bessel product in log space and exponentiates once,
/// so it cannot overflow at any (x, y).
double bivariate_rician_pdf(double x, double y, const channel::FadingParams& p,
                            const SeriesSettings& series = {});

/// Density of the product u = x y of a correlated pair, by semi-infinite
/// quadrature of the bivariate density over one factor.
double product_pdf_numeric(double u, const channel::FadingParams& p,
                           const SeriesSettings& series = {},
                           const quad::QuadSettings& settings = {});

/// Closed-form density of the product SNR of a correlated Rayleigh pair,
/// parameterized by the achieved mean gamma_bar and power correlation
/// p = rho^2. Diverges logarithmically at gamma = 0 (domain error there).
double rayleigh_product_pdf(double gamma, double gamma_bar, double p);

/// Matching CDF; exact 0 at gamma = 0, clamped into [0, 1].
double rayleigh_product_cdf(double gamma, double gamma_bar, double p);

/// Joint density of (u, v) = (xy, xz). S1 correlates (x, y), S2 correlates
/// (x, z); the other factor is an independent Rician link. All-Rayleigh
/// setups use the closed form obtained by integrating the correlated
/// Rayleigh pair density (role-swapped for S2); anything else evaluates the
/// one-dimensional mixing integral numerically.
double joint_uv_pdf(double u, double v, const JointDensityParams& params);

/// Same, but forcing the numerical mixing-integral path (used to validate
/// the closed form and the S2 role swap).
double joint_uv_pdf_numeric(double u, double v, const JointDensityParams& params);

bool rayleigh_closed_form_applies(const JointDensityParams& params);

/// Amount of fading of the correlated Rayleigh product channel,
/// 4(1 + p(4 + p))/(1 + p)^2 - 1; increasing in p, from 3 at p = 0 to 5.
double aof_rayleigh_product(double p);

} // namespace wpcsec::dist
