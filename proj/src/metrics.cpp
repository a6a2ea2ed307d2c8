// SPDX-License-Identifier: Apache-2.0
#include "wpcsec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "wpcsec/specfun.hpp"

namespace wpcsec::metrics {

using channel::EveMode;
using channel::FadingParams;
using channel::ScenarioSpec;
using channel::SnrAxis;
using channel::Topology;
using dist::SeriesSettings;
using quad::QuadResult;
using quad::QuadSettings;
using specfun::bessel_i_scaled;
using specfun::bessel_k_scaled;
using specfun::exp_integral_e1;
using specfun::exp_integral_e1_scaled;
using specfun::kEulerGamma;

namespace {

constexpr double kLn2 = 0.69314718055994530942;
// Above this the pair is treated as the no-fading limit (both gains exactly 1).
constexpr double kDegenerateK = 1e9;

double log2_1p(double v) { return std::log1p(v) / kLn2; }

MetricEstimate from_quad(const QuadResult& r) {
    MetricEstimate e;
    e.value = r.value;
    e.error_estimate = r.error_estimate;
    e.method = Method::Quadrature;
    e.work = r.subdivisions_used;
    if (!r.converged && !(e.error_estimate > 0.0))
        e.error_estimate = std::abs(e.value); // non-convergence, no usable bound
    return e;
}

// E_z[ln(1 + B z)] for a unit-mean exponential z: equals e^{1/B} E_1(1/B).
double exp_log_moment(double big_b) {
    if (!(big_b > 0.0))
        return 0.0;
    return exp_integral_e1_scaled(1.0 / big_b);
}

// int_0^W e^{-w} [ln(1 + B W) - ln(1 + B w)] dw + ln(1+BW) e^{-W}
// ... folded analytically: int_0^W e^{-w} ln-part of the S1 secrecy slice.
// Returns ln A - (e1s(a) - e^{-W} e1s(a + W)) with a = 1/B, A = 1 + B W,
// i.e. E_z[ ln((1+BW')/(1+Bz)) 1{z<W} ] pieces combined by the caller.
double s1_conditional_log_gap(double log_a_term, double big_b, double cap_w) {
    const double a = 1.0 / big_b;
    const double tail = (cap_w > 700.0) ? 0.0
                                        : std::exp(-cap_w) * exp_integral_e1_scaled(a + cap_w);
    const double gap = log_a_term - (exp_integral_e1_scaled(a) - tail);
    return std::max(gap, 0.0);
}

struct SecrecyContext {
    Topology topology;
    FadingParams pair;
    double independent_k;
    double gamma_b; // internal scale of u = x y
    double gamma_e; // internal scale of v = x z
    SeriesSettings series;
    QuadSettings settings;
};

SecrecyContext make_context(const ScenarioSpec& spec, const QuadSettings& settings,
                            const SeriesSettings& series) {
    if (spec.topology == Topology::P2P)
        throw std::invalid_argument("secrecy metrics require topology S1 or S2");
    const ResolvedSnrs snrs = resolve_scenario_snrs(spec);
    return SecrecyContext{spec.topology, spec.correlated_pair, spec.independent_link_k,
                          snrs.gamma_bar_b_internal, snrs.gamma_bar_e_internal,
                          series, settings};
}

bool all_rayleigh(const SecrecyContext& ctx) {
    return ctx.pair.k_factor == 0.0 && ctx.independent_k == 0.0;
}

double power_correlation(const FadingParams& p) { return p.rho * p.rho; }

// --- all-Rayleigh direct (u, v)-plane evaluations -------------------------

MetricEstimate asc_rayleigh_direct(const SecrecyContext& ctx) {
    const double gb = ctx.gamma_b, ge = ctx.gamma_e;
    dist::JointDensityParams jp;
    jp.scenario = ctx.topology;
    jp.pair = ctx.pair;
    jp.independent_link_k = 0.0;

    const quad::Integrand2d f = [&](double u, double v) {
        const double ratio = log2_1p(gb * u) - log2_1p(ge * v);
        if (ratio <= 0.0)
            return 0.0;
        return ratio * dist::joint_uv_pdf(u, v, jp);
    };
    quad::InnerBounds bounds;
    bounds.lower = [](double) { return 0.0; };
    bounds.upper = [gb, ge](double u) { return u * gb / ge; };
    const double bps[] = {1.0};
    return from_quad(quad::integrate_2d(f, bounds, bps, ctx.settings));
}

MetricEstimate opsc_rayleigh_double(const SecrecyContext& ctx, const RateThreshold& thr) {
    dist::JointDensityParams jp;
    jp.scenario = ctx.topology;
    jp.pair = ctx.pair;
    jp.independent_link_k = 0.0;
    const double two_r = std::exp2(thr.r_th);

    if (ctx.topology == Topology::S1) {
        const double b = ctx.gamma_b / (two_r * ctx.gamma_e);
        const double c = (two_r - 1.0) / (two_r * ctx.gamma_e);
        const quad::Integrand2d f = [&](double u, double v) {
            return dist::joint_uv_pdf(u, v, jp);
        };
        quad::InnerBounds bounds;
        bounds.lower = [b, c](double u) { return std::max(0.0, b * u - c); };
        bounds.upper_infinite = true;
        const double bps[] = {c / b, 1.0};
        QuadResult r = quad::integrate_2d(f, bounds, bps, ctx.settings);
        r.value = std::clamp(r.value, 0.0, 1.0);
        return from_quad(r);
    }
    // S2: outage region is u below beta v + psi; outer variable is v.
    const double beta = two_r * ctx.gamma_e / ctx.gamma_b;
    const double psi = (two_r - 1.0) / ctx.gamma_b;
    const quad::Integrand2d f = [&](double v, double u) {
        return dist::joint_uv_pdf(u, v, jp);
    };
    quad::InnerBounds bounds;
    bounds.lower = [](double) { return 0.0; };
    bounds.upper = [beta, psi](double v) { return beta * v + psi; };
    const double bps[] = {1.0};
    QuadResult r = quad::integrate_2d(f, bounds, bps, ctx.settings);
    r.value = std::clamp(r.value, 0.0, 1.0);
    return from_quad(r);
}

// Validated S1 single-integral reduction of the outage double integral.
MetricEstimate opsc_rayleigh_single_s1(const SecrecyContext& ctx, const RateThreshold& thr) {
    const double p = power_correlation(ctx.pair);
    const double alpha = 2.0 / (1.0 - p);
    const double two_r = std::exp2(thr.r_th);
    const double b = ctx.gamma_b / (two_r * ctx.gamma_e);
    const double c = (two_r - 1.0) / (two_r * ctx.gamma_e);

    const quad::Integrand g = [=](double u) {
        const double z_i = alpha * std::sqrt(u * p);
        const double z_k = alpha * std::sqrt(u + 2.0 * std::max(0.0, b * u - c) / alpha);
        return alpha * std::exp(z_i - z_k) * bessel_i_scaled(0, z_i) *
               bessel_k_scaled(0, z_k);
    };
    const double bps[] = {c / b, 1.0};
    QuadResult r = quad::integrate_semi_infinite(g, 0.0, bps, ctx.settings);
    r.value = std::clamp(r.value, 0.0, 1.0);
    return from_quad(r);
}

// --- exact reordering of the Rician-path secrecy integrals ----------------
//
// Substituting the mixing integral that defines the joint (u, v) density
// into the metric's double integral and swapping the order of integration
// turns (metric) = iint h(u, v) f_uv(u, v) dv du into
//   int_s int_x (1/x) f_pair(x, s/x) H(s, x) dx ds,
// where s is the correlated product and H averages h over the independent
// link conditioned on x. This is the same integral evaluated without the
// inner mixing quadrature.

double reordered_secrecy_integral(const SecrecyContext& ctx,
                                  const std::function<double(double, double)>& factor_h,
                                  std::span<const double> outer_kinks, QuadResult* out) {
    QuadSettings inner = ctx.settings;
    inner.rel_tol = std::max(ctx.settings.rel_tol * 0.25, 1e-14);

    bool inner_converged = true;
    const quad::Integrand outer = [&](double s) {
        const quad::Integrand slice = [&](double x) {
            const double dens = dist::bivariate_rician_pdf(x, s / x, ctx.pair, ctx.series) / x;
            if (dens <= 0.0)
                return 0.0;
            return dens * factor_h(s, x);
        };
        const double rs = std::sqrt(s);
        const double bps[] = {std::min(1.0, s), rs, std::max(1.0, s)};
        const QuadResult r = quad::integrate_semi_infinite(slice, 0.0, bps, inner);
        if (!r.converged)
            inner_converged = false;
        return r.value;
    };

    std::vector<double> bps{1.0, channel::delta_po(ctx.pair)};
    bps.insert(bps.end(), outer_kinks.begin(), outer_kinks.end());
    QuadResult r = quad::integrate_semi_infinite(outer, 0.0, bps, ctx.settings);
    r.converged = r.converged && inner_converged;
    *out = r;
    return r.value;
}

double independent_survival(double k_factor, double t) {
    if (t <= 0.0)
        return 1.0;
    if (k_factor == 0.0)
        return std::exp(-t);
    return 1.0 - dist::rician_power_cdf(t, k_factor);
}

double independent_cdf(double k_factor, double t) {
    if (t <= 0.0)
        return 0.0;
    if (k_factor == 0.0)
        return -std::expm1(-t);
    return dist::rician_power_cdf(t, k_factor);
}

MetricEstimate asc_reordered(const SecrecyContext& ctx) {
    const double gb = ctx.gamma_b, ge = ctx.gamma_e;
    QuadResult r;
    if (ctx.topology == Topology::S1) {
        // independent link is Eve's (z); H = E_z[ log2((1+gb u)/(1+ge x z))+ ]
        if (ctx.independent_k == 0.0) {
            const auto h = [gb, ge](double u, double x) {
                const double big_b = ge * x;
                const double cap_w = u * gb / big_b;
                return s1_conditional_log_gap(std::log1p(gb * u), big_b, cap_w) / kLn2;
            };
            reordered_secrecy_integral(ctx, h, {}, &r);
        } else {
            const double k_ind = ctx.independent_k;
            QuadSettings hset = ctx.settings;
            hset.rel_tol = std::max(ctx.settings.rel_tol, 1e-9);
            const auto h = [gb, ge, k_ind, hset](double u, double x) {
                const double top = std::log1p(gb * u);
                const double cap_w = u * gb / (ge * x);
                const quad::Integrand f = [&](double w) {
                    return dist::rician_power_pdf(w, k_ind) *
                           (top - std::log1p(ge * x * w));
                };
                return quad::integrate_finite(f, 0.0, cap_w, {}, hset).value / kLn2;
            };
            reordered_secrecy_integral(ctx, h, {}, &r);
        }
    } else {
        // S2: outer variable is the correlated wiretap product v; the
        // independent link is Bob's (y); H = E_y[ log2((1+gb x y)/(1+ge v))+ ]
        if (ctx.independent_k == 0.0) {
            const auto h = [gb, ge](double v, double x) {
                const double big_b = gb * x;
                const double w0 = ge * v / big_b;
                const double tail = (w0 > 700.0)
                                        ? 0.0
                                        : std::exp(-w0) *
                                              exp_integral_e1_scaled(1.0 / big_b + w0);
                return tail / kLn2;
            };
            reordered_secrecy_integral(ctx, h, {}, &r);
        } else {
            const double k_ind = ctx.independent_k;
            QuadSettings hset = ctx.settings;
            hset.rel_tol = std::max(ctx.settings.rel_tol, 1e-9);
            const auto h = [gb, ge, k_ind, hset](double v, double x) {
                const double bottom = std::log1p(ge * v);
                const double w0 = ge * v / (gb * x);
                const quad::Integrand f = [&](double w) {
                    return dist::rician_power_pdf(w, k_ind) *
                           (std::log1p(gb * x * w) - bottom);
                };
                return quad::integrate_semi_infinite(f, w0, {}, hset).value / kLn2;
            };
            reordered_secrecy_integral(ctx, h, {}, &r);
        }
    }
    r.value = std::max(r.value, 0.0);
    return from_quad(r);
}

MetricEstimate opsc_reordered(const SecrecyContext& ctx, const RateThreshold& thr) {
    const double two_r = std::exp2(thr.r_th);
    QuadResult r;
    if (ctx.topology == Topology::S1) {
        const double b = ctx.gamma_b / (two_r * ctx.gamma_e);
        const double c = (two_r - 1.0) / (two_r * ctx.gamma_e);
        const double k_ind = ctx.independent_k;
        const auto h = [b, c, k_ind](double u, double x) {
            return independent_survival(k_ind, std::max(0.0, b * u - c) / x);
        };
        const double kinks[] = {c / b};
        reordered_secrecy_integral(ctx, h, kinks, &r);
    } else {
        const double beta = two_r * ctx.gamma_e / ctx.gamma_b;
        const double psi = (two_r - 1.0) / ctx.gamma_b;
        const double k_ind = ctx.independent_k;
        const auto h = [beta, psi, k_ind](double v, double x) {
            return independent_cdf(k_ind, (beta * v + psi) / x);
        };
        reordered_secrecy_integral(ctx, h, {}, &r);
    }
    r.value = std::clamp(r.value, 0.0, 1.0);
    return from_quad(r);
}

// literal nested evaluation over the numerically mixed joint density
MetricEstimate opsc_forced_double(const SecrecyContext& ctx, const RateThreshold& thr) {
    dist::JointDensityParams jp;
    jp.scenario = ctx.topology;
    jp.pair = ctx.pair;
    jp.independent_link_k = ctx.independent_k;
    jp.series = ctx.series;
    const double two_r = std::exp2(thr.r_th);

    if (ctx.topology == Topology::S1) {
        const double b = ctx.gamma_b / (two_r * ctx.gamma_e);
        const double c = (two_r - 1.0) / (two_r * ctx.gamma_e);
        const quad::Integrand2d f = [&](double u, double v) {
            return dist::joint_uv_pdf_numeric(u, v, jp);
        };
        quad::InnerBounds bounds;
        bounds.lower = [b, c](double u) { return std::max(0.0, b * u - c); };
        bounds.upper_infinite = true;
        const double bps[] = {c / b, 1.0};
        QuadResult r = quad::integrate_2d(f, bounds, bps, ctx.settings);
        r.value = std::clamp(r.value, 0.0, 1.0);
        return from_quad(r);
    }
    const double beta = two_r * ctx.gamma_e / ctx.gamma_b;
    const double psi = (two_r - 1.0) / ctx.gamma_b;
    const quad::Integrand2d f = [&](double v, double u) {
        return dist::joint_uv_pdf_numeric(u, v, jp);
    };
    quad::InnerBounds bounds;
    bounds.lower = [](double) { return 0.0; };
    bounds.upper = [beta, psi](double v) { return beta * v + psi; };
    const double bps[] = {1.0};
    QuadResult r = quad::integrate_2d(f, bounds, bps, ctx.settings);
    r.value = std::clamp(r.value, 0.0, 1.0);
    return from_quad(r);
}

} // namespace

std::string method_name(Method m) {
    switch (m) {
    case Method::Quadrature: return "quadrature";
    case Method::ClosedForm: return "closed_form";
    case Method::MonteCarlo: return "monte_carlo";
    case Method::Asymptotic: return "asymptotic";
    }
    return "unknown";
}

void RateThreshold::validate() const {
    if (!(r_th > 0.0) || !std::isfinite(r_th))
        throw std::invalid_argument("RateThreshold.r_th must be finite and > 0");
}

ResolvedSnrs resolve_scenario_snrs(const ScenarioSpec& spec) {
    const auto [gamma_b, gamma_e_eff] = channel::effective_snrs(spec);
    const double dpo = channel::delta_po(spec.correlated_pair);
    ResolvedSnrs r;
    r.gamma_bar_e_effective = gamma_e_eff;
    switch (spec.topology) {
    case Topology::P2P:
    case Topology::S1:
        // the swept value is Bob's achieved mean SNR; the product u = x y
        // has mean delta_po, so the internal scale removes it
        r.gamma_bar_b_internal =
            spec.snr_axis == SnrAxis::Achieved ? gamma_b / dpo : gamma_b;
        r.gamma_bar_e_internal = gamma_e_eff; // E{x z} = 1 in S1
        break;
    case Topology::S2:
        r.gamma_bar_b_internal = gamma_b;            // Bob's links are independent
        r.gamma_bar_e_internal = gamma_e_eff / dpo;  // E{x z} = delta_po in S2
        break;
    }
    return r;
}

MetricEstimate avg_capacity(const FadingParams& params, double gamma_bar_i,
                            const SeriesSettings& series, const QuadSettings& settings) {
    channel::validate_fading(params);
    series.validate();
    if (!(gamma_bar_i > 0.0))
        throw std::invalid_argument("avg_capacity: gamma_bar_i must be > 0");

    if (params.k_factor > kDegenerateK) {
        MetricEstimate e;
        e.value = log2_1p(gamma_bar_i);
        e.method = Method::ClosedForm;
        return e;
    }

    if (params.k_factor == 0.0) {
        const double p = power_correlation(params);
        const double mean_u = 1.0 + p;
        const quad::Integrand f = [&](double u) {
            return log2_1p(gamma_bar_i * u) * dist::rayleigh_product_pdf(u, mean_u, p);
        };
        const double bps[] = {mean_u};
        return from_quad(quad::integrate_semi_infinite(f, 0.0, bps, settings));
    }

    const quad::Integrand f = [&](double u) {
        return log2_1p(gamma_bar_i * u) *
               dist::product_pdf_numeric(u, params, series, settings);
    };
    const double bps[] = {1.0, channel::delta_po(params)};
    return from_quad(quad::integrate_semi_infinite(f, 0.0, bps, settings));
}

MetricEstimate outage_probability(const FadingParams& params, double gamma_bar_i,
                                  const RateThreshold& threshold,
                                  const SeriesSettings& series,
                                  const QuadSettings& settings, bool prefer_closed_form) {
    channel::validate_fading(params);
    series.validate();
    threshold.validate();
    if (!(gamma_bar_i > 0.0))
        throw std::invalid_argument("outage_probability: gamma_bar_i must be > 0");
    const double gamma_th = threshold.gamma_th();
    if (gamma_th <= 0.0) {
        MetricEstimate e;
        e.method = Method::ClosedForm;
        return e; // zero threshold, zero outage
    }

    if (params.k_factor > kDegenerateK) {
        MetricEstimate e;
        e.value = gamma_bar_i < gamma_th ? 1.0 : 0.0;
        e.method = Method::ClosedForm;
        return e;
    }

    if (params.k_factor == 0.0) {
        const double p = power_correlation(params);
        const double mean_gamma = gamma_bar_i * (1.0 + p);
        if (prefer_closed_form) {
            MetricEstimate e;
            e.value = dist::rayleigh_product_cdf(gamma_th, mean_gamma, p);
            e.method = Method::ClosedForm;
            return e;
        }
        const quad::Integrand f = [&](double g) {
            return dist::rayleigh_product_pdf(g, mean_gamma, p);
        };
        QuadResult r = quad::integrate_finite(f, 0.0, gamma_th, {}, settings);
        r.value = std::clamp(r.value, 0.0, 1.0);
        return from_quad(r);
    }

    const double u_th = gamma_th / gamma_bar_i;
    const quad::Integrand f = [&](double u) {
        return dist::product_pdf_numeric(u, params, series, settings);
    };
    QuadResult r = quad::integrate_finite(f, 0.0, u_th, {}, settings);
    r.value = std::clamp(r.value, 0.0, 1.0);
    return from_quad(r);
}

double single_rician_capacity_loss(double k_factor) {
    if (!(k_factor >= 0.0))
        throw std::invalid_argument("single_rician_capacity_loss: k_factor must be >= 0");
    if (k_factor < 1e-12)
        return kEulerGamma / kLn2;
    if (k_factor > 700.0)
        return (std::log1p(1.0 / k_factor) - exp_integral_e1_scaled(k_factor) *
                                                 std::exp(-k_factor)) / kLn2;
    return (std::log1p(1.0 / k_factor) - exp_integral_e1(k_factor)) / kLn2;
}

double capacity_loss_t(const FadingParams& params) {
    channel::validate_fading(params);
    return 2.0 * single_rician_capacity_loss(params.k_factor) +
           std::log2(channel::delta_po(params));
}

MetricEstimate avg_capacity_asymptotic(const FadingParams& params, double gamma_bar_b) {
    if (!(gamma_bar_b > 0.0))
        throw std::invalid_argument("avg_capacity_asymptotic: gamma_bar_b must be > 0");
    MetricEstimate e;
    e.value = std::max(std::log2(gamma_bar_b) - capacity_loss_t(params), 0.0);
    e.method = Method::Asymptotic;
    return e;
}

double instantaneous_secrecy_capacity(double gamma_b, double gamma_e) {
    if (!(gamma_b >= 0.0) || !(gamma_e >= 0.0))
        throw std::invalid_argument("instantaneous_secrecy_capacity: SNRs must be >= 0");
    return std::max(log2_1p(gamma_b) - log2_1p(gamma_e), 0.0);
}

MetricEstimate product_capacity_independent(double k_a, double k_b, double gamma_bar,
                                            const QuadSettings& settings) {
    if (!(k_a >= 0.0) || !(k_b >= 0.0))
        throw std::invalid_argument("product_capacity_independent: factors must be >= 0");
    if (!(gamma_bar > 0.0))
        throw std::invalid_argument("product_capacity_independent: gamma_bar must be > 0");

    const auto conditional = [&](double x) -> double {
        if (k_b > kDegenerateK)
            return log2_1p(gamma_bar * x);
        if (k_b == 0.0)
            return exp_log_moment(gamma_bar * x) / kLn2;
        const quad::Integrand f = [&](double z) {
            return dist::rician_power_pdf(z, k_b) * log2_1p(gamma_bar * x * z);
        };
        QuadSettings inner = settings;
        inner.rel_tol = std::max(settings.rel_tol, 1e-9);
        const double bps[] = {1.0};
        return quad::integrate_semi_infinite(f, 0.0, bps, inner).value;
    };

    if (k_a > kDegenerateK) {
        MetricEstimate e;
        e.value = conditional(1.0);
        e.method = Method::Quadrature;
        return e;
    }

    const quad::Integrand f = [&](double x) {
        return dist::rician_power_pdf(x, k_a) * conditional(x);
    };
    const double bps[] = {1.0};
    return from_quad(quad::integrate_semi_infinite(f, 0.0, bps, settings));
}

MetricEstimate avg_secrecy_capacity(const ScenarioSpec& spec, const QuadSettings& settings,
                                    const SeriesSettings& series) {
    const SecrecyContext ctx = make_context(spec, settings, series);
    if (all_rayleigh(ctx))
        return asc_rayleigh_direct(ctx);
    return asc_reordered(ctx);
}

MetricEstimate secrecy_outage(const ScenarioSpec& spec, const RateThreshold& threshold,
                              const QuadSettings& settings, const SeriesSettings& series,
                              bool force_double_integral) {
    threshold.validate();
    const SecrecyContext ctx = make_context(spec, settings, series);
    if (force_double_integral) {
        if (all_rayleigh(ctx))
            return opsc_rayleigh_double(ctx, threshold);
        return opsc_forced_double(ctx, threshold);
    }
    if (all_rayleigh(ctx)) {
        // single-integral reduction for S1 (validated against the double
        // integral); S2's printed reduction is inconsistent, so S2 keeps
        // the double integral
        if (ctx.topology == Topology::S1)
            return opsc_rayleigh_single_s1(ctx, threshold);
        return opsc_rayleigh_double(ctx, threshold);
    }
    return opsc_reordered(ctx, threshold);
}

double secrecy_outage_single_integral_printed(const ScenarioSpec& spec,
                                              const RateThreshold& threshold,
                                              const QuadSettings& settings) {
    threshold.validate();
    const SecrecyContext ctx = make_context(spec, settings, {});
    if (!all_rayleigh(ctx))
        throw std::invalid_argument(
            "secrecy_outage_single_integral_printed: all links must be Rayleigh");
    const double p = power_correlation(ctx.pair);
    const double alpha = 2.0 / (1.0 - p);
    const double two_r = std::exp2(threshold.r_th);

    if (ctx.topology == Topology::S1) {
        const double b = ctx.gamma_b / (two_r * ctx.gamma_e);
        const double c = (two_r - 1.0) / (two_r * ctx.gamma_e);
        const quad::Integrand g = [=](double u) {
            const double z_i = alpha * std::sqrt(u * p);
            const double z_k =
                alpha * std::sqrt(u + 2.0 * std::max(0.0, b * u - c) / alpha);
            return alpha * std::exp(z_i - z_k) * bessel_i_scaled(0, z_i) *
                   bessel_k_scaled(0, z_k);
        };
        const double bps[] = {c / b, 1.0};
        return std::clamp(quad::integrate_semi_infinite(g, 0.0, bps, settings).value,
                          0.0, 1.0);
    }
    const double beta = two_r * ctx.gamma_e / ctx.gamma_b;
    const double psi = (two_r - 1.0) / ctx.gamma_b;
    const quad::Integrand g = [=](double v) {
        const double z_i = alpha * std::sqrt(v * p);
        const double z_k =
            alpha * std::sqrt(2.0 * psi / alpha + v * (2.0 * beta * alpha + 1.0));
        return alpha * std::exp(z_i - z_k) * bessel_i_scaled(0, z_i) *
               bessel_k_scaled(0, z_k);
    };
    const double bps[] = {1.0};
    return std::clamp(1.0 - quad::integrate_semi_infinite(g, 0.0, bps, settings).value,
                      0.0, 1.0);
}

MetricEstimate asc_asymptotic(const ScenarioSpec& spec, AscAsymptoticForm form,
                              const QuadSettings& settings, const SeriesSettings& series) {
    const SecrecyContext ctx = make_context(spec, settings, series);
    const ResolvedSnrs snrs = resolve_scenario_snrs(spec);

    double cap_b = 0.0;
    double cap_e = 0.0;
    if (ctx.topology == Topology::S1) {
        const double achieved_b = ctx.gamma_b * channel::delta_po(ctx.pair);
        cap_b = (form == AscAsymptoticForm::ExactLegitimate)
                    ? avg_capacity(ctx.pair, ctx.gamma_b, series, settings).value
                    : std::log2(achieved_b) - capacity_loss_t(ctx.pair);
        cap_e = product_capacity_independent(ctx.pair.k_factor, ctx.independent_k,
                                             snrs.gamma_bar_e_effective, settings)
                    .value;
    } else {
        cap_b = (form == AscAsymptoticForm::ExactLegitimate)
                    ? product_capacity_independent(ctx.pair.k_factor, ctx.independent_k,
                                                   ctx.gamma_b, settings)
                          .value
                    : std::log2(ctx.gamma_b) -
                          (single_rician_capacity_loss(ctx.pair.k_factor) +
                           single_rician_capacity_loss(ctx.independent_k));
        cap_e = avg_capacity(ctx.pair, ctx.gamma_e, series, settings).value;
    }

    MetricEstimate e;
    e.value = std::max(cap_b - cap_e, 0.0);
    e.method = Method::Asymptotic;
    return e;
}

} // namespace wpcsec::metrics
