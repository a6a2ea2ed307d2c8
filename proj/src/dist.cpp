// SPDX-License-Identifier: Apache-2.0
#include "wpcsec/dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpcsec/specfun.hpp"

namespace wpcsec::dist {

using channel::FadingParams;
using channel::Topology;
using specfun::bessel_i_scaled;
using specfun::bessel_i_scaled_many;
using specfun::bessel_k_scaled;

void SeriesSettings::validate() const {
    if (n_terms < 1 || n_terms > 64)
        throw std::invalid_argument("SeriesSettings.n_terms must be in [1, 64]");
}

double rician_power_pdf(double t, double k_factor) {
    if (!(t >= 0.0))
        throw std::domain_error("rician_power_pdf: t must be >= 0");
    if (!(k_factor >= 0.0))
        throw std::invalid_argument("rician_power_pdf: k_factor must be >= 0");
    const double k1 = k_factor + 1.0;
    const double b = 2.0 * std::sqrt(k_factor * k1);
    const double arg = b * std::sqrt(t);
    // (K+1) e^{-K-(K+1)t} I_0(b sqrt(t)), with the Bessel growth folded
    // into the exponent
    return k1 * std::exp(-k_factor - k1 * t + arg) * bessel_i_scaled(0, arg);
}

double marcum_q1(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0))
        throw std::domain_error("marcum_q1: arguments must be >= 0");
    if (b == 0.0)
        return 1.0;
    if (a == 0.0)
        return std::exp(-0.5 * b * b);

    const double ratio = std::min(a, b) / std::max(a, b);
    if (ratio > 0.995) {
        // Series converges too slowly near the diagonal; integrate the
        // Rician power density instead. Power CDF at t maps to
        // Q1(sqrt(2K), sqrt(2(K+1)t)): here K = a^2/2, t = b^2/(2(K+1)).
        const double k = 0.5 * a * a;
        const double t = 0.5 * b * b / (k + 1.0);
        const auto pdf = [k](double s) { return rician_power_pdf(s, k); };
        quad::QuadSettings qs;
        qs.rel_tol = 1e-10;
        const auto res = quad::integrate_finite(pdf, 0.0, t, {}, qs);
        return std::clamp(1.0 - res.value, 0.0, 1.0);
    }

    const double scale = std::exp(-0.5 * (a - b) * (a - b));
    const double ab = a * b;
    const double r = ratio;
    // number of terms for r^n below 1e-18 relative
    int n_terms = static_cast<int>(std::ceil(-41.5 / std::log(r))) + 2;
    n_terms = std::clamp(n_terms, 4, 20000);

    std::vector<double> iks(n_terms + 1);
    bessel_i_scaled_many(n_terms, ab, iks);

    if (b > a) {
        // Q1 = e^{-(a-b)^2/2} sum_k (a/b)^k Ik_scaled(ab)
        double sum = 0.0;
        double rk = 1.0;
        for (int k = 0; k <= n_terms; ++k) {
            sum += rk * iks[k];
            rk *= r;
        }
        return std::clamp(scale * sum, 0.0, 1.0);
    }
    // a > b: complement series starting at k = 1
    double sum = 0.0;
    double rk = r;
    for (int k = 1; k <= n_terms; ++k) {
        sum += rk * iks[k];
        rk *= r;
    }
    return std::clamp(1.0 - scale * sum, 0.0, 1.0);
}

double rician_power_cdf(double t, double k_factor) {
    if (!(t >= 0.0))
        throw std::domain_error("rician_power_cdf: t must be >= 0");
    if (t == 0.0)
        return 0.0;
    if (k_factor == 0.0)
        return 1.0 - std::exp(-t);
    const double a = std::sqrt(2.0 * k_factor);
    const double b = std::sqrt(2.0 * (k_factor + 1.0) * t);
    return std::clamp(1.0 - marcum_q1(a, b), 0.0, 1.0);
}

double bivariate_rician_pdf(double x, double y, const FadingParams& p,
                            const SeriesSettings& series) {
    channel::validate_fading(p);
    series.validate();
    if (!(x >= 0.0) || !(y >= 0.0))
        throw std::domain_error("bivariate_rician_pdf: x, y must be >= 0");

    if (p.rho == 0.0)
        return rician_power_pdf(x, p.k_factor) * rician_power_pdf(y, p.k_factor);

    const double k = p.k_factor;
    const double r = p.rho;
    const double one_m_r2 = 1.0 - r * r;
    const double c = (k + 1.0) / one_m_r2;
    const double alpha = 2.0 * r * (k + 1.0) / one_m_r2;
    const double beta = 2.0 / (1.0 + r) * std::sqrt(k * (k + 1.0));

    const double z1 = alpha * std::sqrt(x * y);
    const double z2 = beta * std::sqrt(x);
    const double z3 = beta * std::sqrt(y);

    const int n = series.n_terms;
    double i1[65], i2[65], i3[65];
    bessel_i_scaled_many(n - 1, z1, {i1, static_cast<size_t>(n)});
    bessel_i_scaled_many(n - 1, z2, {i2, static_cast<size_t>(n)});
    bessel_i_scaled_many(n - 1, z3, {i3, static_cast<size_t>(n)});

    double sum = i1[0] * i2[0] * i3[0];
    for (int m = 1; m < n; ++m)
        sum += 2.0 * i1[m] * i2[m] * i3[m];

    // exponent is <= 0 for all (x, y); equality on the LOS ridge
    const double exponent = -c * (x + y) - 2.0 * k / (1.0 + r) + z1 + z2 + z3;
    const double prefactor = (k + 1.0) * (k + 1.0) / one_m_r2;
    return prefactor * std::exp(exponent) * sum;
}

double product_pdf_numeric(double u, const FadingParams& p,
                           const SeriesSettings& series,
                           const quad::QuadSettings& settings) {
    if (!(u > 0.0))
        throw std::domain_error("product_pdf_numeric: u must be > 0");
    const auto integrand = [&](double t) {
        return bivariate_rician_pdf(t, u / t, p, series) / t;
    };
    const double s = std::sqrt(u);
    const double bps[] = {0.5 * s, s, 2.0 * s};
    return quad::integrate_semi_infinite(integrand, 0.0, bps, settings).value;
}

namespace {

void check_rayleigh_product_args(double gamma_bar, double p) {
    if (!(gamma_bar > 0.0))
        throw std::invalid_argument("rayleigh product: gamma_bar must be > 0");
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("rayleigh product: p must be in [0, 1)");
}

} // namespace

double rayleigh_product_pdf(double gamma, double gamma_bar, double p) {
    check_rayleigh_product_args(gamma_bar, p);
    if (!(gamma > 0.0))
        throw std::domain_error("rayleigh_product_pdf: gamma must be > 0 (log singularity at 0)");
    const double a = 2.0 / (1.0 - p) * std::sqrt((1.0 + p) / gamma_bar);
    const double sg = std::sqrt(gamma);
    const double z_i = a * std::sqrt(p) * sg;
    const double z_k = a * sg;
    const double pref = 2.0 / gamma_bar * (1.0 + p) / (1.0 - p);
    return pref * std::exp(z_i - z_k) * bessel_i_scaled(0, z_i) * bessel_k_scaled(0, z_k);
}

double rayleigh_product_cdf(double gamma, double gamma_bar, double p) {
    check_rayleigh_product_args(gamma_bar, p);
    if (!(gamma >= 0.0))
        throw std::domain_error("rayleigh_product_cdf: gamma must be >= 0");
    if (gamma == 0.0)
        return 0.0;
    const double a = 2.0 / (1.0 - p) * std::sqrt((1.0 + p) / gamma_bar);
    const double sg = std::sqrt(gamma);
    const double z_i = a * std::sqrt(p) * sg;
    const double z_k = a * sg;
    const double bracket = bessel_i_scaled(0, z_i) * bessel_k_scaled(1, z_k) +
                           std::sqrt(p) * bessel_i_scaled(1, z_i) * bessel_k_scaled(0, z_k);
    const double f = 1.0 - a * sg * std::exp(z_i - z_k) * bracket;
    return std::clamp(f, 0.0, 1.0);
}

bool rayleigh_closed_form_applies(const JointDensityParams& params) {
    return params.pair.k_factor == 0.0 && params.independent_link_k == 0.0;
}

namespace {

// Closed form for the all-Rayleigh joint density of (correlated product,
// independent-mixed product): with s = correlated product and t = x *
// independent gain, f(s, t) = a / sqrt(s + 2t/a) I_0(a sqrt(s p)) K_1(a
// sqrt(s + 2t/a)), a = 2/(1-p). In S1 the correlated product is u, in S2
// it is v.
double rayleigh_joint_closed(double corr_prod, double mixed_prod, double p) {
    const double a = 2.0 / (1.0 - p);
    const double s = std::sqrt(corr_prod + 2.0 * mixed_prod / a);
    const double z_i = a * std::sqrt(corr_prod * p);
    const double z_k = a * s;
    return a / s * std::exp(z_i - z_k) * bessel_i_scaled(0, z_i) * bessel_k_scaled(1, z_k);
}

} // namespace

double joint_uv_pdf_numeric(double u, double v, const JointDensityParams& params) {
    channel::validate_fading(params.pair);
    params.series.validate();
    if (!(u > 0.0) || !(v > 0.0))
        throw std::domain_error("joint_uv_pdf: u, v must be > 0");
    if (params.scenario == Topology::P2P)
        throw std::invalid_argument("joint_uv_pdf: scenario must be S1 or S2");

    const double k_ind = params.independent_link_k;
    if (params.scenario == Topology::S1) {
        // mix over w = z: (1/v) f_xy(v/w, u w / v) f_z(w)
        const auto integrand = [&](double w) {
            return bivariate_rician_pdf(v / w, u * w / v, params.pair, params.series) *
                   rician_power_pdf(w, k_ind) / v;
        };
        // pair arguments are near their means around w ~ v and w ~ v/u
        const double bps[] = {std::min(v, v / u), std::sqrt(v * (v / u)), std::max(v, v / u)};
        return quad::integrate_semi_infinite(integrand, 0.0, bps, params.quad).value;
    }
    // S2: mix over w = y: (1/u) f_xz(u/w, v w / u) f_y(w)
    const auto integrand = [&](double w) {
        return bivariate_rician_pdf(u / w, v * w / u, params.pair, params.series) *
               rician_power_pdf(w, k_ind) / u;
    };
    const double bps[] = {std::min(u, u / v), std::sqrt(u * (u / v)), std::max(u, u / v)};
    return quad::integrate_semi_infinite(integrand, 0.0, bps, params.quad).value;
}

double joint_uv_pdf(double u, double v, const JointDensityParams& params) {
    if (rayleigh_closed_form_applies(params)) {
        if (!(u > 0.0) || !(v > 0.0))
            throw std::domain_error("joint_uv_pdf: u, v must be > 0");
        const double p = params.pair.rho * params.pair.rho;
        return params.scenario == Topology::S1 ? rayleigh_joint_closed(u, v, p)
                                               : rayleigh_joint_closed(v, u, p);
    }
    return joint_uv_pdf_numeric(u, v, params);
}

double aof_rayleigh_product(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("aof_rayleigh_product: p must be in [0, 1]");
    return 4.0 * (1.0 + p * (4.0 + p)) / ((1.0 + p) * (1.0 + p)) - 1.0;
}

} // namespace wpcsec::dist
