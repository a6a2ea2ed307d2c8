// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace wpcsec::quad {

struct QuadSettings {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    double tail_mass_bound = 1e-12;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions_used = 0;
    bool converged = false;
};

/// Thrown when the integrand produces NaN; carries the offending abscissa.
class IntegrandError : public std::runtime_error {
  public:
    IntegrandError(const std::string& what, double at)
        : std::runtime_error(what), abscissa(at) {}
    double abscissa;
};

using Integrand = std::function<double(double)>;
using Integrand2d = std::function<double(double, double)>;

/// Adaptive integral of f over [a, b]. Interior breakpoints split the
/// interval before refinement; nodes never touch panel endpoints, so
/// integrable endpoint singularities are tolerated when listed as
/// breakpoints (or placed at a/b).
QuadResult integrate_finite(const Integrand& f, double a, double b,
                            std::span<const double> breakpoints = {},
                            const QuadSettings& settings = {});

/// Adaptive integral of f over [lower, inf). The tail beyond the last
/// breakpoint is compactified with u = u0 + t/(1-t) and refined adaptively;
/// the panel touching t = 1 must contribute less than tail_mass_bound
/// relative to the total for the result to count as converged.
QuadResult integrate_semi_infinite(const Integrand& f, double lower,
                                   std::span<const double> breakpoints = {},
                                   const QuadSettings& settings = {});

/// Nested integral of f(u, v) over { u >= 0, inner_lower(u) <= v <= inner_upper(u) },
/// with inner_upper either a callback or +inf. Kinks of piecewise-linear
/// bounds must be passed as outer breakpoints. Inner tolerances are run
/// tighter than the outer ones so the reported outer error estimate
/// dominates.
struct InnerBounds {
    std::function<double(double)> lower;       // v lower limit as a function of u
    std::function<double(double)> upper;       // ignored when upper_infinite
    bool upper_infinite = false;
};

QuadResult integrate_2d(const Integrand2d& f, const InnerBounds& bounds,
                        std::span<const double> outer_breakpoints = {},
                        const QuadSettings& settings = {});

} // namespace wpcsec::quad
