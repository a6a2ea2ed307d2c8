// SPDX-License-Identifier: Apache-2.0
#include "wpcsec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace wpcsec::quad {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct GaussRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
GaussRule make_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussRule& rule10() {
    static const GaussRule r = make_rule(10);
    return r;
}
const GaussRule& rule21() {
    static const GaussRule r = make_rule(21);
    return r;
}

struct Panel {
    double a, b;
    double value;
    double err;
    bool refinable = true;
    bool alive = true;
};

struct HeapEntry {
    double err;
    size_t seq;
    bool operator<(const HeapEntry& o) const {
        if (err != o.err)
            return err < o.err;
        return seq > o.seq; // older panel wins ties
    }
};

double apply_rule(const GaussRule& r, const Integrand& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        const double x = mid + half * r.nodes[i];
        const double y = f(x);
        if (std::isnan(y))
            throw IntegrandError("integrand returned NaN at x = " + std::to_string(x), x);
        sum += r.weights[i] * y;
    }
    return sum * half;
}

void eval_panel(const Integrand& f, Panel& p) {
    const double coarse = apply_rule(rule10(), f, p.a, p.b);
    const double fine = apply_rule(rule21(), f, p.a, p.b);
    p.value = fine;
    p.err = std::abs(fine - coarse);
}

// Core adaptive loop over an initial partition of [a, b]. tail_panel_b, when
// finite, marks the right endpoint whose adjacent panel is subject to the
// tail-mass bound.
QuadResult adapt(const Integrand& f, std::vector<double> edges,
                 const QuadSettings& settings, double tail_edge,
                 double tail_mass_bound) {
    std::vector<Panel> panels;
    panels.reserve(settings.max_subdivisions + 8);
    std::priority_queue<HeapEntry> heap;

    auto push_panel = [&](double a, double b) {
        Panel p{a, b, 0.0, 0.0, true, true};
        const double scale = std::max({std::abs(a), std::abs(b), 1.0});
        if (b - a < 1e-14 * scale)
            p.refinable = false;
        eval_panel(f, p);
        panels.push_back(p);
        if (p.refinable)
            heap.push({p.err, panels.size() - 1});
    };

    for (size_t i = 0; i + 1 < edges.size(); ++i)
        push_panel(edges[i], edges[i + 1]);

    auto totals = [&]() {
        double v = 0.0, e = 0.0;
        for (const Panel& p : panels)
            if (p.alive) {
                v += p.value;
                e += p.err;
            }
        return std::pair<double, double>{v, e};
    };

    auto tail_contribution = [&]() {
        if (!std::isfinite(tail_edge))
            return 0.0;
        double contrib = 0.0;
        for (const Panel& p : panels)
            if (p.alive && p.b == tail_edge)
                contrib = std::abs(p.value) + p.err;
        return contrib;
    };

    QuadResult result;
    while (true) {
        const auto [value, err] = totals();
        const double tol = std::max(settings.abs_tol, settings.rel_tol * std::abs(value));
        const double tail = tail_contribution();
        const bool tail_ok = tail <= std::max(tail_mass_bound * std::max(1.0, std::abs(value)),
                                              settings.abs_tol);
        if (err <= tol && tail_ok) {
            result.converged = true;
            break;
        }
        if (static_cast<int>(panels.size()) >= settings.max_subdivisions)
            break;
        // pick the worst refinable panel; if the tail bound is the blocker,
        // refine the tail panel instead
        size_t idx = panels.size();
        if (err <= tol && !tail_ok) {
            for (size_t i = 0; i < panels.size(); ++i)
                if (panels[i].alive && panels[i].refinable && panels[i].b == tail_edge)
                    idx = i;
        } else {
            while (!heap.empty()) {
                const HeapEntry top = heap.top();
                heap.pop();
                if (panels[top.seq].alive && panels[top.seq].refinable &&
                    panels[top.seq].err == top.err) {
                    idx = top.seq;
                    break;
                }
            }
        }
        if (idx >= panels.size())
            break; // nothing refinable left
        Panel& parent = panels[idx];
        parent.alive = false;
        const double mid = 0.5 * (parent.a + parent.b);
        push_panel(parent.a, mid);
        push_panel(mid, parent.b);
    }

    const auto [value, err] = totals();
    result.value = value;
    result.error_estimate = err;
    result.subdivisions_used = static_cast<int>(panels.size());
    return result;
}

std::vector<double> build_edges(double a, double b, std::span<const double> breakpoints) {
    std::vector<double> edges{a};
    for (double bp : breakpoints)
        if (bp > a && bp < b)
            edges.push_back(bp);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

} // namespace

void QuadSettings::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw std::invalid_argument("QuadSettings.rel_tol must be in (0, 1)");
    if (!(abs_tol > 0.0))
        throw std::invalid_argument("QuadSettings.abs_tol must be > 0");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadSettings.max_subdivisions must be >= 1");
    if (!(tail_mass_bound > 0.0))
        throw std::invalid_argument("QuadSettings.tail_mass_bound must be > 0");
}

QuadResult integrate_finite(const Integrand& f, double a, double b,
                            std::span<const double> breakpoints,
                            const QuadSettings& settings) {
    settings.validate();
    if (!(b > a)) {
        QuadResult r;
        r.converged = true;
        return r;
    }
    return adapt(f, build_edges(a, b, breakpoints), settings,
                 std::numeric_limits<double>::infinity(), settings.tail_mass_bound);
}

QuadResult integrate_semi_infinite(const Integrand& f, double lower,
                                   std::span<const double> breakpoints,
                                   const QuadSettings& settings) {
    settings.validate();
    if (!(lower >= 0.0) || !std::isfinite(lower))
        throw std::invalid_argument("integrate_semi_infinite: lower must be finite and >= 0");

    // Split the finite head at the breakpoints, map the tail beyond the last
    // breakpoint with u = u0 + t/(1-t).
    double u0 = lower;
    std::vector<double> head;
    for (double bp : breakpoints)
        if (bp > lower && std::isfinite(bp))
            head.push_back(bp);
    std::sort(head.begin(), head.end());
    head.erase(std::unique(head.begin(), head.end()), head.end());
    if (!head.empty())
        u0 = head.back();

    const Integrand mapped = [&f, u0](double t) {
        const double om = 1.0 - t;
        if (!(om > 0.0))
            return 0.0; // node rounded onto t = 1; integrand must vanish there
        const double u = u0 + t / om;
        if (!std::isfinite(u))
            return 0.0;
        const double fu = f(u);
        if (std::isnan(fu))
            throw IntegrandError("integrand returned NaN at x = " + std::to_string(u), u);
        return fu / (om * om);
    };

    // Map head breakpoints into t-space relative to u0? The head is handled
    // as ordinary finite panels in u-space; only [u0, inf) is mapped.
    std::vector<double> edges;
    edges.push_back(0.0);
    // geometric pre-splits toward t = 1 so the far tail is always inspected
    for (double t : {0.5, 0.75, 0.875, 0.9375, 0.96875})
        edges.push_back(t);
    edges.push_back(1.0);

    QuadResult tail = adapt(mapped, edges, settings, 1.0, settings.tail_mass_bound);

    if (head.empty())
        return tail;

    std::vector<double> head_edges{lower};
    head_edges.insert(head_edges.end(), head.begin(), head.end());
    QuadSettings head_settings = settings;
    QuadResult head_res = adapt(f, head_edges, head_settings,
                                std::numeric_limits<double>::infinity(),
                                settings.tail_mass_bound);

    QuadResult total;
    total.value = head_res.value + tail.value;
    total.error_estimate = head_res.error_estimate + tail.error_estimate;
    total.subdivisions_used = head_res.subdivisions_used + tail.subdivisions_used;
    total.converged = head_res.converged && tail.converged;
    return total;
}

QuadResult integrate_2d(const Integrand2d& f, const InnerBounds& bounds,
                        std::span<const double> outer_breakpoints,
                        const QuadSettings& settings) {
    settings.validate();
    QuadSettings inner_settings = settings;
    inner_settings.rel_tol = std::max(settings.rel_tol * 0.25, 1e-14);
    inner_settings.abs_tol = std::max(settings.abs_tol * 0.1, 1e-300);

    bool inner_all_converged = true;
    int inner_max_subdivisions = 0;

    const Integrand outer = [&](double u) {
        const double lo = bounds.lower ? bounds.lower(u) : 0.0;
        const Integrand slice = [&f, u](double v) { return f(u, v); };
        QuadResult inner;
        if (bounds.upper_infinite) {
            inner = integrate_semi_infinite(slice, std::max(lo, 0.0), {}, inner_settings);
        } else {
            const double hi = bounds.upper(u);
            if (!(hi > lo))
                return 0.0; // empty slice
            inner = integrate_finite(slice, lo, hi, {}, inner_settings);
        }
        if (!inner.converged)
            inner_all_converged = false;
        inner_max_subdivisions = std::max(inner_max_subdivisions, inner.subdivisions_used);
        return inner.value;
    };

    QuadResult outer_res = integrate_semi_infinite(outer, 0.0, outer_breakpoints, settings);
    outer_res.converged = outer_res.converged && inner_all_converged;
    outer_res.subdivisions_used += inner_max_subdivisions;
    return outer_res;
}

} // namespace wpcsec::quad
