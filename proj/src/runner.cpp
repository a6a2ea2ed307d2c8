// SPDX-License-Identifier: Apache-2.0
#include "wpcsec/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "wpcsec/mc.hpp"
#include "wpcsec/presets.hpp"

namespace wpcsec::runner {

using channel::EveMode;
using channel::ScenarioSpec;
using channel::Topology;
using config::ExperimentConfig;
using metrics::MetricEstimate;
using metrics::Method;
using metrics::RateThreshold;

namespace {

const char* kCsvHeader =
    "scenario,metric,method,K,rho,p,snr_db,eve_mode,R_th,gamma_e_db,value,"
    "error_estimate,n_samples_or_subdivisions";

std::string format_double(double v) {
    if (std::isnan(v))
        return "";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_field_double(const std::string& s) {
    if (s.empty())
        return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("CSV: cannot parse number '" + s + "'");
    return v;
}

// total order over doubles with NaN (missing) sorted first
int cmp_double(double a, double b) {
    const bool na = std::isnan(a), nb = std::isnan(b);
    if (na && nb)
        return 0;
    if (na)
        return -1;
    if (nb)
        return 1;
    if (a < b)
        return -1;
    return a > b ? 1 : 0;
}

bool row_less(const ResultRow& a, const ResultRow& b) {
    if (a.scenario != b.scenario)
        return a.scenario < b.scenario;
    if (a.metric != b.metric)
        return a.metric < b.metric;
    if (a.method != b.method)
        return a.method < b.method;
    if (int c = cmp_double(a.k_factor, b.k_factor))
        return c < 0;
    if (int c = cmp_double(a.rho, b.rho))
        return c < 0;
    if (int c = cmp_double(a.p, b.p))
        return c < 0;
    if (int c = cmp_double(a.snr_db, b.snr_db))
        return c < 0;
    if (a.eve_mode != b.eve_mode)
        return a.eve_mode < b.eve_mode;
    if (int c = cmp_double(a.r_th, b.r_th))
        return c < 0;
    return cmp_double(a.gamma_e_db, b.gamma_e_db) < 0;
}

struct Cell {
    double k_factor;
    double rho;
    double gamma_e_db; // NaN for P2P
    EveMode eve_mode;
    double snr_db;
    std::string metric;
    std::string method;
};

void check_method_supported(const std::string& metric, const std::string& method) {
    const bool ok =
        (metric == "capacity" &&
         (method == "quadrature" || method == "monte_carlo" || method == "asymptotic")) ||
        (metric == "outage" &&
         (method == "quadrature" || method == "closed_form" || method == "monte_carlo")) ||
        (metric == "asc" &&
         (method == "quadrature" || method == "monte_carlo" || method == "asymptotic" ||
          method == "asymptotic_t")) ||
        (metric == "opsc" && (method == "quadrature" || method == "monte_carlo"));
    if (!ok)
        throw std::invalid_argument("config field 'methods': method '" + method +
                                    "' is not applicable to metric '" + metric + "'");
}

ResultRow compute_cell(const ExperimentConfig& cfg, const Cell& cell) {
    ResultRow row;
    row.scenario = config::topology_name(cfg.topology);
    row.metric = cell.metric;
    row.method = cell.method;
    row.k_factor = cell.k_factor;
    row.rho = cell.rho;
    row.p = cell.rho * cell.rho;
    row.snr_db = cell.snr_db;
    row.gamma_e_db = cell.gamma_e_db;
    if (cfg.topology != Topology::P2P)
        row.eve_mode = config::eve_mode_name(cell.eve_mode);
    if (cell.metric == "outage" || cell.metric == "opsc")
        row.r_th = cfg.r_th;

    ScenarioSpec spec;
    spec.topology = cfg.topology;
    spec.correlated_pair = {cell.k_factor, cell.rho};
    spec.independent_link_k = cfg.independent_k;
    spec.gamma_bar_b_db = cell.snr_db;
    spec.gamma_bar_e_db = std::isnan(cell.gamma_e_db) ? 0.0 : cell.gamma_e_db;
    spec.eve_mode = cell.eve_mode;
    spec.snr_axis = cfg.snr_axis;

    const RateThreshold threshold{cfg.r_th};
    const metrics::ResolvedSnrs snrs = metrics::resolve_scenario_snrs(spec);

    MetricEstimate est;
    try {
        if (cell.method == "monte_carlo") {
            mc::McMetricKind kind;
            if (cell.metric == "capacity")
                kind = mc::McMetricKind::Capacity;
            else if (cell.metric == "outage")
                kind = mc::McMetricKind::Outage;
            else if (cell.metric == "asc")
                kind = mc::McMetricKind::Asc;
            else
                kind = mc::McMetricKind::Opsc;
            est = mc::mc_metric(spec, kind, threshold, cfg.mc);
        } else if (cell.metric == "capacity") {
            if (cell.method == "asymptotic") {
                const double achieved =
                    snrs.gamma_bar_b_internal * channel::delta_po(spec.correlated_pair);
                est = metrics::avg_capacity_asymptotic(spec.correlated_pair, achieved);
            } else {
                est = metrics::avg_capacity(spec.correlated_pair, snrs.gamma_bar_b_internal,
                                            cfg.series, cfg.quad);
            }
        } else if (cell.metric == "outage") {
            est = metrics::outage_probability(spec.correlated_pair, snrs.gamma_bar_b_internal,
                                              threshold, cfg.series, cfg.quad,
                                              cell.method == "closed_form");
        } else if (cell.metric == "asc") {
            if (cell.method == "asymptotic")
                est = metrics::asc_asymptotic(spec, metrics::AscAsymptoticForm::ExactLegitimate,
                                              cfg.quad, cfg.series);
            else if (cell.method == "asymptotic_t")
                est = metrics::asc_asymptotic(spec, metrics::AscAsymptoticForm::LossTerm,
                                              cfg.quad, cfg.series);
            else
                est = metrics::avg_secrecy_capacity(spec, cfg.quad, cfg.series);
        } else { // opsc
            est = metrics::secrecy_outage(spec, threshold, cfg.quad, cfg.series);
        }
    } catch (const std::exception& e) {
        std::cerr << "cell failed (" << row.scenario << " " << cell.metric << " "
                  << cell.method << " K=" << cell.k_factor << " rho=" << cell.rho
                  << " snr=" << cell.snr_db << " dB): " << e.what() << "\n";
        row.converged = false;
        return row;
    }

    row.value = est.value;
    row.error_estimate = est.error_estimate;
    row.work = est.work;
    // report the method actually used (closed-form requests fall back to
    // quadrature for Rician grids); asymptotic_t keeps its requested label
    if (cell.method != "asymptotic_t")
        row.method = metrics::method_name(est.method);
    if (cell.method == "monte_carlo" || cell.method == "asymptotic" ||
        cell.method == "asymptotic_t")
        row.converged = true;
    else
        row.converged = !std::isnan(est.value);
    return row;
}

} // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg, int n_threads) {
    cfg.validate();
    for (const std::string& metric : cfg.metrics)
        for (const std::string& method : cfg.methods)
            check_method_supported(metric, method);

    std::vector<Cell> cells;
    const std::vector<double> gamma_e_list =
        cfg.topology == Topology::P2P
            ? std::vector<double>{std::numeric_limits<double>::quiet_NaN()}
            : cfg.gamma_e_db_values;
    const std::vector<EveMode> modes =
        cfg.topology == Topology::P2P ? std::vector<EveMode>{EveMode::TrueSnr} : cfg.eve_modes;

    for (double k : cfg.k_values)
        for (double rho : cfg.rho_values)
            for (double ge : gamma_e_list)
                for (EveMode mode : modes)
                    for (double snr : cfg.sweep_db)
                        for (const std::string& metric : cfg.metrics)
                            for (const std::string& method : cfg.methods)
                                cells.push_back({k, rho, ge, mode, snr, metric, method});

    std::vector<ResultRow> rows(cells.size());
    const int workers = std::max(1, std::min<int>(n_threads, static_cast<int>(cells.size())));
    if (workers == 1) {
        for (size_t i = 0; i < cells.size(); ++i)
            rows[i] = compute_cell(cfg, cells[i]);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&]() {
                while (true) {
                    const size_t i = next.fetch_add(1);
                    if (i >= cells.size())
                        return;
                    rows[i] = compute_cell(cfg, cells[i]);
                }
            });
        for (auto& th : pool)
            th.join();
    }

    std::stable_sort(rows.begin(), rows.end(), row_less);

    RunOutcome outcome;
    outcome.rows = std::move(rows);
    for (const ResultRow& r : outcome.rows)
        outcome.all_converged = outcome.all_converged && r.converged;
    return outcome;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const ResultRow& r : rows) {
        out += r.scenario;
        out += ',';
        out += r.metric;
        out += ',';
        out += r.method;
        out += ',';
        out += format_double(r.k_factor);
        out += ',';
        out += format_double(r.rho);
        out += ',';
        out += format_double(r.p);
        out += ',';
        out += format_double(r.snr_db);
        out += ',';
        out += r.eve_mode;
        out += ',';
        out += format_double(r.r_th);
        out += ',';
        out += format_double(r.gamma_e_db);
        out += ',';
        out += format_double(r.value);
        out += ',';
        out += format_double(r.error_estimate);
        out += ',';
        out += std::to_string(r.work);
        out += '\n';
    }
    return out;
}

void write_csv_file(const std::string& path, const std::vector<ResultRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << format_csv(rows);
}

std::vector<ResultRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("CSV: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kCsvHeader)
        throw std::runtime_error("CSV: unexpected header");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        while (fields.size() < 13)
            fields.emplace_back();
        ResultRow r;
        r.scenario = fields[0];
        r.metric = fields[1];
        r.method = fields[2];
        r.k_factor = parse_field_double(fields[3]);
        r.rho = parse_field_double(fields[4]);
        r.p = parse_field_double(fields[5]);
        r.snr_db = parse_field_double(fields[6]);
        r.eve_mode = fields[7];
        r.r_th = parse_field_double(fields[8]);
        r.gamma_e_db = parse_field_double(fields[9]);
        r.value = parse_field_double(fields[10]);
        r.error_estimate = parse_field_double(fields[11]);
        r.work = fields[12].empty() ? 0 : std::stoll(fields[12]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ResultRow> load_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open CSV file: " + path);
    return parse_csv(in);
}

namespace {

struct SeriesKey {
    std::string scenario, metric, method, eve_mode;
    double k, rho, r_th, gamma_e;

    bool operator<(const SeriesKey& o) const {
        if (scenario != o.scenario) return scenario < o.scenario;
        if (metric != o.metric) return metric < o.metric;
        if (method != o.method) return method < o.method;
        if (eve_mode != o.eve_mode) return eve_mode < o.eve_mode;
        if (int c = cmp_double(k, o.k)) return c < 0;
        if (int c = cmp_double(rho, o.rho)) return c < 0;
        if (int c = cmp_double(r_th, o.r_th)) return c < 0;
        return cmp_double(gamma_e, o.gamma_e) < 0;
    }
};

} // namespace

CheckReport check_rows(const std::vector<ResultRow>& rows) {
    CheckReport report;
    auto record = [&](bool pass, const std::string& what) {
        ++report.checks_run;
        if (!pass)
            ++report.failures;
        report.lines.push_back(std::string(pass ? "PASS  " : "FAIL  ") + what);
    };

    // group into SNR series
    std::map<SeriesKey, std::vector<const ResultRow*>> series;
    for (const ResultRow& r : rows) {
        if (std::isnan(r.value))
            continue;
        series[{r.scenario, r.metric, r.method, r.eve_mode, r.k_factor, r.rho, r.r_th,
                r.gamma_e_db}]
            .push_back(&r);
    }
    for (auto& [key, list] : series)
        std::sort(list.begin(), list.end(), [](const ResultRow* a, const ResultRow* b) {
            return a->snr_db < b->snr_db;
        });

    // monotonicity in the swept SNR
    for (const auto& [key, list] : series) {
        if (list.size() < 2)
            continue;
        const bool increasing = key.metric == "capacity" || key.metric == "asc";
        bool ok = true;
        for (size_t i = 0; i + 1 < list.size(); ++i) {
            const double slack =
                (key.method == "monte_carlo"
                     ? 3.0 * (list[i]->error_estimate + list[i + 1]->error_estimate)
                     : list[i]->error_estimate + list[i + 1]->error_estimate) +
                1e-9;
            const double delta = list[i + 1]->value - list[i]->value;
            if (increasing ? delta < -slack : delta > slack)
                ok = false;
        }
        std::ostringstream what;
        what << key.scenario << " " << key.metric << " " << key.method
             << " K=" << key.k << " rho=" << key.rho;
        if (!key.eve_mode.empty())
            what << " " << key.eve_mode;
        if (!std::isnan(key.gamma_e))
            what << " gammaE=" << key.gamma_e << "dB";
        what << ": " << (increasing ? "non-decreasing" : "non-increasing") << " in SNR";
        record(ok, what.str());
    }

    // true vs naive ordering at rho > 0, analytic rows only
    auto find_row = [&rows](const std::string& scenario, const std::string& metric,
                            const std::string& method, const std::string& eve_mode, double k,
                            double rho, double snr, double gamma_e) -> const ResultRow* {
        for (const ResultRow& r : rows)
            if (r.scenario == scenario && r.metric == metric && r.method == method &&
                r.eve_mode == eve_mode && r.k_factor == k && r.rho == rho &&
                r.snr_db == snr &&
                (cmp_double(r.gamma_e_db, gamma_e) == 0) && !std::isnan(r.value))
                return &r;
        return nullptr;
    };

    std::vector<double> snrs, ks, rhos, gammas;
    for (const ResultRow& r : rows) {
        snrs.push_back(r.snr_db);
        ks.push_back(r.k_factor);
        rhos.push_back(r.rho);
        gammas.push_back(r.gamma_e_db);
    }
    auto uniq = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end(), [](double a, double b) { return cmp_double(a, b) < 0; });
        v.erase(std::unique(v.begin(), v.end(),
                            [](double a, double b) { return cmp_double(a, b) == 0; }),
                v.end());
    };
    uniq(snrs);
    uniq(ks);
    uniq(rhos);
    uniq(gammas);

    const std::string scen = rows.empty() ? "" : rows.front().scenario;
    for (const std::string& metric : {std::string("asc"), std::string("opsc")}) {
        for (double k : ks)
            for (double rho : rhos) {
                if (!(rho > 0.0))
                    continue;
                for (double ge : gammas) {
                    int cells = 0, consistent = 0;
                    for (double snr : snrs) {
                        const ResultRow* t =
                            find_row(scen, metric, "quadrature", "true_snr", k, rho, snr, ge);
                        const ResultRow* n =
                            find_row(scen, metric, "quadrature", "naive", k, rho, snr, ge);
                        if (!t || !n)
                            continue;
                        ++cells;
                        const double slack = t->error_estimate + n->error_estimate + 1e-9;
                        bool ok;
                        if (metric == "asc")
                            ok = (scen == "S1") ? t->value > n->value - slack
                                                : t->value < n->value + slack;
                        else
                            ok = (scen == "S1") ? t->value < n->value + slack
                                                : t->value > n->value - slack;
                        if (ok)
                            ++consistent;
                    }
                    if (cells > 0) {
                        std::ostringstream what;
                        what << scen << " " << metric << " K=" << k << " rho=" << rho;
                        if (!std::isnan(ge))
                            what << " gammaE=" << ge << "dB";
                        what << ": true-vs-naive ordering at every SNR (" << consistent << "/"
                             << cells << ")";
                        record(consistent == cells, what.str());
                    }
                }
            }
    }

    // S1 crossover: correlated secrecy beats rho = 0 at some low SNR and
    // loses at the top of the sweep (true accounting, largest rho, K = 0)
    if (scen == "S1" && !rhos.empty() && snrs.size() >= 2) {
        const double rho_max = rhos.back();
        if (rho_max > 0.0) {
            for (double ge : gammas) {
                std::vector<double> ratio;
                for (double snr : snrs) {
                    const ResultRow* hi =
                        find_row(scen, "asc", "quadrature", "true_snr", 0.0, rho_max, snr, ge);
                    const ResultRow* base =
                        find_row(scen, "asc", "quadrature", "true_snr", 0.0, 0.0, snr, ge);
                    if (hi && base && base->value > 0.0)
                        ratio.push_back(hi->value / base->value);
                }
                if (ratio.size() >= 2) {
                    const bool low_benefit =
                        *std::max_element(ratio.begin(), ratio.end() - 1) > 1.0;
                    const bool high_penalty = ratio.back() < 1.0;
                    std::ostringstream what;
                    what << "S1 asc K=0 rho=" << rho_max
                         << ": normalized secrecy > 1 at low SNR and < 1 at "
                         << snrs.back() << " dB";
                    record(low_benefit && high_penalty, what.str());
                }
            }
        }
    }

    // secrecy degrades as the eavesdropper's nominal SNR grows
    if (gammas.size() >= 2 && !std::isnan(gammas.back())) {
        for (const std::string& metric : {std::string("asc"), std::string("opsc")}) {
            int cells = 0, consistent = 0;
            for (double k : ks)
                for (double rho : rhos)
                    for (const char* mode : {"true_snr", "naive"})
                        for (double snr : snrs) {
                            const ResultRow* lo = find_row(scen, metric, "quadrature", mode, k,
                                                           rho, snr, gammas.front());
                            const ResultRow* hi = find_row(scen, metric, "quadrature", mode, k,
                                                           rho, snr, gammas.back());
                            if (!lo || !hi)
                                continue;
                            ++cells;
                            const double slack =
                                lo->error_estimate + hi->error_estimate + 1e-9;
                            const bool ok = metric == "asc"
                                                ? hi->value < lo->value + slack
                                                : hi->value > lo->value - slack;
                            if (ok)
                                ++consistent;
                        }
            if (cells > 0)
                record(consistent == cells,
                       scen + " " + metric + ": monotone in eavesdropper SNR (" +
                           std::to_string(consistent) + "/" + std::to_string(cells) + ")");
        }
    }

    // S2 secrecy outage insensitive to correlation at the top of the sweep
    if (scen == "S2" && rhos.size() >= 2 && !snrs.empty()) {
        const double rho_max = rhos.back();
        for (double k : ks)
            for (double ge : gammas) {
                const ResultRow* base = find_row(scen, "opsc", "quadrature", "true_snr", k,
                                                 0.0, snrs.back(), ge);
                const ResultRow* corr = find_row(scen, "opsc", "quadrature", "true_snr", k,
                                                 rho_max, snrs.back(), ge);
                if (base && corr && base->value > 0.0) {
                    const double rel = std::abs(corr->value - base->value) / base->value;
                    std::ostringstream what;
                    what << "S2 opsc K=" << k;
                    if (!std::isnan(ge))
                        what << " gammaE=" << ge << "dB";
                    what << ": correlation shifts outage by " << rel * 100.0
                         << "% (< 10%) at " << snrs.back() << " dB";
                    record(rel < 0.10, what.str());
                }
            }
    }

    return report;
}

} // namespace wpcsec::runner
