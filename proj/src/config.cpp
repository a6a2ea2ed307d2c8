// SPDX-License-Identifier: Apache-2.0
#include "wpcsec/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wpcsec::config {

using channel::EveMode;
using channel::SnrAxis;
using channel::Topology;

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config field '" + key + "': cannot parse number '" + s + "'");
    }
}

long long parse_int(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config field '" + key + "': cannot parse integer '" + s + "'");
    }
}

std::vector<double> parse_double_list(const std::string& key, const std::string& s) {
    std::vector<double> out;
    for (const std::string& item : split_list(s))
        out.push_back(parse_double(key, item));
    return out;
}

Topology parse_topology(const std::string& s) {
    if (s == "P2P") return Topology::P2P;
    if (s == "S1") return Topology::S1;
    if (s == "S2") return Topology::S2;
    throw std::invalid_argument("config field 'scenario.topology': expected P2P, S1 or S2, got '" +
                                s + "'");
}

EveMode parse_eve_mode(const std::string& s) {
    if (s == "true_snr") return EveMode::TrueSnr;
    if (s == "naive") return EveMode::Naive;
    throw std::invalid_argument("config field 'grid.eve_mode': expected true_snr or naive, got '" +
                                s + "'");
}

void assign(ExperimentConfig& cfg, const std::string& key, const std::string& value,
            bool& saw_rho, bool& saw_p) {
    if (key == "schema_version") {
        cfg.schema_version = static_cast<int>(parse_int(key, value));
    } else if (key == "scenario.topology") {
        cfg.topology = parse_topology(value);
    } else if (key == "scenario.independent_K") {
        cfg.independent_k = parse_double(key, value);
    } else if (key == "scenario.snr_axis") {
        if (value == "achieved")
            cfg.snr_axis = SnrAxis::Achieved;
        else if (value == "nominal")
            cfg.snr_axis = SnrAxis::Nominal;
        else
            throw std::invalid_argument(
                "config field 'scenario.snr_axis': expected achieved or nominal");
    } else if (key == "grid.K") {
        cfg.k_values = parse_double_list(key, value);
    } else if (key == "grid.rho") {
        saw_rho = true;
        cfg.rho_values = parse_double_list(key, value);
    } else if (key == "grid.p") {
        saw_p = true;
        cfg.rho_values.clear();
        for (double p : parse_double_list(key, value)) {
            if (!(p >= 0.0 && p < 1.0))
                throw std::invalid_argument("config field 'grid.p': values must be in [0, 1)");
            cfg.rho_values.push_back(std::sqrt(p));
        }
    } else if (key == "grid.gamma_e_db") {
        cfg.gamma_e_db_values = parse_double_list(key, value);
    } else if (key == "grid.eve_mode") {
        cfg.eve_modes.clear();
        for (const std::string& m : split_list(value))
            cfg.eve_modes.push_back(parse_eve_mode(m));
    } else if (key == "sweep.gamma_b_db") {
        cfg.sweep_db = parse_double_list(key, value);
    } else if (key == "metrics") {
        cfg.metrics = split_list(value);
    } else if (key == "methods") {
        cfg.methods = split_list(value);
    } else if (key == "threshold.r_th") {
        cfg.r_th = parse_double(key, value);
    } else if (key == "mc.samples") {
        cfg.mc.n_samples = parse_int(key, value);
    } else if (key == "mc.seed") {
        cfg.mc.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "mc.streams") {
        cfg.mc.n_streams = static_cast<int>(parse_int(key, value));
    } else if (key == "quad.rel_tol") {
        cfg.quad.rel_tol = parse_double(key, value);
    } else if (key == "quad.abs_tol") {
        cfg.quad.abs_tol = parse_double(key, value);
    } else if (key == "quad.max_subdivisions") {
        cfg.quad.max_subdivisions = static_cast<int>(parse_int(key, value));
    } else if (key == "quad.tail_mass_bound") {
        cfg.quad.tail_mass_bound = parse_double(key, value);
    } else if (key == "series.n_terms") {
        cfg.series.n_terms = static_cast<int>(parse_int(key, value));
    } else if (key == "output") {
        cfg.output_path = value;
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

} // namespace

void ExperimentConfig::validate() const {
    if (schema_version != kSchemaVersion)
        throw std::invalid_argument("config field 'schema_version': unsupported version " +
                                    std::to_string(schema_version));
    if (sweep_db.empty())
        throw std::invalid_argument("config field 'sweep.gamma_b_db' (sweep): must be non-empty");
    if (metrics.empty())
        throw std::invalid_argument("config field 'metrics': must name at least one metric");
    if (methods.empty())
        throw std::invalid_argument("config field 'methods': must name at least one method");
    if (k_values.empty())
        throw std::invalid_argument("config field 'grid.K': must be non-empty");
    if (rho_values.empty())
        throw std::invalid_argument("config field 'grid.rho': must be non-empty");
    for (double k : k_values)
        if (!(k >= 0.0) || !std::isfinite(k))
            throw std::invalid_argument("config field 'grid.K': values must be finite and >= 0");
    for (double r : rho_values)
        if (!(r >= 0.0 && r < 1.0))
            throw std::invalid_argument("config field 'grid.rho': values must be in [0, 1)");
    if (!(independent_k >= 0.0) || !std::isfinite(independent_k))
        throw std::invalid_argument("config field 'scenario.independent_K': must be >= 0");
    if (topology != Topology::P2P && gamma_e_db_values.empty())
        throw std::invalid_argument("config field 'grid.gamma_e_db': required for S1/S2");
    if (eve_modes.empty())
        throw std::invalid_argument("config field 'grid.eve_mode': must be non-empty");

    const bool secrecy = std::any_of(metrics.begin(), metrics.end(), [](const std::string& m) {
        return m == "asc" || m == "opsc";
    });
    if (secrecy && topology == Topology::P2P)
        throw std::invalid_argument("config field 'metrics': asc/opsc need topology S1 or S2");

    for (const std::string& m : metrics)
        if (m != "capacity" && m != "outage" && m != "asc" && m != "opsc")
            throw std::invalid_argument("config field 'metrics': unknown metric '" + m + "'");
    for (const std::string& m : methods) {
        if (m != "quadrature" && m != "closed_form" && m != "monte_carlo" &&
            m != "asymptotic" && m != "asymptotic_t")
            throw std::invalid_argument("config field 'methods': unknown method '" + m + "'");
    }
    if (!(r_th > 0.0))
        throw std::invalid_argument("config field 'threshold.r_th': must be > 0");
    mc.validate();
    quad.validate();
    series.validate();
    if (output_path.empty())
        throw std::invalid_argument("config field 'output': must be non-empty");
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    bool saw_rho = false, saw_p = false;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        assign(cfg, key, value, saw_rho, saw_p);
    }
    if (saw_rho && saw_p)
        throw std::invalid_argument("config fields 'grid.rho' and 'grid.p' are exclusive");
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_override(ExperimentConfig& cfg, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override must be key=value, got '" + key_value + "'");
    bool saw_rho = false, saw_p = false;
    assign(cfg, trim(key_value.substr(0, eq)), trim(key_value.substr(eq + 1)), saw_rho, saw_p);
}

std::string topology_name(Topology t) {
    switch (t) {
    case Topology::P2P: return "P2P";
    case Topology::S1: return "S1";
    case Topology::S2: return "S2";
    }
    return "?";
}

std::string eve_mode_name(EveMode m) {
    return m == EveMode::TrueSnr ? "true_snr" : "naive";
}

} // namespace wpcsec::config
