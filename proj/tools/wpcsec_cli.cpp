// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner: parameter sweeps, figure presets, and consistency
// checks over produced result tables.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wpcsec/presets.hpp"
#include "wpcsec/runner.hpp"

namespace {

int default_threads() {
    if (const char* env = std::getenv("WPCSEC_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int run_config(wpcsec::config::ExperimentConfig cfg,
               const std::vector<std::string>& overrides, const std::string& out_path,
               long long samples, long long seed, int threads) {
    for (const std::string& ov : overrides)
        wpcsec::config::apply_override(cfg, ov);
    if (samples > 0)
        cfg.mc.n_samples = samples;
    if (seed >= 0)
        cfg.mc.seed = static_cast<std::uint64_t>(seed);
    if (!out_path.empty())
        cfg.output_path = out_path;
    cfg.validate();

    const auto outcome = wpcsec::runner::run_experiment(cfg, threads);
    wpcsec::runner::write_csv_file(cfg.output_path, outcome.rows);
    std::cout << "wrote " << outcome.rows.size() << " rows to " << cfg.output_path << "\n";
    if (!outcome.all_converged) {
        std::cerr << "warning: some cells did not converge (see rows with empty values)\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity, outage and secrecy metrics of wireless-powered links with "
                 "correlated energy and information channels"};
    app.require_subcommand(1);

    int threads = default_threads();
    long long samples = -1;
    long long seed = -1;
    app.add_option("--threads", threads, "Worker threads for sweep cells");
    app.add_option("--samples", samples, "Override Monte Carlo sample count");
    app.add_option("--seed", seed, "Override Monte Carlo seed");

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;

    CLI::App* run = app.add_subcommand("run", "Run an experiment from a config file");
    run->add_option("--config", config_path, "Config file path")->required();
    run->add_option("--override", overrides, "key=value override (repeatable)");
    run->add_option("--out", out_path, "Output CSV path (overrides config)");

    std::string preset_name;
    CLI::App* preset = app.add_subcommand("preset", "Run a figure preset");
    preset->add_option("name", preset_name, "Preset name (fig2..fig8)")->required();
    preset->add_option("--override", overrides, "key=value override (repeatable)");
    preset->add_option("--out", out_path, "Output CSV path");

    std::string csv_path;
    CLI::App* check = app.add_subcommand("check", "Run ordering assertions on a result CSV");
    check->add_option("csv", csv_path, "CSV file produced by run/preset")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return run_config(wpcsec::config::load_config_file(config_path), overrides,
                              out_path, samples, seed, threads);
        if (preset->parsed())
            return run_config(wpcsec::presets::figure_preset(preset_name), overrides,
                              out_path, samples, seed, threads);
        if (check->parsed()) {
            const auto rows = wpcsec::runner::load_csv_file(csv_path);
            const auto report = wpcsec::runner::check_rows(rows);
            for (const std::string& line : report.lines)
                std::cout << line << "\n";
            std::cout << report.checks_run - report.failures << "/" << report.checks_run
                      << " checks passed\n";
            return report.failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
