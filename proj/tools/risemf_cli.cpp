// SPDX-License-Identifier: Apache-2.0
//
// risemf: Monte Carlo driver for the RIS exposure minimizer.
//
//   risemf sweep     strategy comparison over the noise grid
//   risemf elements  comparison over the N x M grid
//   risemf converge  per-iteration EI of one optimized drop
//   risemf gradcheck finite-difference check of the derivatives

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "risemf/errors.hpp"
#include "risemf/gradcheck.hpp"
#include "risemf/harness.hpp"

namespace fs = std::filesystem;
using namespace risemf;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> drops;
    std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("-c,--config", opts.config_path, "key = value config file")->check(CLI::ExistingFile);
    cmd->add_option("-o,--output", opts.output_dir, "output directory (default: output_dir from config)");
    cmd->add_option("-s,--seed", opts.seed, "master seed");
    cmd->add_option("-d,--drops", opts.drops, "Monte Carlo drops")->check(CLI::PositiveNumber);
    cmd->add_option("-j,--threads", opts.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
}

ExperimentConfig resolve(const CommonOptions& opts)
{
    ExperimentConfig config = opts.config_path.empty() ? ExperimentConfig{} : load_config(opts.config_path);
    if (!opts.output_dir.empty()) {
        config.output_dir = opts.output_dir;
    }
    if (opts.seed) {
        config.master_seed = *opts.seed;
    }
    if (opts.drops) {
        config.drops = *opts.drops;
    }
    if (opts.threads) {
        config.threads = *opts.threads;
    }
    config.validate();
    return config;
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    std::cout << "wrote " << path.string() << '\n';
}

fs::path prepare_output(const ExperimentConfig& config)
{
    const fs::path dir = config.output_dir;
    fs::create_directories(dir);
    write_file(dir / "config.txt", to_config_text(config));
    return dir;
}

void write_sweep(const fs::path& dir, const SweepResult& result, double seconds)
{
    write_file(dir / "records.csv", records_csv(result.records));
    write_file(dir / "aggregate.csv", aggregate_csv(aggregate(result.records)));
    write_file(dir / "timings.csv", timing_csv(result.records));
    std::cout << result.records.size() << " records, " << result.redraws << " redraws, "
              << seconds << " s\n";
}

double elapsed(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"RIS-assisted uplink exposure minimization experiments"};
    app.require_subcommand(1);

    CommonOptions sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "EI and rate satisfaction per strategy over the noise grid");
    add_common(sweep, sweep_opts);

    CommonOptions elements_opts;
    auto* elements = app.add_subcommand("elements", "EI per strategy over the RIS element and antenna grid");
    add_common(elements, elements_opts);

    CommonOptions converge_opts;
    int converge_drop = 0;
    std::optional<double> converge_sigma2;
    auto* converge = app.add_subcommand("converge", "EI per iteration for one optimized drop");
    add_common(converge, converge_opts);
    converge->add_option("--drop", converge_drop, "drop index")->check(CLI::NonNegativeNumber);
    converge->add_option("--sigma2-dbm", converge_sigma2, "noise power in dBm (default: elements_sigma2_dbm)");

    GradcheckOptions gc;
    auto* gradcheck = app.add_subcommand("gradcheck", "compare analytic derivatives with finite differences");
    gradcheck->add_option("--instances", gc.instances, "random instances")->check(CLI::PositiveNumber);
    gradcheck->add_option("-s,--seed", gc.seed, "instance seed");
    gradcheck->add_option("--k", gc.k, "users")->check(CLI::PositiveNumber);
    gradcheck->add_option("--n", gc.n, "RIS elements")->check(CLI::PositiveNumber);
    gradcheck->add_option("--m", gc.m, "BS antennas")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto t0 = std::chrono::steady_clock::now();
        if (*sweep) {
            const auto config = resolve(sweep_opts);
            const auto dir = prepare_output(config);
            const auto result = run_sweep(config);
            write_sweep(dir, result, elapsed(t0));
        } else if (*elements) {
            const auto config = resolve(elements_opts);
            const auto dir = prepare_output(config);
            const auto result = run_elements(config);
            write_sweep(dir, result, elapsed(t0));
        } else if (*converge) {
            const auto config = resolve(converge_opts);
            const double sigma2 = converge_sigma2.value_or(config.elements_sigma2_dbm);
            const auto dir = prepare_output(config);
            const SolverState state = run_convergence(config, converge_drop, sigma2);
            write_file(dir / ("convergence_drop" + std::to_string(converge_drop) + ".csv"),
                       emit_convergence(state.trace));
            std::cout << state.iterations << " iterations (" << to_string(state.stop_reason)
                      << "), EI " << state.trace.front().ei << " -> " << state.ei << " W/kg\n";
        } else if (*gradcheck) {
            if (gc.n < 1 || gc.m < gc.k) {
                throw ConfigError("gradcheck: need M >= K");
            }
            const GradcheckReport report = run_gradcheck(gc);
            std::cout << report.summary();
            return report.passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
