// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "risemf/optimizer.hpp"
#include "risemf/scenario.hpp"

namespace risemf {

struct Strategy {
    enum class Kind { Optimized, Zero, Random, NoRIS, Quantized };

    Kind kind = Kind::Optimized;
    int levels = 0; // Quantized only

    static Strategy optimized() { return {Kind::Optimized, 0}; }
    static Strategy zero() { return {Kind::Zero, 0}; }
    static Strategy random() { return {Kind::Random, 0}; }
    static Strategy no_ris() { return {Kind::NoRIS, 0}; }
    static Strategy quantized(int levels) { return {Kind::Quantized, levels}; }

    /// "optimized", "zero", "random", "noris", "quantized:<L>".
    static Strategy parse(std::string_view text);
    std::string name() const;

    friend bool operator==(const Strategy&, const Strategy&) = default;
};

/// Monte Carlo experiment description. Every field has a default matching the
/// reference scenario; a config file only needs to list overrides.
struct ExperimentConfig {
    int k = 16;
    int n = 128;
    int m = 32;
    std::vector<double> sigma2_dbm{-100.0, -97.5, -95.0, -92.5, -90.0};
    std::vector<Strategy> strategies{Strategy::optimized(),    Strategy::zero(),
                                     Strategy::random(),       Strategy::no_ris(),
                                     Strategy::quantized(2),   Strategy::quantized(4)};
    int drops = 100;
    std::uint64_t master_seed = 1;
    int max_redraws = 10;

    Geometry geometry{};
    UserMix mix{};
    double kappa = 10.0;
    double element_spacing = 0.5;
    PathLossModel pathloss{};
    double p_max = 0.2;
    OptimizerConfig optimizer{};

    // `elements` subcommand grid
    std::vector<int> n_grid{32, 64, 96, 128};
    std::vector<int> m_grid{16, 32, 64};
    double elements_sigma2_dbm = -95.0;

    int threads = 0; // 0: std::thread::hardware_concurrency()
    std::string output_dir = "out";

    void validate() const;
};

/// Flat `key = value` document, `#` starts a comment. Unknown keys are errors.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config; lists every key.
std::string to_config_text(const ExperimentConfig& config);

} // namespace risemf
