// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "risemf/config.hpp"
#include "risemf/optimizer.hpp"

namespace risemf {

struct ExperimentRecord {
    Strategy strategy;
    double sigma2_dbm = 0.0;
    int n = 0;
    int m = 0;
    int drop = 0;
    double ei = 0.0; // W/kg with capped powers
    double ei_uncapped = 0.0; // W/kg with the powers that meet every rate target
    double rate_satisfaction = 0.0;
    int iterations = 0;
    double wall_time_s = 0.0; // not part of records_csv, which stays byte-stable
};

struct SweepResult {
    std::vector<ExperimentRecord> records;
    int redraws = 0; // drops re-drawn after a rank-deficient channel
};

/// One drop: users and channels from seeds derived from (master_seed, drop).
struct DropScenario {
    std::vector<User> users;
    ChannelSet channels;
    int redraws = 0;
};

DropScenario draw_drop(const ExperimentConfig& config, int drop, int m, int n, int attempt = 0);

/// Strategy comparison over the sigma^2 grid at (K, N, M). All strategies and
/// noise levels of a drop share one channel realization.
SweepResult run_sweep(const ExperimentConfig& config);

/// Same comparison at elements_sigma2_dbm over n_grid x m_grid. Smaller arrays
/// use leading blocks of the largest realization of each drop.
SweepResult run_elements(const ExperimentConfig& config);

/// Optimized run of a single drop, trace included.
SolverState run_convergence(const ExperimentConfig& config, int drop, double sigma2_dbm);

struct AggregateRow {
    Strategy strategy;
    double sigma2_dbm = 0.0;
    int n = 0;
    int m = 0;
    int drops = 0;
    double mean_ei = 0.0;
    double mean_rate_satisfaction = 0.0;
    double mean_iterations = 0.0;
};

/// Means per (strategy, sigma^2, N, M), in first-appearance order of the records.
std::vector<AggregateRow> aggregate(const std::vector<ExperimentRecord>& records);

/// Columns: strategy,sigma2_dbm,n,m,drop,ei_w_per_kg,ei_uncapped_w_per_kg,rate_satisfaction,iterations
std::string records_csv(const std::vector<ExperimentRecord>& records);

/// Columns: strategy,sigma2_dbm,n,m,drops,mean_ei_w_per_kg,mean_rate_satisfaction,mean_iterations
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

/// Columns: strategy,sigma2_dbm,n,m,drop,wall_time_s
std::string timing_csv(const std::vector<ExperimentRecord>& records);

/// Columns: iteration,ei_w_per_kg
std::string emit_convergence(const std::vector<IterationRecord>& trace);
std::vector<std::pair<int, double>> parse_convergence(std::string_view csv);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

} // namespace risemf
