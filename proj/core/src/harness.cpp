// SPDX-License-Identifier: Apache-2.0
#include "risemf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <map>
#include <optional>
#include <thread>
#include <tuple>

#include "risemf/errors.hpp"

namespace risemf {

namespace {

struct ArraySize {
    int n;
    int m;
};

// Stream tags for derive_seed.
constexpr std::uint64_t kUserStream = 0;
constexpr std::uint64_t kChannelStream = 1;
constexpr std::uint64_t kPhaseStream = 2;

CappedOutcome evaluate_phases(const UplinkProblem& problem, const PhaseVector& theta)
{
    return evaluate_capped(problem, make_link(problem, theta));
}

struct DropOutcome {
    std::vector<ExperimentRecord> records; // (size, sigma2, strategy) order
    int redraws = 0;
};

bool needs_optimizer(const ExperimentConfig& config)
{
    return std::any_of(config.strategies.begin(), config.strategies.end(), [](const Strategy& s) {
        return s.kind == Strategy::Kind::Optimized || s.kind == Strategy::Kind::Quantized;
    });
}

std::vector<ExperimentRecord> evaluate_drop(const ExperimentConfig& config, const DropScenario& scenario,
                                            int drop, int attempt, std::span<const ArraySize> sizes,
                                            std::span<const double> sigma2_grid)
{
    using Clock = std::chrono::steady_clock;
    auto seconds_since = [](Clock::time_point t0) {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    };

    std::vector<ExperimentRecord> records;
    const bool optimize = needs_optimizer(config);
    for (const auto& size : sizes) {
        const bool full = size.n == scenario.channels.elements() && size.m == scenario.channels.antennas();
        const ChannelSet channels = full ? scenario.channels : scenario.channels.leading_block(size.m, size.n);

        Rng phase_rng(derive_seed(config.master_seed, {static_cast<std::uint64_t>(drop),
                                                       static_cast<std::uint64_t>(attempt),
                                                       kPhaseStream, static_cast<std::uint64_t>(size.n)}));
        const PhaseProfile random_phases = baseline_phases(BaselineKind::Random, size.n, phase_rng);

        for (const double sigma2_dbm : sigma2_grid) {
            const double sigma2 = dbm_to_watts(sigma2_dbm);
            const UplinkProblem problem = make_problem(channels, scenario.users, sigma2, config.p_max);
            std::optional<UplinkProblem> no_ris;

            std::optional<SolverState> solved;
            double solve_time = 0.0;
            if (optimize) {
                const auto t0 = Clock::now();
                solved = dual_gradient_descent(problem, config.optimizer);
                solve_time = seconds_since(t0);
            }

            for (const auto& strategy : config.strategies) {
                ExperimentRecord rec;
                rec.strategy = strategy;
                rec.sigma2_dbm = sigma2_dbm;
                rec.n = size.n;
                rec.m = size.m;
                rec.drop = drop;
                const auto t0 = Clock::now();
                CappedOutcome outcome;
                switch (strategy.kind) {
                case Strategy::Kind::Optimized:
                    rec.ei = solved->ei;
                    rec.ei_uncapped = solved->trace.back().ei_uncapped;
                    rec.rate_satisfaction = solved->rate_satisfaction;
                    rec.iterations = solved->iterations;
                    rec.wall_time_s = solve_time;
                    records.push_back(rec);
                    continue;
                case Strategy::Kind::Quantized:
                    outcome = evaluate_phases(problem, quantize_phases(solved->theta, strategy.levels));
                    rec.iterations = solved->iterations;
                    break;
                case Strategy::Kind::Zero:
                    outcome = evaluate_phases(problem, PhaseVector::Zero(size.n));
                    break;
                case Strategy::Kind::Random:
                    outcome = evaluate_phases(problem, random_phases.theta);
                    break;
                case Strategy::Kind::NoRIS:
                    if (!no_ris) {
                        no_ris = problem;
                        no_ris->channels = problem.channels.without_ris();
                    }
                    outcome = evaluate_phases(*no_ris, PhaseVector::Zero(size.n));
                    break;
                }
                rec.ei = outcome.ei;
                rec.ei_uncapped = outcome.ei_uncapped;
                rec.rate_satisfaction = outcome.rate_satisfaction;
                rec.wall_time_s = seconds_since(t0);
                records.push_back(rec);
            }
        }
    }
    return records;
}

DropOutcome run_drop(const ExperimentConfig& config, int drop, std::span<const ArraySize> sizes,
                     std::span<const double> sigma2_grid)
{
    int n_max = 0;
    int m_max = 0;
    for (const auto& s : sizes) {
        n_max = std::max(n_max, s.n);
        m_max = std::max(m_max, s.m);
    }
    for (int attempt = 0; attempt <= config.max_redraws; ++attempt) {
        try {
            const DropScenario scenario = draw_drop(config, drop, m_max, n_max, attempt);
            return {evaluate_drop(config, scenario, drop, attempt, sizes, sigma2_grid), attempt};
        } catch (const RankDeficient&) {
        } catch (const Singular&) {
        }
    }
    throw Error("drop " + std::to_string(drop) + ": channel still degenerate after " +
                std::to_string(config.max_redraws) + " redraws");
}

SweepResult run_grid(const ExperimentConfig& config, std::span<const ArraySize> sizes,
                     std::span<const double> sigma2_grid)
{
    config.validate();
    const auto drops = static_cast<std::size_t>(config.drops);
    std::vector<DropOutcome> outcomes(drops);
    std::vector<std::exception_ptr> errors(drops);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t d = next++; d < drops; d = next++) {
            try {
                outcomes[d] = run_drop(config, static_cast<int>(d), sizes, sigma2_grid);
            } catch (...) {
                errors[d] = std::current_exception();
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto workers = static_cast<std::size_t>(
        std::min<std::size_t>(config.threads > 0 ? static_cast<std::size_t>(config.threads) : hw, drops));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    // Records come out of each drop in (size, sigma2, strategy) order; emit them
    // grouped by (strategy, size, sigma2) with drops innermost.
    SweepResult result;
    const std::size_t n_strategies = config.strategies.size();
    const std::size_t n_sigma = sigma2_grid.size();
    for (std::size_t s = 0; s < n_strategies; ++s) {
        for (std::size_t z = 0; z < sizes.size(); ++z) {
            for (std::size_t g = 0; g < n_sigma; ++g) {
                for (std::size_t d = 0; d < drops; ++d) {
                    result.records.push_back(outcomes[d].records[(z * n_sigma + g) * n_strategies + s]);
                }
            }
        }
    }
    for (const auto& o : outcomes) {
        result.redraws += o.redraws;
    }
    return result;
}

} // namespace

DropScenario draw_drop(const ExperimentConfig& config, int drop, int m, int n, int attempt)
{
    const auto d = static_cast<std::uint64_t>(drop);
    const auto a = static_cast<std::uint64_t>(attempt);
    DropScenario scenario;
    Rng user_rng(derive_seed(config.master_seed, {d, a, kUserStream}));
    scenario.users = draw_users(config.geometry, config.mix, config.k, user_rng);

    ChannelParams params;
    params.rician_kappa = config.kappa;
    params.seed = derive_seed(config.master_seed, {d, a, kChannelStream});
    params.element_spacing = config.element_spacing;
    params.pathloss = config.pathloss;
    scenario.channels = synthesize_channels(config.geometry, scenario.users, params, m, n);
    scenario.redraws = attempt;
    return scenario;
}

SweepResult run_sweep(const ExperimentConfig& config)
{
    const ArraySize size{config.n, config.m};
    return run_grid(config, std::span(&size, 1), config.sigma2_dbm);
}

SweepResult run_elements(const ExperimentConfig& config)
{
    std::vector<ArraySize> sizes;
    for (int m : config.m_grid) {
        for (int n : config.n_grid) {
            sizes.push_back({n, m});
        }
    }
    const double sigma2 = config.elements_sigma2_dbm;
    return run_grid(config, sizes, std::span(&sigma2, 1));
}

SolverState run_convergence(const ExperimentConfig& config, int drop, double sigma2_dbm)
{
    config.validate();
    for (int attempt = 0; attempt <= config.max_redraws; ++attempt) {
        try {
            const DropScenario scenario = draw_drop(config, drop, config.m, config.n, attempt);
            const UplinkProblem problem =
                make_problem(scenario.channels, scenario.users, dbm_to_watts(sigma2_dbm), config.p_max);
            return dual_gradient_descent(problem, config.optimizer);
        } catch (const RankDeficient&) {
        } catch (const Singular&) {
        }
    }
    throw Error("drop " + std::to_string(drop) + ": channel still degenerate after redraws");
}

std::vector<AggregateRow> aggregate(const std::vector<ExperimentRecord>& records)
{
    using Key = std::tuple<std::string, double, int, int>;
    std::map<Key, std::size_t> index;
    std::vector<AggregateRow> rows;
    for (const auto& r : records) {
        const Key key{r.strategy.name(), r.sigma2_dbm, r.n, r.m};
        auto [it, inserted] = index.try_emplace(key, rows.size());
        if (inserted) {
            rows.push_back({r.strategy, r.sigma2_dbm, r.n, r.m, 0, 0.0, 0.0, 0.0});
        }
        auto& row = rows[it->second];
        ++row.drops;
        row.mean_ei += r.ei;
        row.mean_rate_satisfaction += r.rate_satisfaction;
        row.mean_iterations += r.iterations;
    }
    for (auto& row : rows) {
        row.mean_ei /= row.drops;
        row.mean_rate_satisfaction /= row.drops;
        row.mean_iterations /= row.drops;
    }
    return rows;
}

std::string format_double(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(std::begin(buf), std::end(buf), value);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string records_csv(const std::vector<ExperimentRecord>& records)
{
    std::string out =
        "strategy,sigma2_dbm,n,m,drop,ei_w_per_kg,ei_uncapped_w_per_kg,rate_satisfaction,iterations\n";
    for (const auto& r : records) {
        out += r.strategy.name() + ',' + format_double(r.sigma2_dbm) + ',' + std::to_string(r.n) + ',' +
               std::to_string(r.m) + ',' + std::to_string(r.drop) + ',' + format_double(r.ei) + ',' +
               format_double(r.ei_uncapped) + ',' +
               format_double(r.rate_satisfaction) + ',' + std::to_string(r.iterations) + '\n';
    }
    return out;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows)
{
    std::string out =
        "strategy,sigma2_dbm,n,m,drops,mean_ei_w_per_kg,mean_rate_satisfaction,mean_iterations\n";
    for (const auto& r : rows) {
        out += r.strategy.name() + ',' + format_double(r.sigma2_dbm) + ',' + std::to_string(r.n) + ',' +
               std::to_string(r.m) + ',' + std::to_string(r.drops) + ',' + format_double(r.mean_ei) + ',' +
               format_double(r.mean_rate_satisfaction) + ',' + format_double(r.mean_iterations) + '\n';
    }
    return out;
}

std::string timing_csv(const std::vector<ExperimentRecord>& records)
{
    std::string out = "strategy,sigma2_dbm,n,m,drop,wall_time_s\n";
    for (const auto& r : records) {
        out += r.strategy.name() + ',' + format_double(r.sigma2_dbm) + ',' + std::to_string(r.n) + ',' +
               std::to_string(r.m) + ',' + std::to_string(r.drop) + ',' + format_double(r.wall_time_s) + '\n';
    }
    return out;
}

std::string emit_convergence(const std::vector<IterationRecord>& trace)
{
    std::string out = "iteration,ei_w_per_kg\n";
    for (const auto& rec : trace) {
        out += std::to_string(rec.iteration) + ',' + format_double(rec.ei) + '\n';
    }
    return out;
}

std::vector<std::pair<int, double>> parse_convergence(std::string_view csv)
{
    std::vector<std::pair<int, double>> rows;
    bool header = true;
    while (!csv.empty()) {
        const auto eol = csv.find('\n');
        const auto line = csv.substr(0, eol);
        csv = eol == std::string_view::npos ? std::string_view{} : csv.substr(eol + 1);
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw ConfigError("convergence csv: missing column separator");
        }
        int iteration = 0;
        double ei = 0.0;
        const auto a = std::from_chars(line.data(), line.data() + comma, iteration);
        const auto b = std::from_chars(line.data() + comma + 1, line.data() + line.size(), ei);
        if (a.ec != std::errc{} || b.ec != std::errc{}) {
            throw ConfigError("convergence csv: bad row '" + std::string(line) + "'");
        }
        rows.emplace_back(iteration, ei);
    }
    return rows;
}

} // namespace risemf
