// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "risemf/errors.hpp"
#include "risemf/gradcheck.hpp"
#include "risemf/harness.hpp"

using namespace risemf;

namespace {

ExperimentConfig tiny()
{
    ExperimentConfig config;
    config.k = 3;
    config.n = 8;
    config.m = 4;
    config.drops = 4;
    config.sigma2_dbm = {-100.0, -90.0};
    config.n_grid = {4, 8};
    config.m_grid = {4};
    config.threads = 2;
    return config;
}

} // namespace

TEST_CASE("strategy names round trip")
{
    for (const char* text : {"optimized", "zero", "random", "noris", "quantized:2", "quantized:8"}) {
        CHECK(Strategy::parse(text).name() == text);
    }
    CHECK(Strategy::parse("quantized:4") == Strategy::quantized(4));
    CHECK_THROWS_AS(Strategy::parse("quantized:1"), ConfigError);
    CHECK_THROWS_AS(Strategy::parse("greedy"), ConfigError);
}

TEST_CASE("config parsing")
{
    const auto config = parse_config(R"(
# overrides
k = 4
n=12
sigma2_dbm = -100, -95
strategies = optimized, quantized:2
drops = 7   # trailing comment
kappa = inf
)");
    CHECK(config.k == 4);
    CHECK(config.n == 12);
    CHECK(config.m == 32);
    CHECK(config.sigma2_dbm == std::vector<double>{-100.0, -95.0});
    CHECK(config.strategies == std::vector<Strategy>{Strategy::optimized(), Strategy::quantized(2)});
    CHECK(config.drops == 7);
    CHECK(std::isinf(config.kappa));

    CHECK_THROWS_AS(parse_config("bogus = 1"), ConfigError);
    CHECK_THROWS_AS(parse_config("k = four"), ConfigError);
    CHECK_THROWS_AS(parse_config("k 4"), ConfigError);
    CHECK_THROWS_AS(parse_config("k = 0"), ConfigError);
}

TEST_CASE("config text round trip")
{
    auto config = tiny();
    config.master_seed = 99;
    config.pathloss = PathLossModel::negative_intercept();
    const auto text = to_config_text(config);
    CHECK(to_config_text(parse_config(text)) == text);
    const auto back = parse_config(text);
    CHECK(back.master_seed == 99);
    CHECK(back.pathloss.los_intercept_db == config.pathloss.los_intercept_db);
    CHECK(back.n_grid == config.n_grid);
}

TEST_CASE("convergence CSV")
{
    std::vector<IterationRecord> one{{0, 1.5e-3, 1.5e-3, 0.0, 0.0, 0}};
    const auto rows = parse_convergence(emit_convergence(one));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].first == 0);
    CHECK(rows[0].second == 1.5e-3);

    const auto config = tiny();
    const SolverState state = run_convergence(config, 0, -95.0);
    const auto parsed = parse_convergence(emit_convergence(state.trace));
    REQUIRE(parsed.size() == state.trace.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].first == static_cast<int>(i));
        CHECK(parsed[i].second == state.trace[i].ei);
    }
}

TEST_CASE("format_double round trips")
{
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e7, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("sweep output is reproducible byte for byte")
{
    auto config = tiny();
    const auto a = run_sweep(config);
    config.threads = 1;
    const auto b = run_sweep(config);
    CHECK(records_csv(a.records) == records_csv(b.records));
    CHECK(a.records.size() == config.strategies.size() * config.sigma2_dbm.size() * config.drops);
}

TEST_CASE("aggregate means match a direct average")
{
    const auto config = tiny();
    const auto result = run_sweep(config);
    const auto rows = aggregate(result.records);
    CHECK(rows.size() == config.strategies.size() * config.sigma2_dbm.size());
    for (const auto& row : rows) {
        double ei = 0.0;
        int count = 0;
        for (const auto& r : result.records) {
            if (r.strategy == row.strategy && r.sigma2_dbm == row.sigma2_dbm) {
                ei += r.ei;
                ++count;
            }
        }
        CHECK(row.drops == count);
        CHECK(row.mean_ei == doctest::Approx(ei / count).epsilon(1e-14));
    }
}

TEST_CASE("elements sweep covers the size grid")
{
    const auto config = tiny();
    const auto result = run_elements(config);
    CHECK(result.records.size() ==
          config.strategies.size() * config.n_grid.size() * config.m_grid.size() * config.drops);
    for (const auto& r : result.records) {
        CHECK(r.sigma2_dbm == config.elements_sigma2_dbm);
    }
}

TEST_CASE("drops are independent of the noise level and nest by size")
{
    const auto config = tiny();
    const auto big = draw_drop(config, 2, 4, 8);
    const auto again = draw_drop(config, 2, 4, 8);
    CHECK(big.channels.h_r == again.channels.h_r);
    const auto other = draw_drop(config, 3, 4, 8);
    CHECK(big.channels.h_r != other.channels.h_r);
}
