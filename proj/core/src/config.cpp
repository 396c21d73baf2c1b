// SPDX-License-Identifier: Apache-2.0
#include "risemf/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "risemf/errors.hpp"
#include "risemf/harness.hpp"

namespace risemf {

Strategy Strategy::parse(std::string_view text)
{
    if (text == "optimized") {
        return optimized();
    }
    if (text == "zero") {
        return zero();
    }
    if (text == "random") {
        return random();
    }
    if (text == "noris") {
        return no_ris();
    }
    constexpr std::string_view prefix = "quantized:";
    if (text.starts_with(prefix)) {
        int levels = 0;
        const auto digits = text.substr(prefix.size());
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), levels);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || levels < 2) {
            throw ConfigError("strategy: bad quantization level count in '" + std::string(text) + "'");
        }
        return quantized(levels);
    }
    throw ConfigError("strategy: unknown strategy '" + std::string(text) + "'");
}

std::string Strategy::name() const
{
    switch (kind) {
    case Kind::Optimized:
        return "optimized";
    case Kind::Zero:
        return "zero";
    case Kind::Random:
        return "random";
    case Kind::NoRIS:
        return "noris";
    case Kind::Quantized:
        return "quantized:" + std::to_string(levels);
    }
    return "unknown";
}

void ExperimentConfig::validate() const
{
    if (k < 1 || n < k || m < k) {
        throw ConfigError("config: need K >= 1, N >= K and M >= K");
    }
    if (drops < 1) {
        throw ConfigError("config: drops must be >= 1");
    }
    if (sigma2_dbm.empty() || strategies.empty() || n_grid.empty() || m_grid.empty()) {
        throw ConfigError("config: grids and strategy list must be non-empty");
    }
    for (int v : n_grid) {
        if (v < k) {
            throw ConfigError("config: every n_grid entry must be >= K");
        }
    }
    for (int v : m_grid) {
        if (v < k) {
            throw ConfigError("config: every m_grid entry must be >= K");
        }
    }
    if (!(mix.data_probability >= 0.0 && mix.data_probability <= 1.0)) {
        throw ConfigError("config: data_probability must lie in [0, 1]");
    }
    if (!(kappa >= 0.0) || !(p_max > 0.0) || max_redraws < 0 || threads < 0) {
        throw ConfigError("config: kappa >= 0, p_max > 0, max_redraws >= 0, threads >= 0");
    }
    geometry.validate();
    mix.data.validate();
    mix.voice.validate();
    optimizer.validate();
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text)
{
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("config: key '" + std::string(key) + "' has bad value '" +
                          std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split_list(std::string_view text)
{
    std::vector<std::string_view> items;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (!item.empty()) {
            items.push_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return items;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text)
{
    std::vector<T> out;
    for (auto item : split_list(text)) {
        out.push_back(parse_number<T>(key, item));
    }
    return out;
}

std::string join_doubles(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? "," : "") + format_double(values[i]);
    }
    return out;
}

std::string join_ints(const std::vector<int>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? "," : "") + std::to_string(values[i]);
    }
    return out;
}

struct Field {
    std::string_view key;
    std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T>
Field number_field(std::string_view key, T ExperimentConfig::*member)
{
    return {key,
            [member](ExperimentConfig& c, std::string_view k, std::string_view v) {
                c.*member = parse_number<T>(k, v);
            },
            [member](const ExperimentConfig& c) {
                if constexpr (std::is_floating_point_v<T>) {
                    return format_double(c.*member);
                } else {
                    return std::to_string(c.*member);
                }
            }};
}

template <typename Access>
Field double_field(std::string_view key, Access access)
{
    return {key,
            [access](ExperimentConfig& c, std::string_view k, std::string_view v) {
                access(c) = parse_number<double>(k, v);
            },
            [access](const ExperimentConfig& c) { return format_double(access(c)); }};
}

#define RISEMF_DOUBLE(key, expr) double_field(key, [](auto& c) -> auto& { return expr; })

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = {
        number_field("k", &ExperimentConfig::k),
        number_field("n", &ExperimentConfig::n),
        number_field("m", &ExperimentConfig::m),
        {"sigma2_dbm",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.sigma2_dbm = parse_list<double>(k, v);
         },
         [](const ExperimentConfig& c) { return join_doubles(c.sigma2_dbm); }},
        {"strategies",
         [](ExperimentConfig& c, std::string_view, std::string_view v) {
             c.strategies.clear();
             for (auto item : split_list(v)) {
                 c.strategies.push_back(Strategy::parse(item));
             }
         },
         [](const ExperimentConfig& c) {
             std::string out;
             for (std::size_t i = 0; i < c.strategies.size(); ++i) {
                 out += (i ? "," : "") + c.strategies[i].name();
             }
             return out;
         }},
        number_field("drops", &ExperimentConfig::drops),
        number_field("master_seed", &ExperimentConfig::master_seed),
        number_field("max_redraws", &ExperimentConfig::max_redraws),
        RISEMF_DOUBLE("bs_x", c.geometry.bs_position.x),
        RISEMF_DOUBLE("bs_y", c.geometry.bs_position.y),
        RISEMF_DOUBLE("bs_z", c.geometry.bs_position.z),
        RISEMF_DOUBLE("ris_x", c.geometry.ris_position.x),
        RISEMF_DOUBLE("ris_y", c.geometry.ris_position.y),
        RISEMF_DOUBLE("ris_z", c.geometry.ris_position.z),
        RISEMF_DOUBLE("user_height", c.geometry.user_height),
        RISEMF_DOUBLE("r_min", c.geometry.r_min),
        RISEMF_DOUBLE("r_max", c.geometry.r_max),
        RISEMF_DOUBLE("data_probability", c.mix.data_probability),
        RISEMF_DOUBLE("data_r_th", c.mix.data.r_th),
        RISEMF_DOUBLE("data_bandwidth_hz", c.mix.data.bandwidth_hz),
        RISEMF_DOUBLE("data_sar_ref", c.mix.data.sar_ref),
        RISEMF_DOUBLE("voice_r_th", c.mix.voice.r_th),
        RISEMF_DOUBLE("voice_bandwidth_hz", c.mix.voice.bandwidth_hz),
        RISEMF_DOUBLE("voice_sar_ref", c.mix.voice.sar_ref),
        number_field("kappa", &ExperimentConfig::kappa),
        number_field("element_spacing", &ExperimentConfig::element_spacing),
        RISEMF_DOUBLE("los_intercept_db", c.pathloss.los_intercept_db),
        RISEMF_DOUBLE("los_slope_db", c.pathloss.los_slope_db),
        RISEMF_DOUBLE("nlos_intercept_db", c.pathloss.nlos_intercept_db),
        RISEMF_DOUBLE("nlos_slope_db", c.pathloss.nlos_slope_db),
        number_field("p_max", &ExperimentConfig::p_max),
        RISEMF_DOUBLE("gamma", c.optimizer.gamma),
        {"max_iters",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.optimizer.max_iters = parse_number<int>(k, v);
         },
         [](const ExperimentConfig& c) { return std::to_string(c.optimizer.max_iters); }},
        RISEMF_DOUBLE("ei_rel_tol", c.optimizer.ei_rel_tol),
        {"stall_window",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.optimizer.stall_window = parse_number<int>(k, v);
         },
         [](const ExperimentConfig& c) { return std::to_string(c.optimizer.stall_window); }},
        {"n_grid",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.n_grid = parse_list<int>(k, v);
         },
         [](const ExperimentConfig& c) { return join_ints(c.n_grid); }},
        {"m_grid",
         [](ExperimentConfig& c, std::string_view k, std::string_view v) {
             c.m_grid = parse_list<int>(k, v);
         },
         [](const ExperimentConfig& c) { return join_ints(c.m_grid); }},
        number_field("elements_sigma2_dbm", &ExperimentConfig::elements_sigma2_dbm),
        number_field("threads", &ExperimentConfig::threads),
        {"output_dir",
         [](ExperimentConfig& c, std::string_view, std::string_view v) { c.output_dir = v; },
         [](const ExperimentConfig& c) { return c.output_dir; }},
    };
    return table;
}

#undef RISEMF_DOUBLE

} // namespace

ExperimentConfig parse_config(std::string_view text)
{
    ExperimentConfig config;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        bool known = false;
        for (const auto& field : fields()) {
            if (field.key == key) {
                field.set(config, key, value);
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                              std::string(key) + "'");
        }
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string to_config_text(const ExperimentConfig& config)
{
    std::string out;
    for (const auto& field : fields()) {
        out += std::string(field.key) + " = " + field.get(config) + "\n";
    }
    return out;
}

} // namespace risemf
