#include "poolgame/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace poolgame {

namespace {

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

double parse_number(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(v))
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    if (v < 0.0 || v != std::floor(v))
        throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
    return static_cast<std::size_t>(v);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(key, trim(item)));
    if (out.empty()) throw ConfigError(key + ": expected a comma-separated list of numbers");
    return out;
}

Engine parse_engine(const std::string& key, const std::string& value) {
    if (value == "ode") return Engine::Ode;
    if (value == "agents") return Engine::Agents;
    if (value == "both") return Engine::Both;
    throw ConfigError(key + ": expected ode, agents or both, got '" + value + "'");
}

kernels::Impl parse_kernel(const std::string& key, const std::string& value) {
    if (value == "auto") return kernels::Impl::Auto;
    if (value == "scalar") return kernels::Impl::Scalar;
    if (value == "avx2") return kernels::Impl::Avx2;
    throw ConfigError(key + ": expected auto, scalar or avx2, got '" + value + "'");
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "scenario") { cfg.scenario = value; return; }
    if (key == "engine") { cfg.engine = parse_engine(key, value); return; }
    if (key == "seed") { cfg.seed = parse_u64(key, value); return; }
    if (key == "out") { cfg.out_dir = value; return; }
    if (key == "initial") { cfg.initial = value; return; }

    if (key == "params.delay_coeff") { cfg.params.delay_coeff = parse_number(key, value); return; }
    if (key == "params.mean_block_interval") {
        cfg.params.mean_block_interval = parse_number(key, value);
        return;
    }
    if (key == "params.coinbase_reward") {
        cfg.params.coinbase_reward = parse_number(key, value);
        return;
    }
    if (key == "params.fee_rate") { cfg.params.fee_rate = parse_number(key, value); return; }
    if (key == "params.power_price") { cfg.params.power_price = parse_number(key, value); return; }
    if (key == "params.population") {
        cfg.params.population = static_cast<std::int64_t>(parse_count(key, value));
        return;
    }

    if (key == "pools.count") {
        const std::size_t n = parse_count(key, value);
        if (n < 2) throw ConfigError("pools.count: at least 2 pools are required");
        cfg.strategies.assign(n, PoolStrategy{});
        return;
    }
    if (key.rfind("pools.", 0) == 0) {
        const auto rest = key.substr(6);
        const auto dot = rest.find('.');
        if (dot == std::string::npos) throw ConfigError("unknown config key: " + key);
        const std::size_t index = parse_count(key, rest.substr(0, dot));
        const std::string field = rest.substr(dot + 1);
        if (index < 1 || index > cfg.strategies.size())
            throw ConfigError(key + ": pool index out of range (set pools.count first)");
        if (field == "hash_rate") cfg.strategies[index - 1].hash_rate = parse_number(key, value);
        else if (field == "block_size")
            cfg.strategies[index - 1].block_size = parse_number(key, value);
        else throw ConfigError("unknown config key: " + key);
        return;
    }

    if (key == "ode.step") { cfg.ode.step = parse_number(key, value); return; }
    if (key == "ode.max_time") { cfg.ode.max_time = parse_number(key, value); return; }
    if (key == "ode.convergence_tol") {
        cfg.ode.convergence_tol = parse_number(key, value);
        return;
    }
    if (key == "ode.record_every") { cfg.ode.record_every = parse_count(key, value); return; }

    if (key == "agents.max_rounds") { cfg.agents.max_rounds = parse_count(key, value); return; }
    if (key == "agents.rate_scale") { cfg.agents.rate_scale = parse_number(key, value); return; }
    if (key == "agents.convergence_window") {
        cfg.agents.convergence_window = parse_count(key, value);
        return;
    }
    if (key == "agents.convergence_tol") {
        cfg.agents.convergence_tol = parse_number(key, value);
        return;
    }
    if (key == "agents.kernel") { cfg.agents.kernel = parse_kernel(key, value); return; }

    if (key == "sweep.parameter") {
        if (!cfg.sweep) cfg.sweep.emplace();
        cfg.sweep->parameter = value;
        return;
    }
    if (key == "sweep.values") {
        if (!cfg.sweep) cfg.sweep.emplace();
        cfg.sweep->values = parse_list(key, value);
        return;
    }

    throw ConfigError("unknown config key: " + key);
}

void check_config(const ExperimentConfig& cfg) {
    if (cfg.strategies.size() < 2)
        throw ConfigError("pools.count: at least 2 pools are required");
    for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
        const auto& s = cfg.strategies[i];
        const std::string prefix = "pools." + std::to_string(i + 1) + ".";
        if (!(s.hash_rate > 0.0) || !std::isfinite(s.hash_rate))
            throw ConfigError(prefix + "hash_rate: must be positive");
        if (!(s.block_size >= 0.0) || !std::isfinite(s.block_size))
            throw ConfigError(prefix + "block_size: must be non-negative");
    }
    const auto& p = cfg.params;
    if (!(p.delay_coeff >= 0.0)) throw ConfigError("params.delay_coeff: must be non-negative");
    if (!(p.mean_block_interval > 0.0))
        throw ConfigError("params.mean_block_interval: must be positive");
    if (!(p.coinbase_reward >= 0.0))
        throw ConfigError("params.coinbase_reward: must be non-negative");
    if (!(p.fee_rate >= 0.0)) throw ConfigError("params.fee_rate: must be non-negative");
    if (!(p.power_price >= 0.0)) throw ConfigError("params.power_price: must be non-negative");
    if (p.population < 1) throw ConfigError("params.population: must be at least 1");

    if (!(cfg.ode.step > 0.0)) throw ConfigError("ode.step: must be positive");
    if (!(cfg.ode.max_time > 0.0)) throw ConfigError("ode.max_time: must be positive");
    if (!(cfg.ode.convergence_tol > 0.0))
        throw ConfigError("ode.convergence_tol: must be positive");
    if (cfg.ode.record_every == 0) throw ConfigError("ode.record_every: must be at least 1");
    if (cfg.agents.max_rounds == 0) throw ConfigError("agents.max_rounds: must be at least 1");
    if (!(cfg.agents.rate_scale > 0.0)) throw ConfigError("agents.rate_scale: must be positive");
    if (!(cfg.agents.convergence_tol > 0.0))
        throw ConfigError("agents.convergence_tol: must be positive");

    if (cfg.initial != "uniform" && cfg.initial != "random") {
        std::vector<double> shares;
        try {
            shares = parse_list("initial", cfg.initial);
        } catch (const ConfigError&) {
            throw ConfigError("initial: expected 'uniform', 'random' or a list of shares, got '" +
                              cfg.initial + "'");
        }
        if (shares.size() != cfg.strategies.size())
            throw ConfigError("initial: expected " + std::to_string(cfg.strategies.size()) +
                              " shares, got " + std::to_string(shares.size()));
        double sum = 0.0;
        for (double v : shares) {
            if (v < 0.0 || v > 1.0) throw ConfigError("initial: shares must lie in [0, 1]");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw ConfigError("initial: shares must sum to 1 (got " + std::to_string(sum) + ")");
    }

    if (cfg.sweep) {
        with_parameter(cfg.params, cfg.sweep->parameter, cfg.sweep->values.empty()
                                                             ? 0.0
                                                             : cfg.sweep->values.front());
        if (cfg.sweep->values.empty()) throw ConfigError("sweep.values: must not be empty");
    }
}

}  // namespace

const char* to_string(Engine e) {
    switch (e) {
        case Engine::Ode: return "ode";
        case Engine::Agents: return "agents";
        default: return "both";
    }
}

NetworkParams with_parameter(const NetworkParams& base, const std::string& parameter,
                             double value) {
    NetworkParams p = base;
    if (parameter == "delay_coeff") p.delay_coeff = value;
    else if (parameter == "power_price") p.power_price = value;
    else if (parameter == "fee_rate") p.fee_rate = value;
    else if (parameter == "coinbase_reward") p.coinbase_reward = value;
    else if (parameter == "population") p.population = std::llround(value);
    else
        throw ConfigError("sweep.parameter: must be one of delay_coeff, power_price, fee_rate, "
                          "coinbase_reward, population; got '" +
                          parameter + "'");
    return p;
}

bool is_preset(const std::string& name) {
    return name == "fig1" || name == "fig3" || name == "fig4";
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig cfg;
    cfg.scenario = name;
    cfg.params = NetworkParams{0.005, 600.0, 1000.0, 2.0, 0.01, 5000};
    if (name == "fig1" || name == "fig3") {
        cfg.strategies = {{30.0, 100.0}, {20.0, 100.0}};
        cfg.initial = "0.75,0.25";
        if (name == "fig3")
            cfg.sweep = SweepSpec{"delay_coeff", {0.005, 0.01, 0.02, 0.03, 0.04, 0.05}};
    } else if (name == "fig4") {
        cfg.strategies = {{10.0, 100.0}, {20.0, 100.0}, {30.0, 100.0}, {40.0, 100.0}};
        cfg.initial = "uniform";
        // The equilibrium set here is a hyperplane; converge deep enough
        // that the neutral direction is cleanly resolvable.
        cfg.ode.convergence_tol = 1e-12;
        cfg.agents.max_rounds = 8000;
    } else {
        throw ConfigError("unknown preset: " + name);
    }
    return cfg;
}

ExperimentConfig parse_config(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        pairs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }

    ExperimentConfig cfg;
    // A scenario key names a preset to start from; every other key then
    // overrides it in file order.
    bool seeded_from_preset = false;
    for (const auto& [key, value] : pairs) {
        if (key == "scenario" && is_preset(value)) {
            cfg = preset(value);
            seeded_from_preset = true;
            break;
        }
    }
    for (const auto& [key, value] : pairs) {
        if (seeded_from_preset && key == "scenario") continue;
        apply_key(cfg, key, value);
    }
    check_config(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path_or_preset) {
    if (!std::filesystem::exists(path_or_preset)) {
        if (is_preset(path_or_preset)) return preset(path_or_preset);
        throw ConfigError("config: no such file or preset: " + path_or_preset);
    }
    std::ifstream in(path_or_preset);
    if (!in) throw ConfigError("config: cannot read " + path_or_preset);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace poolgame
