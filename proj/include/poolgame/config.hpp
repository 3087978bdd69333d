#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poolgame/agent_sim.hpp"
#include "poolgame/replicator.hpp"
#include "poolgame/types.hpp"

namespace poolgame {

enum class Engine { Ode, Agents, Both };

struct SweepSpec {
    std::string parameter;  // delay_coeff | power_price | fee_rate | coinbase_reward | population
    std::vector<double> values;
};

// One experiment scenario: pools, environment, initial condition and solver
// settings. Parsed from a flat key-value file with dotted sections; the
// named presets fig1/fig3/fig4 ship the stock demonstration scenarios.
struct ExperimentConfig {
    std::string scenario = "custom";
    std::vector<PoolStrategy> strategies;
    NetworkParams params;
    std::string initial = "uniform";  // "uniform" | "random" | comma-separated shares
    Engine engine = Engine::Ode;
    std::uint64_t seed = 0;
    IntegratorConfig ode;
    SimConfig agents;
    std::optional<SweepSpec> sweep;
    std::string out_dir = ".";
};

bool is_preset(const std::string& name);
ExperimentConfig preset(const std::string& name);

// Load from a file path, or fall back to a preset when the argument names
// one and no such file exists. Throws ConfigError with the offending key.
ExperimentConfig load_config(const std::string& path_or_preset);

// Parse config text (for tests and embedded presets).
ExperimentConfig parse_config(const std::string& text);

// Return params with the swept parameter replaced; validates the name.
NetworkParams with_parameter(const NetworkParams& base, const std::string& parameter,
                             double value);

const char* to_string(Engine e);

}  // namespace poolgame
