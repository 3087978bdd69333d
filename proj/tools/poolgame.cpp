// poolgame: evolutionary mining-pool selection simulator.
//
// Subcommands: evolve, phase, sweep, classify, agents. Exit codes:
// 0 success, 2 config/usage error, 3 numerical failure, 4 non-convergence.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "poolgame/experiments.hpp"

namespace {

using namespace poolgame;

bool quiet_logging() {
    const char* level = std::getenv("POOLGAME_LOG");
    return level != nullptr && std::string(level) == "quiet";
}

void log_line(const std::string& message) {
    if (!quiet_logging()) std::cerr << message << "\n";
}

void log_written(const std::vector<std::string>& paths) {
    for (const auto& p : paths) log_line("wrote " + p);
}

struct CommonArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> engine;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_engine) {
    cmd->add_option("--config", args.config, "config file path or preset name (fig1, fig3, fig4)")
        ->required();
    cmd->add_option("--seed", args.seed, "RNG seed, overrides the config");
    cmd->add_option("--out", args.out, "output directory, overrides the config");
    if (with_engine)
        cmd->add_option("--engine", args.engine, "ode, agents or both, overrides the config");
}

ExperimentConfig make_config(const CommonArgs& args) {
    ExperimentConfig cfg = load_config(args.config);
    if (args.seed) cfg.seed = *args.seed;
    if (args.out) cfg.out_dir = *args.out;
    if (args.engine) {
        if (*args.engine == "ode") cfg.engine = Engine::Ode;
        else if (*args.engine == "agents") cfg.engine = Engine::Agents;
        else if (*args.engine == "both") cfg.engine = Engine::Both;
        else throw ConfigError("--engine: expected ode, agents or both, got '" + *args.engine + "'");
    }
    return cfg;
}

int cmd_evolve(const CommonArgs& args, bool force_agents) {
    ExperimentConfig cfg = make_config(args);
    if (force_agents) cfg.engine = Engine::Agents;
    const auto outcome = run_evolve(cfg);
    log_written(write_outputs(cfg, outcome));
    if (outcome.ode)
        log_line("ode: " + std::string(outcome.ode->converged ? "converged" : "did not converge") +
                 " at t=" + std::to_string(outcome.ode->final_time));
    if (outcome.agents)
        log_line("agents: " +
                 std::string(outcome.agents->converged ? "converged" : "did not converge") +
                 " after " + std::to_string(static_cast<long long>(outcome.agents->final_time)) +
                 " rounds");
    return outcome.converged ? 0 : 4;
}

int cmd_phase(const CommonArgs& args) {
    const ExperimentConfig cfg = make_config(args);
    const auto outcome = run_phase(cfg);
    log_written(write_outputs(cfg, outcome));
    log_line("rest points: " + std::to_string(outcome.rest_points.size()));
    return outcome.converged ? 0 : 4;
}

int cmd_sweep(const CommonArgs& args) {
    const ExperimentConfig cfg = make_config(args);
    const auto outcome = run_sweep(cfg);
    log_written(write_outputs(cfg, outcome));
    bool converged = true;
    for (const auto& p : outcome.points) converged = converged && p.converged;
    return converged ? 0 : 4;
}

int cmd_classify(const CommonArgs& args) {
    const ExperimentConfig cfg = make_config(args);
    const auto outcome = run_classify(cfg);
    log_written(write_outputs(cfg, outcome));
    for (const auto& r : outcome.reports) {
        std::string xs;
        for (std::size_t i = 0; i < r.x_star.size(); ++i)
            xs += (i ? "," : "") + std::to_string(r.x_star[i]);
        log_line(std::string(to_string(r.kind)) + " (" + xs + "): " + to_string(r.verdict));
    }
    return outcome.converged ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"evolutionary mining-pool selection: replicator dynamics, agent simulation "
                 "and equilibrium classification"};
    app.require_subcommand(1);

    CommonArgs evolve_args, phase_args, sweep_args, classify_args, agents_args;
    auto* evolve = app.add_subcommand("evolve", "integrate the dynamics and/or run agents");
    add_common(evolve, evolve_args, true);
    auto* phase = app.add_subcommand("phase", "two-pool phase portrait and rest points");
    add_common(phase, phase_args, false);
    auto* sweep = app.add_subcommand("sweep", "equilibrium versus a swept parameter");
    add_common(sweep, sweep_args, false);
    auto* classify = app.add_subcommand("classify", "rest-point reports with stability verdicts");
    add_common(classify, classify_args, false);
    auto* agents = app.add_subcommand("agents", "agent simulation only");
    add_common(agents, agents_args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (evolve->parsed()) return cmd_evolve(evolve_args, false);
        if (phase->parsed()) return cmd_phase(phase_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (classify->parsed()) return cmd_classify(classify_args);
        if (agents->parsed()) return cmd_evolve(agents_args, true);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
