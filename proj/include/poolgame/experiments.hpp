#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poolgame/agent_sim.hpp"
#include "poolgame/config.hpp"
#include "poolgame/replicator.hpp"
#include "poolgame/stability.hpp"

namespace poolgame {

// Resolved initial condition: the mean-field point plus, when the agent
// engine is in play, the matching finite population.
struct InitialCondition {
    PopulationState state;
    AgentPopulation agents;
};
InitialCondition resolve_initial(const ExperimentConfig& cfg);

struct EvolveOutcome {
    std::optional<Trajectory> ode;
    std::optional<Trajectory> agents;
    bool converged = true;
};

struct PhaseOutcome {
    std::vector<double> grid_x;
    std::vector<double> grid_rate;
    Trajectory trajectory;
    std::vector<RestPointReport> rest_points;
    bool converged = true;
};

struct SweepPoint {
    double value = 0.0;
    PopulationState x_star;
    std::vector<double> payoffs;
    Verdict verdict = Verdict::Unclassified;
    bool interior_closed_form = false;  // false when the ODE fallback decided the point
    bool converged = true;
};

struct SweepOutcome {
    std::string parameter;
    std::vector<SweepPoint> points;
};

struct ClassifyOutcome {
    std::vector<RestPointReport> reports;
    bool converged = true;
};

EvolveOutcome run_evolve(const ExperimentConfig& cfg);
PhaseOutcome run_phase(const ExperimentConfig& cfg);
SweepOutcome run_sweep(const ExperimentConfig& cfg);
ClassifyOutcome run_classify(const ExperimentConfig& cfg);

// Equilibrium of cfg's parameter set: the closed-form interior point when
// the two-pool formula applies and is feasible, otherwise the converged ODE
// state. Shared by sweep and the acceptance checks.
SweepPoint solve_equilibrium(const ExperimentConfig& cfg, double swept_value);

// Emit this outcome's CSV/SVG files under cfg.out_dir; returns the paths.
std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const EvolveOutcome& out);
std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const PhaseOutcome& out);
std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const SweepOutcome& out);
std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const ClassifyOutcome& out);

std::string sweep_csv(const SweepOutcome& out);

}  // namespace poolgame
