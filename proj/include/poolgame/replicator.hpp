#pragma once

#include <span>
#include <vector>

#include "poolgame/types.hpp"

namespace poolgame {

struct IntegratorConfig {
    double step = 0.1;
    double max_time = 1e4;
    double convergence_tol = 1e-9;  // sup-norm of the vector field
    std::size_t record_every = 10;  // output decimation factor
    bool record_payoffs = true;
};

// Time-indexed sequence of population states, shared by the mean-field
// integrator and the agent simulation (where time counts revision rounds).
struct Trajectory {
    std::vector<double> times;
    std::vector<PopulationState> states;
    std::vector<std::vector<double>> payoffs;  // empty unless recorded
    bool converged = false;
    double final_time = 0.0;

    const PopulationState& final_state() const { return states.back(); }
};

// Growth rate of every pool's population share: x_i * (y_i - ybar), with
// empty pools pinned at zero. Evaluates the same expression for off-simplex
// states, which is what the finite-difference Jacobian relies on.
std::vector<double> replicator_rhs(const PopulationState& x,
                                   std::span<const PoolStrategy> strategies,
                                   const NetworkParams& params);

// Factored 1-D form of the two-pool dynamics at state (x1, 1-x1):
// x1 (1-x1) [ (a-b) / (N (w1 x1 + w2 (1-x1))) - p (w1 - w2) ].
// Throws std::invalid_argument unless exactly two strategies are given.
double reduced_rhs_two_pool(double x1, std::span<const PoolStrategy> strategies,
                            const NetworkParams& params);

// Classical fixed-step RK4 with per-step renormalization onto the simplex.
// Converged means the RHS sup-norm dropped below cfg.convergence_tol before
// the horizon. Throws NumericalError if the state turns non-finite.
Trajectory integrate(const PopulationState& x0, std::span<const PoolStrategy> strategies,
                     const NetworkParams& params, const IntegratorConfig& cfg = {});

}  // namespace poolgame
