#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "poolgame/kernels/revision.hpp"
#include "poolgame/replicator.hpp"
#include "poolgame/types.hpp"

namespace poolgame {

// Finite population of N individual miners, each assigned to one pool.
struct AgentPopulation {
    std::vector<std::uint32_t> assignments;  // pool index per miner
    std::vector<std::int64_t> counts;        // per-pool tallies, sum == N

    std::size_t miners() const { return assignments.size(); }
    std::size_t pools() const { return counts.size(); }

    PopulationState state() const;
    void rebuild_counts(std::size_t pools);

    // Deterministic split closest to the target shares (largest remainders).
    static AgentPopulation from_state(const PopulationState& x, std::size_t miners);
    // Every miner picks a pool uniformly at random (Philox stream, round 0).
    static AgentPopulation random(std::size_t miners, std::size_t pools, std::uint64_t seed);
};

struct SimConfig {
    std::uint64_t seed = 0;
    std::size_t max_rounds = 4000;
    double rate_scale = 1.0;  // multiplies the imitation probability, then clamped to [0,1]
    // Stop when the empirical state moved less than convergence_tol
    // (sup-norm) over the last convergence_window rounds; 0 disables.
    std::size_t convergence_window = 200;
    double convergence_tol = 2e-4;
    kernels::Impl kernel = kernels::Impl::Auto;
    bool record_payoffs = true;
};

// Probability that a miner in `current` adopts `candidate` when it samples
// it: clamp(rate_scale * x_cand * max(y_cand - y_cur, 0), 0, 1). Zero for an
// empty candidate pool.
double switch_probability(std::size_t current, std::size_t candidate, const PopulationState& x,
                          std::span<const PoolStrategy> strategies, const NetworkParams& params,
                          double rate_scale = 1.0);

// One synchronous round: every miner samples a candidate pool uniformly and
// switches with switch_probability, all against the state frozen at entry.
AgentPopulation revision_round(AgentPopulation pop, std::span<const PoolStrategy> strategies,
                               const NetworkParams& params, double rate_scale,
                               std::uint64_t seed, std::uint64_t round,
                               kernels::Impl kernel = kernels::Impl::Auto);

// Iterate revision rounds until the empirical state settles or max_rounds.
// Fully deterministic given cfg.seed. Trajectory times count rounds.
Trajectory run(AgentPopulation initial, std::span<const PoolStrategy> strategies,
               const NetworkParams& params, const SimConfig& cfg);

}  // namespace poolgame
