#pragma once

#include <span>
#include <vector>

#include "poolgame/types.hpp"

namespace poolgame {

// Economic model of one consensus round: mining lottery, propagation delay,
// orphaning, rewards and per-miner payoffs. All functions are pure.

// sum_j omega_j x_j, the population-weighted total hash rate.
double weighted_hash_rate(const PopulationState& x, std::span<const PoolStrategy> strategies);

// Probability that pool i mines the next block. Throws std::domain_error if
// every inhabited pool has zero weighted hash rate.
double mine_probability(std::size_t i, const PopulationState& x,
                        std::span<const PoolStrategy> strategies);

// Average propagation-plus-verification time of a block, seconds.
double propagation_delay(double block_size, const NetworkParams& params);

// Probability that a freshly mined block of this size is orphaned.
double orphan_probability(double block_size, const NetworkParams& params);

// Probability that pool i mines the next block and it survives propagation.
double win_probability(std::size_t i, const PopulationState& x,
                       std::span<const PoolStrategy> strategies, const NetworkParams& params);

// Expected round reward of pool i: (coinbase + fees) times win probability.
double expected_pool_reward(std::size_t i, const PopulationState& x,
                            std::span<const PoolStrategy> strategies, const NetworkParams& params);

// Expected net payoff of one miner in pool i. Undefined for an empty pool:
// throws std::domain_error when x_i == 0.
double miner_payoff(std::size_t i, const PopulationState& x,
                    std::span<const PoolStrategy> strategies, const NetworkParams& params);

// Population-average miner payoff; empty pools contribute zero.
double mean_payoff(const PopulationState& x, std::span<const PoolStrategy> strategies,
                   const NetworkParams& params);

// Per-pool payoffs in one pass. Entries of empty pools are NaN.
std::vector<double> payoff_vector(const PopulationState& x,
                                  std::span<const PoolStrategy> strategies,
                                  const NetworkParams& params);

// (R + rho*s) * omega * exp(-tau(s)/T) for one pool: the pool's reward rate
// weighted by hash rate and propagation survival. The two-pool equilibrium
// coefficients are exactly this quantity for each pool.
double pool_reward_weight(const PoolStrategy& s, const NetworkParams& params);

}  // namespace poolgame
