#include "poolgame/game_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace poolgame {

namespace {

void check_shape(const PopulationState& x, std::span<const PoolStrategy> strategies) {
    if (strategies.empty()) throw std::invalid_argument("no pool strategies given");
    if (x.size() != strategies.size())
        throw std::invalid_argument("population state and strategy list differ in length");
}

void check_pool(std::size_t i, std::span<const PoolStrategy> strategies) {
    if (i >= strategies.size()) throw std::out_of_range("pool index out of range");
}

}  // namespace

double weighted_hash_rate(const PopulationState& x, std::span<const PoolStrategy> strategies) {
    check_shape(x, strategies);
    double sum = 0.0;
    for (std::size_t j = 0; j < strategies.size(); ++j) sum += strategies[j].hash_rate * x[j];
    return sum;
}

double mine_probability(std::size_t i, const PopulationState& x,
                        std::span<const PoolStrategy> strategies) {
    check_shape(x, strategies);
    check_pool(i, strategies);
    const double total = weighted_hash_rate(x, strategies);
    if (!(total > 0.0))
        throw std::domain_error("degenerate state: total weighted hash rate is zero");
    return strategies[i].hash_rate * x[i] / total;
}

double propagation_delay(double block_size, const NetworkParams& params) {
    if (!(block_size >= 0.0)) throw std::invalid_argument("block_size must be non-negative");
    return params.delay_coeff * block_size;
}

double orphan_probability(double block_size, const NetworkParams& params) {
    const double tau = propagation_delay(block_size, params);
    return -std::expm1(-tau / params.mean_block_interval);
}

double win_probability(std::size_t i, const PopulationState& x,
                       std::span<const PoolStrategy> strategies, const NetworkParams& params) {
    const double survival =
        std::exp(-propagation_delay(strategies[i].block_size, params) / params.mean_block_interval);
    return mine_probability(i, x, strategies) * survival;
}

double expected_pool_reward(std::size_t i, const PopulationState& x,
                            std::span<const PoolStrategy> strategies, const NetworkParams& params) {
    check_pool(i, strategies);
    const double gross = params.coinbase_reward + params.fee_rate * strategies[i].block_size;
    return gross * win_probability(i, x, strategies, params);
}

double pool_reward_weight(const PoolStrategy& s, const NetworkParams& params) {
    const double gross = params.coinbase_reward + params.fee_rate * s.block_size;
    const double survival =
        std::exp(-propagation_delay(s.block_size, params) / params.mean_block_interval);
    return gross * s.hash_rate * survival;
}

double miner_payoff(std::size_t i, const PopulationState& x,
                    std::span<const PoolStrategy> strategies, const NetworkParams& params) {
    check_shape(x, strategies);
    check_pool(i, strategies);
    if (x[i] == 0.0)
        throw std::domain_error("miner payoff undefined: pool " + std::to_string(i) + " is empty");
    const double total = weighted_hash_rate(x, strategies);
    if (!(total > 0.0))
        throw std::domain_error("degenerate state: total weighted hash rate is zero");
    // The reward share of one miner: x_i cancels between the per-head split
    // and the mining probability.
    const double n = static_cast<double>(params.population);
    return pool_reward_weight(strategies[i], params) / (n * total) -
           params.power_price * strategies[i].hash_rate;
}

std::vector<double> payoff_vector(const PopulationState& x,
                                  std::span<const PoolStrategy> strategies,
                                  const NetworkParams& params) {
    check_shape(x, strategies);
    const double total = weighted_hash_rate(x, strategies);
    if (!(total > 0.0))
        throw std::domain_error("degenerate state: total weighted hash rate is zero");
    const double n = static_cast<double>(params.population);
    std::vector<double> y(strategies.size());
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        y[i] = x[i] == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                           : pool_reward_weight(strategies[i], params) / (n * total) -
                                 params.power_price * strategies[i].hash_rate;
    }
    return y;
}

double mean_payoff(const PopulationState& x, std::span<const PoolStrategy> strategies,
                   const NetworkParams& params) {
    const auto y = payoff_vector(x, strategies, params);
    double mean = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (x[i] != 0.0) mean += x[i] * y[i];
    }
    return mean;
}

}  // namespace poolgame
