#include "poolgame/types.hpp"

#include <cmath>

namespace poolgame {

PopulationState PopulationState::uniform(std::size_t pools) {
    return PopulationState(std::vector<double>(pools, 1.0 / static_cast<double>(pools)));
}

bool PopulationState::on_simplex(double tol) const {
    double sum = 0.0;
    for (double v : shares) {
        if (!std::isfinite(v) || v < -tol || v > 1.0 + tol) return false;
        sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
}

void validate(const PoolStrategy& s) {
    if (!(s.hash_rate > 0.0) || !std::isfinite(s.hash_rate))
        throw std::invalid_argument("pool strategy: hash_rate must be positive and finite");
    if (!(s.block_size >= 0.0) || !std::isfinite(s.block_size))
        throw std::invalid_argument("pool strategy: block_size must be non-negative and finite");
}

void validate(const NetworkParams& p) {
    if (!(p.delay_coeff >= 0.0) || !std::isfinite(p.delay_coeff))
        throw std::invalid_argument("network params: delay_coeff must be non-negative and finite");
    if (!(p.mean_block_interval > 0.0) || !std::isfinite(p.mean_block_interval))
        throw std::invalid_argument("network params: mean_block_interval must be positive");
    if (!(p.coinbase_reward >= 0.0) || !std::isfinite(p.coinbase_reward))
        throw std::invalid_argument("network params: coinbase_reward must be non-negative");
    if (!(p.fee_rate >= 0.0) || !std::isfinite(p.fee_rate))
        throw std::invalid_argument("network params: fee_rate must be non-negative");
    if (!(p.power_price >= 0.0) || !std::isfinite(p.power_price))
        throw std::invalid_argument("network params: power_price must be non-negative");
    if (p.population < 1)
        throw std::invalid_argument("network params: population must be at least 1");
}

void require_simplex(const PopulationState& x, double tol) {
    if (x.size() == 0) throw std::invalid_argument("population state is empty");
    if (!x.on_simplex(tol))
        throw std::invalid_argument("population state is not on the simplex");
}

void renormalize(PopulationState& x) {
    double sum = 0.0;
    for (double& v : x.shares) {
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw NumericalError("population state collapsed: share total is " + std::to_string(sum));
    for (double& v : x.shares) v /= sum;
}

}  // namespace poolgame
