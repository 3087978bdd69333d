#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace poolgame {

// Invalid config file or CLI usage; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// NaN/overflow during integration or simulation; CLI exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mining strategy advertised by one pool: the hash rate it requires from
// each member and the block size it mines.
struct PoolStrategy {
    double hash_rate = 0.0;   // omega, queries per unit time
    double block_size = 0.0;  // s, size units
};

// Global network environment shared by all pools.
struct NetworkParams {
    double delay_coeff = 0.0;            // seconds of propagation+verification per size unit
    double mean_block_interval = 600.0;  // T, seconds
    double coinbase_reward = 0.0;        // R, tokens per confirmed block
    double fee_rate = 0.0;               // rho, tokens per size unit
    double power_price = 0.0;            // p, tokens per unit hash rate per interval
    std::int64_t population = 1;         // N, number of individual miners
};

// Fraction of the miner population in each pool. Construction does not
// validate: derivative code deliberately evaluates states slightly off the
// simplex, so validation is a separate step (require_simplex).
struct PopulationState {
    std::vector<double> shares;

    PopulationState() = default;
    explicit PopulationState(std::vector<double> s) : shares(std::move(s)) {}
    PopulationState(std::initializer_list<double> s) : shares(s) {}

    std::size_t size() const { return shares.size(); }
    double operator[](std::size_t i) const { return shares[i]; }

    static PopulationState uniform(std::size_t pools);
    bool on_simplex(double tol = 1e-12) const;
};

void validate(const PoolStrategy& s);
void validate(const NetworkParams& p);
void require_simplex(const PopulationState& x, double tol = 1e-12);

// Clamp negatives to zero and rescale so the shares sum to one.
void renormalize(PopulationState& x);

}  // namespace poolgame
