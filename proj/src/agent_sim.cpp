#include "poolgame/agent_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "poolgame/game_model.hpp"

namespace poolgame {

PopulationState AgentPopulation::state() const {
    const double n = static_cast<double>(miners());
    std::vector<double> shares(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        shares[i] = static_cast<double>(counts[i]) / n;
    return PopulationState(std::move(shares));
}

void AgentPopulation::rebuild_counts(std::size_t pools) {
    counts.assign(pools, 0);
    for (std::uint32_t a : assignments) {
        if (a >= pools) throw std::invalid_argument("assignment references unknown pool");
        ++counts[a];
    }
}

AgentPopulation AgentPopulation::from_state(const PopulationState& x, std::size_t miners) {
    require_simplex(x, 1e-9);
    if (miners == 0) throw std::invalid_argument("population needs at least one miner");
    const std::size_t m = x.size();

    // Largest-remainder apportionment of N miners over the target shares.
    std::vector<std::int64_t> counts(m);
    std::vector<std::pair<double, std::size_t>> remainders(m);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double exact = x[i] * static_cast<double>(miners);
        counts[i] = static_cast<std::int64_t>(std::floor(exact));
        remainders[i] = {exact - std::floor(exact), i};
        assigned += counts[i];
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (std::size_t k = 0; assigned < static_cast<std::int64_t>(miners); ++k, ++assigned)
        ++counts[remainders[k % m].second];

    AgentPopulation pop;
    pop.counts = std::move(counts);
    pop.assignments.reserve(miners);
    for (std::size_t i = 0; i < m; ++i)
        pop.assignments.insert(pop.assignments.end(), static_cast<std::size_t>(pop.counts[i]),
                               static_cast<std::uint32_t>(i));
    return pop;
}

AgentPopulation AgentPopulation::random(std::size_t miners, std::size_t pools,
                                        std::uint64_t seed) {
    if (miners == 0 || pools == 0)
        throw std::invalid_argument("population needs at least one miner and one pool");
    AgentPopulation pop;
    pop.assignments.resize(miners);
    for (std::size_t i = 0; i < miners; ++i) {
        // Round 0 of the Philox stream is reserved for initialization.
        const auto r = philox::block({0u, 0u, static_cast<std::uint32_t>(i), 0u}, seed);
        pop.assignments[i] = philox::bounded(r[0], static_cast<std::uint32_t>(pools));
    }
    pop.rebuild_counts(pools);
    return pop;
}

double switch_probability(std::size_t current, std::size_t candidate, const PopulationState& x,
                          std::span<const PoolStrategy> strategies, const NetworkParams& params,
                          double rate_scale) {
    if (current >= strategies.size() || candidate >= strategies.size())
        throw std::out_of_range("pool index out of range");
    if (!(x[candidate] > 0.0)) return 0.0;
    const double gain = miner_payoff(candidate, x, strategies, params) -
                        miner_payoff(current, x, strategies, params);
    if (!(gain > 0.0)) return 0.0;
    return std::clamp(rate_scale * x[candidate] * gain, 0.0, 1.0);
}

namespace {

// M x M switch-probability table for one round, frozen at state x.
std::vector<double> switch_table(const PopulationState& x,
                                 std::span<const PoolStrategy> strategies,
                                 const NetworkParams& params, double rate_scale) {
    const std::size_t m = strategies.size();
    const auto y = payoff_vector(x, strategies, params);
    std::vector<double> table(m * m, 0.0);
    for (std::size_t cur = 0; cur < m; ++cur) {
        if (x[cur] == 0.0) continue;  // no miner sits in an empty pool
        for (std::size_t cand = 0; cand < m; ++cand) {
            if (x[cand] == 0.0 || !(y[cand] > y[cur])) continue;
            table[cur * m + cand] = std::clamp(rate_scale * x[cand] * (y[cand] - y[cur]), 0.0, 1.0);
        }
    }
    return table;
}

void check_population(const AgentPopulation& pop, std::span<const PoolStrategy> strategies) {
    if (pop.pools() != strategies.size())
        throw std::invalid_argument("population and strategy list differ in pool count");
    if (pop.miners() == 0) throw std::invalid_argument("population has no miners");
    const auto total = std::accumulate(pop.counts.begin(), pop.counts.end(), std::int64_t{0});
    if (total != static_cast<std::int64_t>(pop.miners()))
        throw std::invalid_argument("population counts are inconsistent with assignments");
}

}  // namespace

AgentPopulation revision_round(AgentPopulation pop, std::span<const PoolStrategy> strategies,
                               const NetworkParams& params, double rate_scale,
                               std::uint64_t seed, std::uint64_t round, kernels::Impl kernel) {
    check_population(pop, strategies);
    const auto table = switch_table(pop.state(), strategies, params, rate_scale);
    kernels::RoundContext ctx{seed, round, static_cast<std::uint32_t>(strategies.size()),
                              table.data()};
    kernels::select(kernel)(pop.assignments, ctx);
    pop.rebuild_counts(strategies.size());
    return pop;
}

Trajectory run(AgentPopulation initial, std::span<const PoolStrategy> strategies,
               const NetworkParams& params, const SimConfig& cfg) {
    if (cfg.max_rounds < 1) throw std::invalid_argument("sim config: max_rounds must be >= 1");
    if (!(cfg.rate_scale > 0.0)) throw std::invalid_argument("sim config: rate_scale must be > 0");
    for (const auto& s : strategies) validate(s);
    validate(params);
    check_population(initial, strategies);

    const std::size_t m = strategies.size();
    const auto kernel = kernels::select(cfg.kernel);

    AgentPopulation pop = std::move(initial);
    Trajectory traj;
    auto record = [&](std::uint64_t round) {
        traj.times.push_back(static_cast<double>(round));
        traj.states.push_back(pop.state());
        if (cfg.record_payoffs)
            traj.payoffs.push_back(payoff_vector(traj.states.back(), strategies, params));
    };
    record(0);

    std::vector<double> table;
    for (std::uint64_t round = 1; round <= cfg.max_rounds; ++round) {
        table = switch_table(traj.states.back(), strategies, params, cfg.rate_scale);
        kernels::RoundContext ctx{cfg.seed, round, static_cast<std::uint32_t>(m), table.data()};
        kernel(pop.assignments, ctx);
        pop.rebuild_counts(m);
        record(round);

        if (cfg.convergence_window > 0 && round >= cfg.convergence_window) {
            const auto& now = traj.states.back();
            const auto& then = traj.states[round - cfg.convergence_window];
            double moved = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                moved = std::max(moved, std::abs(now[i] - then[i]));
            if (moved < cfg.convergence_tol) {
                traj.converged = true;
                break;
            }
        }
    }
    traj.final_time = traj.times.back();
    return traj;
}

}  // namespace poolgame
