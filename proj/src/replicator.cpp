#include "poolgame/replicator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "poolgame/game_model.hpp"

namespace poolgame {

namespace {

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    return m;
}

bool all_finite(const std::vector<double>& v) {
    for (double c : v) {
        if (!std::isfinite(c)) return false;
    }
    return true;
}

}  // namespace

std::vector<double> replicator_rhs(const PopulationState& x,
                                   std::span<const PoolStrategy> strategies,
                                   const NetworkParams& params) {
    const std::size_t m = strategies.size();
    if (x.size() != m || m == 0)
        throw std::invalid_argument("population state and strategy list differ in length");
    const double total = weighted_hash_rate(x, strategies);
    if (!(total > 0.0))
        throw std::domain_error("degenerate state: total weighted hash rate is zero");
    const double n = static_cast<double>(params.population);

    std::vector<double> y(m, 0.0);
    double ybar = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (x[i] == 0.0) continue;  // empty pool: x_i * y_i taken as its zero limit
        y[i] = pool_reward_weight(strategies[i], params) / (n * total) -
               params.power_price * strategies[i].hash_rate;
        ybar += x[i] * y[i];
    }
    std::vector<double> f(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (x[i] != 0.0) f[i] = x[i] * (y[i] - ybar);
    }
    return f;
}

double reduced_rhs_two_pool(double x1, std::span<const PoolStrategy> strategies,
                            const NetworkParams& params) {
    if (strategies.size() != 2)
        throw std::invalid_argument("reduced two-pool dynamics need exactly 2 strategies");
    const double a = pool_reward_weight(strategies[0], params);
    const double b = pool_reward_weight(strategies[1], params);
    const double w1 = strategies[0].hash_rate;
    const double w2 = strategies[1].hash_rate;
    const double n = static_cast<double>(params.population);
    const double total = w1 * x1 + w2 * (1.0 - x1);
    return x1 * (1.0 - x1) * ((a - b) / (n * total) - params.power_price * (w1 - w2));
}

Trajectory integrate(const PopulationState& x0, std::span<const PoolStrategy> strategies,
                     const NetworkParams& params, const IntegratorConfig& cfg) {
    if (!(cfg.step > 0.0) || !(cfg.max_time > 0.0) || !(cfg.convergence_tol > 0.0) ||
        cfg.record_every == 0)
        throw std::invalid_argument("integrator config: step, max_time, convergence_tol must be "
                                    "positive and record_every at least 1");
    require_simplex(x0, 1e-9);
    for (const auto& s : strategies) validate(s);
    validate(params);

    PopulationState x = x0;
    renormalize(x);

    const std::size_t m = x.size();
    const double h = cfg.step;
    const auto steps = static_cast<std::size_t>(std::ceil(cfg.max_time / h));

    Trajectory traj;
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        if (cfg.record_payoffs) traj.payoffs.push_back(payoff_vector(x, strategies, params));
    };
    record(0.0);

    auto rhs = [&](const std::vector<double>& s) {
        return replicator_rhs(PopulationState(s), strategies, params);
    };
    auto shifted = [&](const std::vector<double>& s, const std::vector<double>& k, double c) {
        std::vector<double> r(m);
        for (std::size_t i = 0; i < m; ++i) r[i] = s[i] + c * k[i];
        return r;
    };

    double t = 0.0;
    bool converged = false;
    for (std::size_t step = 1; step <= steps; ++step) {
        const auto k1 = rhs(x.shares);
        if (!all_finite(k1))
            throw NumericalError("replicator integration failed at t=" + std::to_string(t));
        if (sup_norm(k1) < cfg.convergence_tol) {
            converged = true;
            break;
        }
        const auto k2 = rhs(shifted(x.shares, k1, h / 2.0));
        const auto k3 = rhs(shifted(x.shares, k2, h / 2.0));
        const auto k4 = rhs(shifted(x.shares, k3, h));
        for (std::size_t i = 0; i < m; ++i)
            x.shares[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!all_finite(x.shares))
            throw NumericalError("replicator integration failed at t=" + std::to_string(t + h));
        renormalize(x);
        t = static_cast<double>(step) * h;
        if (step % cfg.record_every == 0) record(t);
    }
    if (!converged) converged = sup_norm(rhs(x.shares)) < cfg.convergence_tol;
    if (traj.times.back() != t) record(t);
    traj.converged = converged;
    traj.final_time = t;
    return traj;
}

}  // namespace poolgame
