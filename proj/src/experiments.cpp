#include "poolgame/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <future>
#include <sstream>

#include "poolgame/csv.hpp"
#include "poolgame/game_model.hpp"
#include "poolgame/svg.hpp"

namespace poolgame {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::vector<double> parse_shares(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::strtod(item.c_str(), nullptr));
    return out;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    return m;
}

// Payoffs at a state, with empty pools reported as NaN.
std::vector<double> payoffs_at(const PopulationState& x, const ExperimentConfig& cfg,
                               const NetworkParams& params) {
    return payoff_vector(x, cfg.strategies, params);
}

svg::Series state_series(const Trajectory& traj, std::size_t pool, bool dashed,
                         const std::string& label) {
    svg::Series s;
    s.x = traj.times;
    s.y.reserve(traj.states.size());
    for (const auto& st : traj.states) s.y.push_back(st[pool]);
    s.color = kPalette[pool % 8];
    s.dashed = dashed;
    s.label = label;
    return s;
}

}  // namespace

InitialCondition resolve_initial(const ExperimentConfig& cfg) {
    const std::size_t m = cfg.strategies.size();
    const auto n = static_cast<std::size_t>(cfg.params.population);
    if (cfg.initial == "uniform") {
        const auto x = PopulationState::uniform(m);
        return {x, AgentPopulation::from_state(x, n)};
    }
    if (cfg.initial == "random") {
        auto agents = AgentPopulation::random(n, m, cfg.seed);
        auto x = agents.state();
        return {std::move(x), std::move(agents)};
    }
    PopulationState x(parse_shares(cfg.initial));
    require_simplex(x, 1e-9);
    renormalize(x);
    return {x, AgentPopulation::from_state(x, n)};
}

EvolveOutcome run_evolve(const ExperimentConfig& cfg) {
    const auto initial = resolve_initial(cfg);
    EvolveOutcome out;
    if (cfg.engine == Engine::Ode || cfg.engine == Engine::Both) {
        out.ode = integrate(initial.state, cfg.strategies, cfg.params, cfg.ode);
        out.converged = out.converged && out.ode->converged;
    }
    if (cfg.engine == Engine::Agents || cfg.engine == Engine::Both) {
        SimConfig sim = cfg.agents;
        sim.seed = cfg.seed;
        out.agents = run(initial.agents, cfg.strategies, cfg.params, sim);
        out.converged = out.converged && out.agents->converged;
    }
    return out;
}

PhaseOutcome run_phase(const ExperimentConfig& cfg) {
    if (cfg.strategies.size() != 2)
        throw ConfigError("phase: exactly 2 pools are required (pools.count)");
    PhaseOutcome out;
    constexpr int kSamples = 401;
    out.grid_x.reserve(kSamples);
    out.grid_rate.reserve(kSamples);
    for (int i = 0; i < kSamples; ++i) {
        const double x = static_cast<double>(i) / (kSamples - 1);
        out.grid_x.push_back(x);
        out.grid_rate.push_back(reduced_rhs_two_pool(x, cfg.strategies, cfg.params));
    }
    out.trajectory = integrate(resolve_initial(cfg).state, cfg.strategies, cfg.params, cfg.ode);
    out.converged = out.trajectory.converged;
    try {
        for (auto& point : rest_points_two_pool(cfg.strategies, cfg.params)) {
            if (point.feasible) {
                out.rest_points.push_back(classify(point.x_star, cfg.strategies, cfg.params));
                out.rest_points.back().kind = point.kind;
            } else {
                out.rest_points.push_back(std::move(point));
            }
        }
    } catch (const std::domain_error&) {
        // Equivalent pools: the field is identically zero and every state
        // is a rest point, so there is nothing discrete to mark.
    }
    return out;
}

SweepPoint solve_equilibrium(const ExperimentConfig& cfg, double swept_value) {
    SweepPoint point;
    point.value = swept_value;

    if (cfg.strategies.size() == 2 &&
        cfg.strategies[0].hash_rate != cfg.strategies[1].hash_rate) {
        const auto points = rest_points_two_pool(cfg.strategies, cfg.params);
        const auto& interior = points.back();
        if (interior.kind == RestPointKind::Interior && interior.feasible) {
            const auto report = classify(interior.x_star, cfg.strategies, cfg.params);
            point.x_star = report.x_star;
            point.payoffs = payoffs_at(report.x_star, cfg, cfg.params);
            point.verdict = report.verdict;
            point.interior_closed_form = true;
            return point;
        }
    }

    // No feasible closed-form interior point: let the dynamics decide.
    const auto traj = integrate(resolve_initial(cfg).state, cfg.strategies, cfg.params, cfg.ode);
    point.converged = traj.converged;
    point.x_star = traj.final_state();
    point.payoffs = payoffs_at(point.x_star, cfg, cfg.params);
    if (traj.converged &&
        sup_norm(replicator_rhs(point.x_star, cfg.strategies, cfg.params)) < 1e-9) {
        point.verdict = classify(point.x_star, cfg.strategies, cfg.params).verdict;
    }
    return point;
}

SweepOutcome run_sweep(const ExperimentConfig& cfg) {
    if (!cfg.sweep) throw ConfigError("sweep.parameter: a sweep must be configured");
    SweepOutcome out;
    out.parameter = cfg.sweep->parameter;

    std::vector<std::future<SweepPoint>> futures;
    futures.reserve(cfg.sweep->values.size());
    for (std::size_t i = 0; i < cfg.sweep->values.size(); ++i) {
        const double value = cfg.sweep->values[i];
        futures.push_back(std::async(std::launch::async, [&cfg, value, i] {
            ExperimentConfig local = cfg;
            local.seed = cfg.seed ^ i;  // per-point stream, reproducible
            local.params = with_parameter(cfg.params, cfg.sweep->parameter, value);
            return solve_equilibrium(local, value);
        }));
    }
    for (auto& f : futures) out.points.push_back(f.get());
    return out;
}

ClassifyOutcome run_classify(const ExperimentConfig& cfg) {
    ClassifyOutcome out;
    if (cfg.strategies.size() == 2) {
        try {
            for (auto& point : rest_points_two_pool(cfg.strategies, cfg.params)) {
                if (point.feasible) {
                    auto report = classify(point.x_star, cfg.strategies, cfg.params);
                    report.kind = point.kind;
                    out.reports.push_back(std::move(report));
                } else {
                    out.reports.push_back(std::move(point));
                }
            }
        } catch (const std::domain_error&) {
            // Equivalent pools: everything rests. Classify the vertices and
            // the configured start; all of them come out degenerate.
            for (const auto& x : {PopulationState{0.0, 1.0}, PopulationState{1.0, 0.0},
                                  resolve_initial(cfg).state}) {
                out.reports.push_back(classify(x, cfg.strategies, cfg.params));
            }
        }
        return out;
    }
    const auto traj = integrate(resolve_initial(cfg).state, cfg.strategies, cfg.params, cfg.ode);
    out.converged = traj.converged;
    if (traj.converged) out.reports.push_back(classify(traj.final_state(), cfg.strategies, cfg.params));
    return out;
}

std::string sweep_csv(const SweepOutcome& out) {
    std::ostringstream s;
    const std::size_t m = out.points.empty() ? 0 : out.points.front().x_star.size();
    s << out.parameter;
    for (std::size_t i = 1; i <= m; ++i) s << ",x_star_" << i;
    for (std::size_t i = 1; i <= m; ++i) s << ",y_" << i;
    s << ",verdict,interior_closed_form\n";
    for (const auto& p : out.points) {
        s << csv::fmt(p.value);
        for (std::size_t i = 0; i < m; ++i) s << "," << csv::fmt(p.x_star[i]);
        for (std::size_t i = 0; i < m; ++i) s << "," << csv::fmt(p.payoffs[i]);
        s << "," << to_string(p.verdict) << "," << (p.interior_closed_form ? "1" : "0") << "\n";
    }
    return s.str();
}

std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const EvolveOutcome& out) {
    std::vector<std::string> written;
    std::vector<svg::Series> series;
    if (out.ode) {
        const auto path = out_path(cfg, "trajectory_ode.csv");
        csv::write_file(path, csv::trajectory_csv(*out.ode));
        written.push_back(path);
        for (std::size_t i = 0; i < cfg.strategies.size(); ++i)
            series.push_back(state_series(*out.ode, i, false,
                                          "pool " + std::to_string(i + 1) + " (ode)"));
    }
    if (out.agents) {
        const auto path = out_path(cfg, "trajectory_agents.csv");
        csv::write_file(path,
                        csv::trajectory_csv(*out.agents,
                                            {"seed=" + std::to_string(cfg.seed) +
                                             " rate_scale=" + csv::fmt(cfg.agents.rate_scale)}));
        written.push_back(path);
        for (std::size_t i = 0; i < cfg.strategies.size(); ++i)
            series.push_back(state_series(*out.agents, i, true,
                                          "pool " + std::to_string(i + 1) + " (agents)"));
    }
    const auto plot_path = out_path(cfg, "evolution.svg");
    csv::write_file(plot_path, svg::plot("population state evolution (" + cfg.scenario + ")",
                                         "time", "population share", series));
    written.push_back(plot_path);
    return written;
}

std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const PhaseOutcome& out) {
    std::vector<std::string> written;

    std::ostringstream field;
    field << "x_1,dx_1_dt\n";
    for (std::size_t i = 0; i < out.grid_x.size(); ++i)
        field << csv::fmt(out.grid_x[i]) << "," << csv::fmt(out.grid_rate[i]) << "\n";
    const auto field_path = out_path(cfg, "phase_field.csv");
    csv::write_file(field_path, field.str());
    written.push_back(field_path);

    const auto traj_path = out_path(cfg, "trajectory_ode.csv");
    csv::write_file(traj_path, csv::trajectory_csv(out.trajectory));
    written.push_back(traj_path);

    const auto points_path = out_path(cfg, "rest_points.csv");
    csv::write_file(points_path, csv::equilibria_csv(out.rest_points));
    written.push_back(points_path);

    svg::Series field_series{out.grid_x, out.grid_rate, "#1f77b4", false, "dx1/dt"};
    svg::Series zero{{0.0, 1.0}, {0.0, 0.0}, "#999999", true, ""};
    svg::Series traj_series;
    traj_series.color = "#2ca02c";
    traj_series.label = "trajectory x1(t)";
    for (const auto& st : out.trajectory.states) {
        traj_series.x.push_back(st[0]);
        traj_series.y.push_back(reduced_rhs_two_pool(st[0], cfg.strategies, cfg.params));
    }
    svg::Markers rest;
    rest.label = "rest points";
    for (const auto& r : out.rest_points) {
        rest.x.push_back(r.x_star[0]);
        rest.y.push_back(0.0);
    }
    const auto plot_path = out_path(cfg, "phase.svg");
    csv::write_file(plot_path,
                    svg::plot("two-pool phase portrait (" + cfg.scenario + ")", "x_1",
                              "dx_1/dt", {field_series, zero, traj_series}, {rest}));
    written.push_back(plot_path);
    return written;
}

std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const SweepOutcome& out) {
    std::vector<std::string> written;
    const auto csv_path = out_path(cfg, "sweep.csv");
    csv::write_file(csv_path, sweep_csv(out));
    written.push_back(csv_path);

    std::vector<svg::Series> series;
    const std::size_t m = out.points.empty() ? 0 : out.points.front().x_star.size();
    for (std::size_t i = 0; i < m; ++i) {
        svg::Series s;
        s.color = kPalette[i % 8];
        s.label = "pool " + std::to_string(i + 1);
        for (const auto& p : out.points) {
            s.x.push_back(p.value);
            s.y.push_back(p.x_star[i]);
        }
        series.push_back(std::move(s));
    }
    const auto plot_path = out_path(cfg, "sweep.svg");
    csv::write_file(plot_path, svg::plot("equilibrium vs " + out.parameter, out.parameter,
                                         "population share at equilibrium", series));
    written.push_back(plot_path);
    return written;
}

std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const ClassifyOutcome& out) {
    std::vector<std::string> written;
    const auto csv_path = out_path(cfg, "equilibria.csv");
    csv::write_file(csv_path, csv::equilibria_csv(out.reports));
    written.push_back(csv_path);
    const auto text_path = out_path(cfg, "equilibria.txt");
    csv::write_file(text_path, csv::equilibria_text(out.reports));
    written.push_back(text_path);
    return written;
}

}  // namespace poolgame
