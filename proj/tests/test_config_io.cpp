#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "poolgame/config.hpp"
#include "poolgame/csv.hpp"
#include "poolgame/experiments.hpp"
#include "poolgame/svg.hpp"

using namespace poolgame;

namespace {

const std::string kSample = R"(
# two-pool sample scenario
scenario = sample
engine = both
seed = 7

params.delay_coeff = 0.005
params.mean_block_interval = 600
params.coinbase_reward = 1000
params.fee_rate = 2
params.power_price = 0.01
params.population = 5000

pools.count = 2
pools.1.hash_rate = 30
pools.1.block_size = 100
pools.2.hash_rate = 20
pools.2.block_size = 100

initial = 0.75,0.25
ode.step = 0.1
ode.max_time = 10000
agents.max_rounds = 1500
sweep.parameter = delay_coeff
sweep.values = 0.005, 0.01, 0.05
)";

}  // namespace

TEST_CASE("config round trip") {
    const auto cfg = parse_config(kSample);
    CHECK(cfg.scenario == "sample");
    CHECK(cfg.engine == Engine::Both);
    CHECK(cfg.seed == 7);
    CHECK(cfg.strategies.size() == 2);
    CHECK(cfg.strategies[0].hash_rate == 30.0);
    CHECK(cfg.strategies[1].block_size == 100.0);
    CHECK(cfg.params.population == 5000);
    CHECK(cfg.initial == "0.75,0.25");
    CHECK(cfg.agents.max_rounds == 1500);
    REQUIRE(cfg.sweep.has_value());
    CHECK(cfg.sweep->parameter == "delay_coeff");
    CHECK(cfg.sweep->values == std::vector<double>{0.005, 0.01, 0.05});
}

TEST_CASE("config errors name the offending key") {
    CHECK_THROWS_WITH_AS(parse_config("bogus.key = 1\npools.count = 2\n"),
                         doctest::Contains("bogus.key"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("pools.count = 2\npools.1.hash_rate = fast\n"),
                         doctest::Contains("pools.1.hash_rate"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("pools.count = 1\n"), doctest::Contains("pools.count"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("pools.count = 2\npools.3.hash_rate = 1\n"),
                         doctest::Contains("pools.3.hash_rate"), ConfigError);

    SUBCASE("strategy and parameter ranges") {
        std::string base = "pools.count = 2\npools.1.hash_rate = 30\npools.1.block_size = 100\n"
                           "pools.2.hash_rate = 20\npools.2.block_size = 100\n";
        CHECK_THROWS_WITH_AS(parse_config(base + "params.power_price = -1\n"),
                             doctest::Contains("params.power_price"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_config(base + "initial = 0.7,0.7\n"),
                             doctest::Contains("initial"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_config(base + "initial = 0.5,0.25,0.25\n"),
                             doctest::Contains("initial"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_config(base + "engine = turbo\n"),
                             doctest::Contains("engine"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_config(base + "sweep.parameter = block_size\n"
                                                 "sweep.values = 1,2\n"),
                             doctest::Contains("sweep.parameter"), ConfigError);
    }
}

TEST_CASE("presets") {
    for (const auto* name : {"fig1", "fig3", "fig4"}) {
        CHECK(is_preset(name));
        const auto cfg = preset(name);
        CHECK(cfg.scenario == name);
        CHECK(cfg.params.population == 5000);
    }
    const auto fig1 = preset("fig1");
    CHECK(fig1.strategies.size() == 2);
    CHECK(fig1.initial == "0.75,0.25");
    const auto fig3 = preset("fig3");
    REQUIRE(fig3.sweep.has_value());
    CHECK(fig3.sweep->parameter == "delay_coeff");
    CHECK(fig3.sweep->values.front() == 0.005);
    const auto fig4 = preset("fig4");
    CHECK(fig4.strategies.size() == 4);
    CHECK(fig4.ode.convergence_tol == 1e-12);
    CHECK_FALSE(is_preset("fig2"));
    CHECK_THROWS_AS(load_config("no_such_file.conf"), ConfigError);
}

TEST_CASE("scenario key pulls in a preset base") {
    const auto cfg = parse_config("scenario = fig1\nparams.delay_coeff = 0.01\n");
    CHECK(cfg.strategies.size() == 2);
    CHECK(cfg.params.delay_coeff == 0.01);
    CHECK(cfg.params.coinbase_reward == 1000.0);
}

TEST_CASE("with_parameter covers the sweepable set") {
    NetworkParams base{0.005, 600.0, 1000.0, 2.0, 0.01, 5000};
    CHECK(with_parameter(base, "delay_coeff", 0.02).delay_coeff == 0.02);
    CHECK(with_parameter(base, "power_price", 0.5).power_price == 0.5);
    CHECK(with_parameter(base, "fee_rate", 3.0).fee_rate == 3.0);
    CHECK(with_parameter(base, "coinbase_reward", 9.0).coinbase_reward == 9.0);
    CHECK(with_parameter(base, "population", 100.0).population == 100);
    CHECK_THROWS_AS(with_parameter(base, "block_size", 1.0), ConfigError);
}

TEST_CASE("trajectory CSV layout and determinism") {
    const auto cfg = preset("fig1");
    IntegratorConfig quick = cfg.ode;
    quick.max_time = 50.0;
    const auto a = integrate(PopulationState{0.75, 0.25}, cfg.strategies, cfg.params, quick);
    const auto b = integrate(PopulationState{0.75, 0.25}, cfg.strategies, cfg.params, quick);
    const auto csv_a = csv::trajectory_csv(a, {"seed=7 rate_scale=1"});
    const auto csv_b = csv::trajectory_csv(b, {"seed=7 rate_scale=1"});
    CHECK(csv_a == csv_b);
    CHECK(csv_a.rfind("# seed=7 rate_scale=1\n", 0) == 0);
    CHECK(csv_a.find("t,x_1,x_2,y_1,y_2,mean_payoff\n") != std::string::npos);
    CHECK(csv_a.find("0,0.75,0.25,") != std::string::npos);
}

TEST_CASE("nine significant digits in emitted floats") {
    CHECK(csv::fmt(0.123456789123) == "0.123456789");
    CHECK(csv::fmt(1.0) == "1");
    CHECK(csv::fmt(-2.5e-7) == "-2.5e-07");
}

TEST_CASE("equilibria CSV shape") {
    const auto cfg = preset("fig1");
    auto points = rest_points_two_pool(cfg.strategies, cfg.params);
    std::vector<RestPointReport> reports;
    for (auto& p : points) reports.push_back(classify(p.x_star, cfg.strategies, cfg.params));
    const auto text = csv::equilibria_csv(reports);
    CHECK(text.find("x_star_1,x_star_2,kind,feasible,detJ11,detJ,t2_cond1,t2_cond2,reduced_eig,"
                    "verdict\n") != std::string::npos);
    CHECK(text.find("ESS") != std::string::npos);
    CHECK(text.find("non-ESS") != std::string::npos);

    const auto longform = csv::equilibria_text(reports);
    CHECK(longform.find("rest_point.3.verdict = ESS") != std::string::npos);
    CHECK(longform.find("printed_conditions_agree = no") != std::string::npos);
}

TEST_CASE("svg plots are deterministic and well formed") {
    svg::Series s;
    s.x = {0.0, 1.0, 2.0};
    s.y = {0.0, 0.5, 0.25};
    s.label = "pool 1";
    const auto a = svg::plot("demo", "t", "x", {s});
    const auto b = svg::plot("demo", "t", "x", {s});
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("polyline") != std::string::npos);
}

TEST_CASE("sweep points match an independent rest-point recomputation") {
    auto cfg = preset("fig3");
    const auto outcome = run_sweep(cfg);
    REQUIRE(outcome.points.size() == cfg.sweep->values.size());
    for (const std::size_t spot : {std::size_t{0}, std::size_t{2}, std::size_t{5}}) {
        const auto params =
            with_parameter(cfg.params, "delay_coeff", cfg.sweep->values[spot]);
        const auto points = rest_points_two_pool(cfg.strategies, params);
        CHECK(outcome.points[spot].x_star[0] ==
              doctest::Approx(points[2].x_star[0]).epsilon(1e-12));
        CHECK(outcome.points[spot].interior_closed_form);
        CHECK(outcome.points[spot].verdict == Verdict::ESS);
    }
}

TEST_CASE("equilibrium share responds monotonically to the power price") {
    auto cfg = preset("fig1");
    cfg.sweep = SweepSpec{"power_price", {0.006, 0.008, 0.01, 0.012}};
    const auto outcome = run_sweep(cfg);
    for (std::size_t i = 1; i < outcome.points.size(); ++i)
        CHECK(outcome.points[i].x_star[0] < outcome.points[i - 1].x_star[0]);
}

TEST_CASE("both engines land on the same equilibrium") {
    auto cfg = preset("fig1");
    cfg.engine = Engine::Both;
    cfg.seed = 7;
    const auto outcome = run_evolve(cfg);
    REQUIRE(outcome.ode.has_value());
    REQUIRE(outcome.agents.has_value());
    CHECK(outcome.converged);
    CHECK(std::abs(outcome.ode->final_state()[0] - outcome.agents->final_state()[0]) < 0.02);
}

TEST_CASE("phase portrait of the running example") {
    const auto cfg = preset("fig1");
    const auto outcome = run_phase(cfg);
    REQUIRE(outcome.grid_x.size() >= 200);
    CHECK(outcome.rest_points.size() == 3);

    // Attractor between two repelling vertices: the field is positive left
    // of the interior point and negative right of it.
    const double x_star = 0.3980008331019001;
    for (std::size_t i = 0; i < outcome.grid_x.size(); ++i) {
        const double x = outcome.grid_x[i];
        if (x > 1e-6 && x < x_star - 1e-6) CHECK(outcome.grid_rate[i] > 0.0);
        if (x > x_star + 1e-6 && x < 1.0 - 1e-6) CHECK(outcome.grid_rate[i] < 0.0);
    }
}

TEST_CASE("phase portrait of equivalent pools is identically zero") {
    auto cfg = preset("fig1");
    cfg.params.delay_coeff = 0.0;
    cfg.strategies = {{25.0, 100.0}, {25.0, 100.0}};
    cfg.initial = "0.6,0.4";
    const auto outcome = run_phase(cfg);
    for (const double r : outcome.grid_rate) CHECK(r == 0.0);
    CHECK(outcome.rest_points.empty());
}

TEST_CASE("classifying equivalent pools flags everything degenerate") {
    auto cfg = preset("fig1");
    cfg.strategies = {{25.0, 100.0}, {25.0, 100.0}};
    cfg.initial = "0.6,0.4";
    const auto outcome = run_classify(cfg);
    REQUIRE(!outcome.reports.empty());
    for (const auto& r : outcome.reports) CHECK(r.verdict == Verdict::Degenerate);
}

TEST_CASE("kernel selection is configurable") {
    const auto cfg = parse_config("scenario = fig1\nagents.kernel = scalar\n");
    CHECK(cfg.agents.kernel == kernels::Impl::Scalar);
    CHECK_THROWS_WITH_AS(parse_config("scenario = fig1\nagents.kernel = sse9\n"),
                         doctest::Contains("agents.kernel"), ConfigError);
}

TEST_CASE("solve_equilibrium prefers the closed form and falls back to the ODE") {
    auto cfg = preset("fig1");
    const auto closed = solve_equilibrium(cfg, 0.0);
    CHECK(closed.interior_closed_form);
    CHECK(closed.x_star[0] == doctest::Approx(0.3980008331).epsilon(1e-9));
    CHECK(closed.verdict == Verdict::ESS);

    cfg.params.power_price = 0.1;  // interior point infeasible
    const auto fallback = solve_equilibrium(cfg, 0.0);
    CHECK_FALSE(fallback.interior_closed_form);
    CHECK(fallback.converged);
    CHECK(fallback.x_star[0] < 0.01);  // everyone drifts to the cheaper pool
}
