#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "poolgame/game_model.hpp"

using namespace poolgame;

namespace {

// Two pools, same block size, different hash rates; the running example
// throughout the test suites.
const std::vector<PoolStrategy> kPools{{30.0, 100.0}, {20.0, 100.0}};
const NetworkParams kNet{0.005, 600.0, 1000.0, 2.0, 0.01, 5000};

PopulationState random_simplex(std::mt19937_64& gen, std::size_t m) {
    std::exponential_distribution<double> exp_dist(1.0);
    std::vector<double> v(m);
    double sum = 0.0;
    for (double& c : v) {
        c = exp_dist(gen);
        sum += c;
    }
    for (double& c : v) c /= sum;
    return PopulationState(std::move(v));
}

std::vector<PoolStrategy> random_strategies(std::mt19937_64& gen, std::size_t m) {
    std::uniform_real_distribution<double> rate(1.0, 50.0), size(0.0, 500.0);
    std::vector<PoolStrategy> s(m);
    for (auto& p : s) p = {rate(gen), size(gen)};
    return s;
}

}  // namespace

TEST_CASE("mine probability follows the weighted hash-rate lottery") {
    PopulationState half{0.5, 0.5};
    CHECK(mine_probability(0, half, kPools) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(mine_probability(1, half, kPools) == doctest::Approx(0.4).epsilon(1e-12));

    std::vector<PoolStrategy> solo{{30.0, 100.0}};
    CHECK(mine_probability(0, PopulationState{1.0}, solo) == 1.0);
    CHECK(mine_probability(0, PopulationState{0.0, 1.0}, kPools) == 0.0);
}

TEST_CASE("mine probabilities sum to one on inhabited states") {
    std::mt19937_64 gen(101);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(gen() % 5);
        const auto strategies = random_strategies(gen, m);
        const auto x = random_simplex(gen, m);
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) sum += mine_probability(i, x, strategies);
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("mine probability is invariant under common hash-rate rescaling") {
    std::mt19937_64 gen(102);
    std::uniform_real_distribution<double> scale_dist(1e-6, 1e6);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(gen() % 4);
        auto strategies = random_strategies(gen, m);
        const auto x = random_simplex(gen, m);
        const double base = mine_probability(0, x, strategies);
        const double c = scale_dist(gen);
        for (auto& s : strategies) s.hash_rate *= c;
        CHECK(mine_probability(0, x, strategies) == doctest::Approx(base).epsilon(1e-13));
    }
}

TEST_CASE("degenerate all-zero weighted rate is rejected") {
    CHECK_THROWS_AS(mine_probability(0, PopulationState{0.0, 0.0}, kPools), std::domain_error);
}

TEST_CASE("propagation delay is linear in block size") {
    CHECK(propagation_delay(100.0, kNet) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(propagation_delay(0.0, kNet) == 0.0);
    CHECK(propagation_delay(200.0, kNet) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("orphan probability") {
    // 1 - exp(-0.5/600), frozen from a high-precision evaluation
    CHECK(orphan_probability(100.0, kNet) ==
          doctest::Approx(8.329862075416379e-4).epsilon(1e-12));
    CHECK(orphan_probability(0.0, kNet) == 0.0);
    CHECK(orphan_probability(1e12, kNet) == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("monotone in block size and delay coefficient") {
        double prev = -1.0;
        for (double s = 0.0; s <= 1000.0; s += 50.0) {
            const double o = orphan_probability(s, kNet);
            CHECK(o >= prev);
            CHECK(o >= 0.0);
            CHECK(o < 1.0);
            prev = o;
        }
        NetworkParams slow = kNet;
        slow.delay_coeff = 0.05;
        CHECK(orphan_probability(100.0, slow) > orphan_probability(100.0, kNet));
    }
}

TEST_CASE("win probability discounts the mining lottery by survival") {
    PopulationState half{0.5, 0.5};
    CHECK(win_probability(0, half, kPools, kNet) ==
          doctest::Approx(0.5995002082754750).epsilon(1e-12));

    SUBCASE("never exceeds the mining probability") {
        std::mt19937_64 gen(103);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t m = 2 + static_cast<std::size_t>(gen() % 4);
            const auto strategies = random_strategies(gen, m);
            const auto x = random_simplex(gen, m);
            for (std::size_t i = 0; i < m; ++i)
                CHECK(win_probability(i, x, strategies, kNet) <=
                      mine_probability(i, x, strategies) * (1.0 + 1e-15));
        }
    }
    SUBCASE("equals it exactly without delay") {
        NetworkParams instant = kNet;
        instant.delay_coeff = 0.0;
        CHECK(win_probability(0, half, kPools, instant) == mine_probability(0, half, kPools));
    }
    CHECK(win_probability(0, PopulationState{0.0, 1.0}, kPools, kNet) == 0.0);
}

TEST_CASE("expected pool reward") {
    PopulationState half{0.5, 0.5};
    CHECK(expected_pool_reward(0, half, kPools, kNet) ==
          doctest::Approx(719.40024993057).epsilon(1e-12));

    NetworkParams no_reward = kNet;
    no_reward.coinbase_reward = 0.0;
    no_reward.fee_rate = 0.0;
    CHECK(expected_pool_reward(0, half, kPools, no_reward) == 0.0);
    CHECK(expected_pool_reward(0, PopulationState{0.0, 1.0}, kPools, kNet) == 0.0);
}

TEST_CASE("miner payoff matches the literal per-head evaluation") {
    PopulationState x{0.4, 0.6};
    const double y0 = miner_payoff(0, x, kPools, kNet);
    const double y1 = miner_payoff(1, x, kPools, kNet);
    CHECK(y0 == doctest::Approx(-2.4989586226249136e-4).epsilon(1e-10));
    CHECK(y1 == doctest::Approx(-1.6659724150832757e-4).epsilon(1e-10));
    CHECK(y0 == doctest::Approx(static_cast<double>(oracle::payoff(0, x, kPools, kNet)))
                    .epsilon(1e-12));
    CHECK(y1 == doctest::Approx(static_cast<double>(oracle::payoff(1, x, kPools, kNet)))
                    .epsilon(1e-12));

    SUBCASE("against the oracle on random instances") {
        std::mt19937_64 gen(104);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t m = 2 + static_cast<std::size_t>(gen() % 4);
            const auto strategies = random_strategies(gen, m);
            const auto xs = random_simplex(gen, m);
            for (std::size_t i = 0; i < m; ++i) {
                const double expected = static_cast<double>(oracle::payoff(i, xs, strategies, kNet));
                CHECK(miner_payoff(i, xs, strategies, kNet) ==
                      doctest::Approx(expected).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("miner payoff of an empty pool is undefined") {
    CHECK_THROWS_AS(miner_payoff(0, PopulationState{0.0, 1.0}, kPools, kNet), std::domain_error);
}

TEST_CASE("miner payoff decreases strictly with the power price") {
    std::mt19937_64 gen(105);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(gen() % 4);
        const auto strategies = random_strategies(gen, m);
        const auto x = random_simplex(gen, m);
        NetworkParams cheap = kNet, dear = kNet;
        cheap.power_price = 0.01;
        dear.power_price = 0.02;
        for (std::size_t i = 0; i < m; ++i)
            CHECK(miner_payoff(i, x, strategies, dear) < miner_payoff(i, x, strategies, cheap));
    }
}

TEST_CASE("single pool with free power splits the survived reward per head") {
    std::vector<PoolStrategy> solo{{30.0, 100.0}};
    NetworkParams free_power = kNet;
    free_power.power_price = 0.0;
    const double expected = 1200.0 * 0.9991670137924584 / 5000.0;
    CHECK(miner_payoff(0, PopulationState{1.0}, solo, free_power) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("mean payoff") {
    PopulationState x{0.4, 0.6};
    CHECK(mean_payoff(x, kPools, kNet) == doctest::Approx(-1.9991668981e-4).epsilon(1e-8));

    SUBCASE("vertex mean is the inhabited pool's payoff") {
        PopulationState vertex{1.0, 0.0};
        CHECK(mean_payoff(vertex, kPools, kNet) == miner_payoff(0, vertex, kPools, kNet));
    }
    SUBCASE("equal payoffs collapse to that payoff") {
        std::vector<PoolStrategy> twins{{25.0, 100.0}, {25.0, 100.0}};
        PopulationState xs{0.3, 0.7};
        const double y = miner_payoff(0, xs, twins, kNet);
        CHECK(miner_payoff(1, xs, twins, kNet) == y);
        CHECK(mean_payoff(xs, twins, kNet) == doctest::Approx(y).epsilon(1e-14));
    }
    SUBCASE("bounded by the inhabited extremes") {
        std::mt19937_64 gen(106);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t m = 2 + static_cast<std::size_t>(gen() % 4);
            const auto strategies = random_strategies(gen, m);
            const auto xs = random_simplex(gen, m);
            double lo = 1e300, hi = -1e300;
            for (std::size_t i = 0; i < m; ++i) {
                const double y = miner_payoff(i, xs, strategies, kNet);
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
            const double mean = mean_payoff(xs, strategies, kNet);
            CHECK(mean >= lo - 1e-12);
            CHECK(mean <= hi + 1e-12);
        }
    }
}

TEST_CASE("payoff vector marks empty pools with NaN") {
    const auto y = payoff_vector(PopulationState{0.0, 1.0}, kPools, kNet);
    CHECK(std::isnan(y[0]));
    CHECK(!std::isnan(y[1]));
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(mine_probability(2, PopulationState{0.5, 0.5}, kPools), std::out_of_range);
    CHECK_THROWS_AS(mine_probability(0, PopulationState{1.0}, kPools), std::invalid_argument);
    CHECK_THROWS_AS(validate(PoolStrategy{0.0, 10.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(PoolStrategy{10.0, -1.0}), std::invalid_argument);
    NetworkParams bad = kNet;
    bad.mean_block_interval = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}
