#include "poolgame/stability.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "poolgame/game_model.hpp"
#include "poolgame/replicator.hpp"

namespace poolgame {

namespace {

constexpr double kRestPointTol = 1e-9;

void require_two_pools(std::span<const PoolStrategy> strategies) {
    if (strategies.size() != 2)
        throw std::invalid_argument("closed-form analysis needs exactly 2 pools");
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    return m;
}

// Slope of the 1-D reduced two-pool dynamics g(x) = x(1-x) B(x) with
// B(x) = (a-b)/(N S(x)) - p (w1-w2), S(x) = w1 x + w2 (1-x).
double reduced_slope(double x, std::span<const PoolStrategy> strategies,
                     const NetworkParams& params) {
    const double a = pool_reward_weight(strategies[0], params);
    const double b = pool_reward_weight(strategies[1], params);
    const double w1 = strategies[0].hash_rate;
    const double w2 = strategies[1].hash_rate;
    const double n = static_cast<double>(params.population);
    const double s = w1 * x + w2 * (1.0 - x);
    const double bracket = (a - b) / (n * s) - params.power_price * (w1 - w2);
    const double bracket_prime = -(a - b) * (w1 - w2) / (n * s * s);
    return (1.0 - 2.0 * x) * bracket + x * (1.0 - x) * bracket_prime;
}

// Orthonormal basis of the simplex tangent space {v : sum v = 0} (Helmert).
Eigen::MatrixXd tangent_basis(std::size_t m) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m - 1);
    for (std::size_t k = 1; k < m; ++k) {
        const double norm = std::sqrt(static_cast<double>(k) * static_cast<double>(k + 1));
        for (std::size_t i = 0; i < k; ++i) q(i, k - 1) = 1.0 / norm;
        q(k, k - 1) = -static_cast<double>(k) / norm;
    }
    return q;
}

bool is_vertex(const PopulationState& x) {
    std::size_t big = 0;
    for (double v : x.shares) {
        if (v > 1.0 - 1e-9) ++big;
        else if (v > 1e-9) return false;
    }
    return big == 1;
}

RestPointReport make_point(std::vector<double> shares, RestPointKind kind, bool feasible) {
    RestPointReport r;
    r.x_star = PopulationState(std::move(shares));
    r.kind = kind;
    r.feasible = feasible;
    return r;
}

}  // namespace

const char* to_string(RestPointKind k) {
    return k == RestPointKind::Vertex ? "vertex" : "interior";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::ESS: return "ESS";
        case Verdict::NonESS: return "non-ESS";
        case Verdict::Degenerate: return "degenerate";
        default: return "unclassified";
    }
}

EquilibriumCoefficients coefficients_ab(std::span<const PoolStrategy> strategies,
                                        const NetworkParams& params) {
    require_two_pools(strategies);
    return {pool_reward_weight(strategies[0], params),
            pool_reward_weight(strategies[1], params)};
}

std::vector<RestPointReport> rest_points_two_pool(std::span<const PoolStrategy> strategies,
                                                  const NetworkParams& params) {
    require_two_pools(strategies);
    for (const auto& s : strategies) validate(s);
    validate(params);

    std::vector<RestPointReport> points;
    points.push_back(make_point({0.0, 1.0}, RestPointKind::Vertex, true));
    points.push_back(make_point({1.0, 0.0}, RestPointKind::Vertex, true));

    const auto [a, b] = coefficients_ab(strategies, params);
    const double w1 = strategies[0].hash_rate;
    const double w2 = strategies[1].hash_rate;
    const double n = static_cast<double>(params.population);
    const double p = params.power_price;

    if (w1 != w2) {
        const double x = (a - b) / (n * p * (w1 - w2) * (w1 - w2)) - w2 / (w1 - w2);
        const bool feasible = std::isfinite(x) && x > 0.0 && x < 1.0;
        points.push_back(make_point({x, 1.0 - x}, RestPointKind::Interior, feasible));
        return points;
    }

    // Equal hash rates make the closed form singular. Identical reward
    // weights then zero the whole field; otherwise look for interior roots
    // of the reduced dynamics by bracketed bisection.
    if (std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)))
        throw std::domain_error("degenerate strategies: the two pools are equivalent and every "
                                "state is a rest point");
    auto bracket = [&](double x) {
        const double s = w1 * x + w2 * (1.0 - x);
        return (a - b) / (n * s) - p * (w1 - w2);
    };
    constexpr int kGrid = 1024;
    double prev_x = 1.0 / kGrid;
    double prev_f = bracket(prev_x);
    for (int i = 2; i < kGrid; ++i) {
        const double x = static_cast<double>(i) / kGrid;
        const double f = bracket(x);
        if ((prev_f < 0.0) != (f < 0.0)) {
            double lo = prev_x, hi = x;
            double flo = prev_f;
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = bracket(mid);
                if ((flo < 0.0) == (fmid < 0.0)) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            const double root = 0.5 * (lo + hi);
            points.push_back(make_point({root, 1.0 - root}, RestPointKind::Interior, true));
        }
        prev_x = x;
        prev_f = f;
    }
    return points;
}

std::array<std::array<double, 2>, 2> jacobian_two_pool_analytic(
    const PopulationState& x, std::span<const PoolStrategy> strategies,
    const NetworkParams& params) {
    require_two_pools(strategies);
    if (x.size() != 2) throw std::invalid_argument("state must have 2 components");
    const auto [a, b] = coefficients_ab(strategies, params);
    const double w1 = strategies[0].hash_rate;
    const double w2 = strategies[1].hash_rate;
    const double n = static_cast<double>(params.population);
    const double p = params.power_price;
    const double x1 = x[0], x2 = x[1];
    const double s = w1 * x1 + w2 * x2;
    const double ns = n * s;
    const double ns2 = n * s * s;

    std::array<std::array<double, 2>, 2> j{};
    j[0][0] = (1.0 - 2.0 * x1) * (a / ns - p * w1) - a * w1 * (x1 - x1 * x1) / ns2 -
              b * w2 * x2 * x2 / ns2 + p * w2 * x2;
    j[0][1] = x1 * (p * w2 - a * w2 * (1.0 - x1) / ns2 + b * w2 * x2 / ns2 - b / ns);
    j[1][0] = x2 * (p * w1 + a * w1 * x1 / ns2 - b * w1 * (1.0 - x2) / ns2 - a / ns);
    j[1][1] = (1.0 - 2.0 * x2) * (b / ns - p * w2) - b * w2 * (x2 - x2 * x2) / ns2 -
              a * w1 * x1 * x1 / ns2 + p * w1 * x1;
    return j;
}

std::vector<double> jacobian_numeric(const PopulationState& x,
                                     std::span<const PoolStrategy> strategies,
                                     const NetworkParams& params) {
    const std::size_t m = strategies.size();
    if (x.size() != m) throw std::invalid_argument("state and strategy list differ in length");
    std::vector<double> j(m * m);
    for (std::size_t col = 0; col < m; ++col) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[col]));
        PopulationState plus = x, minus = x;
        plus.shares[col] += h;
        minus.shares[col] -= h;
        const auto fp = replicator_rhs(plus, strategies, params);
        const auto fm = replicator_rhs(minus, strategies, params);
        for (std::size_t row = 0; row < m; ++row)
            j[row * m + col] = (fp[row] - fm[row]) / (2.0 * h);
    }
    return j;
}

MinorDeterminants minor_determinant_conditions(const PopulationState& x_star,
                                               RestPointKind kind,
                                               std::span<const PoolStrategy> strategies,
                                               const NetworkParams& params) {
    require_two_pools(strategies);
    auto [a, b] = coefficients_ab(strategies, params);
    double w1 = strategies[0].hash_rate;
    double w2 = strategies[1].hash_rate;
    const double n = static_cast<double>(params.population);
    const double p = params.power_price;

    MinorDeterminants out;
    if (kind == RestPointKind::Vertex) {
        // Printed conditions cover the x1 = 0 vertex; the other one follows
        // with the pool roles swapped.
        if (x_star[0] > 0.5) {
            std::swap(a, b);
            std::swap(w1, w2);
        }
        out.det_j11 = (a - b) / (n * w2) - p * (w1 - w2);
        out.det_j = out.det_j11 * (p * w2 - b / (n * w2));
    } else {
        const double c = a - b + n * p * w2 * (w2 - w1);
        out.det_j11 = c * (a * (w1 + w2) + w1 * (-2.0 * b + n * p * w1 * (w2 - w1))) /
                      (n * (a - b) * (w1 - w2) * (w1 - w2));
        out.det_j = p * c * (-b * w1 + a * w2) * (a - b + n * p * w1 * (w2 - w1)) /
                    (n * (a - b) * (a - b) * (w1 - w2));
    }
    out.pass = out.det_j11 < 0.0 && out.det_j > 0.0;
    return out;
}

AsymptoticConditions asymptotic_stability_conditions(std::span<const PoolStrategy> strategies,
                                                     const NetworkParams& params) {
    const auto [a, b] = coefficients_ab(strategies, params);
    const double w1 = strategies[0].hash_rate;
    const double w2 = strategies[1].hash_rate;

    AsymptoticConditions out;
    out.a_minus_b = a - b;
    out.cross_product = (b * w1 - a * w2) * (w2 - w1);
    out.cond_a_minus_b_negative = out.a_minus_b < 0.0;
    out.cond_cross_product_positive = out.cross_product > 0.0;
    const double scale_ab = std::max(std::abs(a), std::abs(b));
    const double scale_cross = std::max(std::abs(b * w1), std::abs(a * w2)) *
                               std::max(std::abs(w2 - w1), 1.0);
    out.degenerate = std::abs(out.a_minus_b) <= 1e-9 * scale_ab ||
                     std::abs(out.cross_product) <= 1e-9 * scale_cross;
    return out;
}

RestPointReport classify(const PopulationState& x_star,
                         std::span<const PoolStrategy> strategies, const NetworkParams& params) {
    const std::size_t m = strategies.size();
    const auto rhs = replicator_rhs(x_star, strategies, params);
    if (sup_norm(rhs) >= kRestPointTol)
        throw std::invalid_argument("classify: state is not a rest point (|rhs| >= 1e-9)");

    RestPointReport report;
    report.x_star = x_star;
    report.kind = is_vertex(x_star) ? RestPointKind::Vertex : RestPointKind::Interior;
    report.feasible = true;
    report.jacobian_numeric = jacobian_numeric(x_star, strategies, params);

    Eigen::MatrixXd j(m, m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) j(r, c) = report.jacobian_numeric[r * m + c];
    const Eigen::MatrixXd q = tangent_basis(m);
    const Eigen::MatrixXd reduced = q.transpose() * j * q;
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(reduced);

    double max_re = -std::numeric_limits<double>::infinity();
    double min_re = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const auto ev = solver.eigenvalues()(k);
        report.tangent_eigenvalues.emplace_back(ev.real(), ev.imag());
        max_re = std::max(max_re, ev.real());
        min_re = std::min(min_re, ev.real());
    }
    const double threshold =
        kRestPointTol * std::max(1.0, j.cwiseAbs().rowwise().sum().maxCoeff());
    if (max_re < -threshold) report.verdict = Verdict::ESS;
    else if (max_re > threshold) report.verdict = Verdict::NonESS;
    else report.verdict = Verdict::Degenerate;

    if (m == 2) {
        report.jacobian_analytic = jacobian_two_pool_analytic(x_star, strategies, params);
        report.printed_minors = minor_determinant_conditions(x_star, report.kind, strategies, params);
        report.asymptotic = asymptotic_stability_conditions(strategies, params);
        report.reduced_eigen = reduced_slope(x_star[0], strategies, params);

        const bool printed_pass = report.kind == RestPointKind::Interior
                                      ? (report.asymptotic->cond_a_minus_b_negative &&
                                         report.asymptotic->cond_cross_product_positive)
                                      : report.printed_minors->pass;
        report.printed_conditions_agree = printed_pass == (report.verdict == Verdict::ESS);
    }
    return report;
}

}  // namespace poolgame
