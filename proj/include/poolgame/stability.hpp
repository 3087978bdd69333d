#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "poolgame/types.hpp"

namespace poolgame {

// Two-pool equilibrium coefficients: a and b are pool_reward_weight of pool
// 1 and pool 2. The interior rest point is
//   x* = (a - b) / (N p (w1 - w2)^2) - w2 / (w1 - w2).
struct EquilibriumCoefficients {
    double a = 0.0;
    double b = 0.0;
};

enum class RestPointKind { Vertex, Interior };
enum class Verdict { Unclassified, ESS, NonESS, Degenerate };

const char* to_string(RestPointKind k);
const char* to_string(Verdict v);

// Principal-minor determinants of the printed two-pool Jacobian conditions,
// evaluated in closed form. pass means det(J11) < 0 and det(J) > 0.
struct MinorDeterminants {
    double det_j11 = 0.0;
    double det_j = 0.0;
    bool pass = false;
};

// Large-population stability conditions, evaluated exactly as printed:
// a - b < 0 and (b w1 - a w2)(w2 - w1) > 0. Either quantity sitting at zero
// (relative to its natural scale) makes the test degenerate.
struct AsymptoticConditions {
    double a_minus_b = 0.0;
    double cross_product = 0.0;  // (b w1 - a w2) * (w2 - w1)
    bool cond_a_minus_b_negative = false;
    bool cond_cross_product_positive = false;
    bool degenerate = false;
};

struct RestPointReport {
    PopulationState x_star;
    RestPointKind kind = RestPointKind::Interior;
    bool feasible = false;
    Verdict verdict = Verdict::Unclassified;

    std::vector<double> jacobian_numeric;  // M*M row-major; empty until classified
    std::vector<std::complex<double>> tangent_eigenvalues;

    // Two-pool extras.
    std::optional<std::array<std::array<double, 2>, 2>> jacobian_analytic;
    std::optional<MinorDeterminants> printed_minors;
    std::optional<AsymptoticConditions> asymptotic;
    std::optional<double> reduced_eigen;  // g'(x*) of the 1-D reduced dynamics
    // False when the printed sign conditions and the numeric verdict
    // disagree (the flagship two-pool example is exactly such a case).
    bool printed_conditions_agree = true;
};

// Two-pool only; throws std::invalid_argument otherwise.
EquilibriumCoefficients coefficients_ab(std::span<const PoolStrategy> strategies,
                                        const NetworkParams& params);

// The three candidate rest points (x1 = 0, 1, interior), unclassified. The
// interior point is flagged feasible only when it lies strictly inside
// (0, 1). With w1 == w2 the closed form is singular: identical strategies
// are rejected (every state is a rest point), otherwise the interior root is
// searched by bracketed bisection of the reduced dynamics.
std::vector<RestPointReport> rest_points_two_pool(std::span<const PoolStrategy> strategies,
                                                  const NetworkParams& params);

// Closed-form partial derivatives of the two-pool vector field, with x1 and
// x2 treated as independent coordinates.
std::array<std::array<double, 2>, 2> jacobian_two_pool_analytic(
    const PopulationState& x, std::span<const PoolStrategy> strategies,
    const NetworkParams& params);

// Central finite differences of replicator_rhs, relative step 1e-6 per
// coordinate (floored at 1e-6). Row-major M*M.
std::vector<double> jacobian_numeric(const PopulationState& x,
                                     std::span<const PoolStrategy> strategies,
                                     const NetworkParams& params);

// Printed determinant conditions for the rest point described by (kind,
// x_star). The vertex with x1 = 1 uses the mirrored expressions.
MinorDeterminants minor_determinant_conditions(const PopulationState& x_star,
                                               RestPointKind kind,
                                               std::span<const PoolStrategy> strategies,
                                               const NetworkParams& params);

AsymptoticConditions asymptotic_stability_conditions(std::span<const PoolStrategy> strategies,
                                                     const NetworkParams& params);

// Full classification of a rest point (RHS sup-norm must be < 1e-9, else
// std::invalid_argument). The verdict comes from the eigenvalues of the
// numeric Jacobian projected onto the simplex tangent space; the printed
// two-pool conditions are evaluated and reported alongside for comparison.
RestPointReport classify(const PopulationState& x_star,
                         std::span<const PoolStrategy> strategies, const NetworkParams& params);

}  // namespace poolgame
