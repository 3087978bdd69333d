#pragma once

#include <string>
#include <vector>

#include "poolgame/replicator.hpp"
#include "poolgame/stability.hpp"

namespace poolgame::csv {

// %.9g, the fixed float format of every emitted table.
std::string fmt(double v);

void write_file(const std::string& path, const std::string& content);

// Header t,x_1..x_M[,y_1..y_M,mean_payoff]; one row per recorded step.
// Comment lines, if any, go first, prefixed with "# ".
std::string trajectory_csv(const Trajectory& traj,
                           const std::vector<std::string>& comments = {});

// Header x_star_1..M,kind,feasible,detJ11,detJ,t2_cond1,t2_cond2,reduced_eig,verdict.
std::string equilibria_csv(const std::vector<RestPointReport>& reports);

// Key-value long form of the same reports, including Jacobians, tangent
// eigenvalues and the printed-condition audit.
std::string equilibria_text(const std::vector<RestPointReport>& reports);

}  // namespace poolgame::csv
