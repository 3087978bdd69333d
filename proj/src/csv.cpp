#include "poolgame/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace poolgame::csv {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& comments) {
    std::ostringstream out;
    for (const auto& c : comments) out << "# " << c << "\n";
    const std::size_t m = traj.states.empty() ? 0 : traj.states.front().size();
    const bool with_payoffs = !traj.payoffs.empty();

    out << "t";
    for (std::size_t i = 1; i <= m; ++i) out << ",x_" << i;
    if (with_payoffs) {
        for (std::size_t i = 1; i <= m; ++i) out << ",y_" << i;
        out << ",mean_payoff";
    }
    out << "\n";

    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        out << fmt(traj.times[k]);
        for (std::size_t i = 0; i < m; ++i) out << "," << fmt(traj.states[k][i]);
        if (with_payoffs) {
            double mean = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double y = traj.payoffs[k][i];
                out << "," << fmt(y);
                if (!std::isnan(y)) mean += traj.states[k][i] * y;
            }
            out << "," << fmt(mean);
        }
        out << "\n";
    }
    return out.str();
}

namespace {

std::string opt_fmt(bool present, double v) {
    return present ? fmt(v) : "nan";
}

std::string flag(bool b) { return b ? "1" : "0"; }

}  // namespace

std::string equilibria_csv(const std::vector<RestPointReport>& reports) {
    std::ostringstream out;
    const std::size_t m = reports.empty() ? 0 : reports.front().x_star.size();
    for (std::size_t i = 1; i <= m; ++i) out << (i == 1 ? "" : ",") << "x_star_" << i;
    out << ",kind,feasible,detJ11,detJ,t2_cond1,t2_cond2,reduced_eig,verdict\n";
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < m; ++i) out << (i == 0 ? "" : ",") << fmt(r.x_star[i]);
        out << "," << to_string(r.kind) << "," << flag(r.feasible);
        out << "," << opt_fmt(r.printed_minors.has_value(),
                              r.printed_minors ? r.printed_minors->det_j11 : 0.0);
        out << "," << opt_fmt(r.printed_minors.has_value(),
                              r.printed_minors ? r.printed_minors->det_j : 0.0);
        out << "," << (r.asymptotic ? flag(r.asymptotic->cond_a_minus_b_negative) : "na");
        out << "," << (r.asymptotic ? flag(r.asymptotic->cond_cross_product_positive) : "na");
        out << "," << opt_fmt(r.reduced_eigen.has_value(), r.reduced_eigen.value_or(0.0));
        out << "," << to_string(r.verdict) << "\n";
    }
    return out.str();
}

std::string equilibria_text(const std::vector<RestPointReport>& reports) {
    std::ostringstream out;
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const auto& r = reports[k];
        const std::string p = "rest_point." + std::to_string(k + 1) + ".";
        out << p << "x_star =";
        for (std::size_t i = 0; i < r.x_star.size(); ++i) out << " " << fmt(r.x_star[i]);
        out << "\n";
        out << p << "kind = " << to_string(r.kind) << "\n";
        out << p << "feasible = " << (r.feasible ? "yes" : "no") << "\n";
        out << p << "verdict = " << to_string(r.verdict) << "\n";
        if (!r.tangent_eigenvalues.empty()) {
            out << p << "tangent_eigenvalues =";
            for (const auto& ev : r.tangent_eigenvalues)
                out << " " << fmt(ev.real()) << (ev.imag() < 0 ? "-" : "+")
                    << fmt(std::abs(ev.imag())) << "i";
            out << "\n";
        }
        if (r.reduced_eigen) out << p << "reduced_eigenvalue = " << fmt(*r.reduced_eigen) << "\n";
        if (r.jacobian_analytic) {
            const auto& j = *r.jacobian_analytic;
            out << p << "jacobian_analytic = " << fmt(j[0][0]) << " " << fmt(j[0][1]) << " "
                << fmt(j[1][0]) << " " << fmt(j[1][1]) << "\n";
        }
        if (!r.jacobian_numeric.empty()) {
            out << p << "jacobian_numeric =";
            for (double v : r.jacobian_numeric) out << " " << fmt(v);
            out << "\n";
        }
        if (r.printed_minors) {
            out << p << "minors.detJ11 = " << fmt(r.printed_minors->det_j11) << "\n";
            out << p << "minors.detJ = " << fmt(r.printed_minors->det_j) << "\n";
            out << p << "minors.pass = " << (r.printed_minors->pass ? "yes" : "no") << "\n";
        }
        if (r.asymptotic) {
            out << p << "asymptotic.a_minus_b = " << fmt(r.asymptotic->a_minus_b) << "\n";
            out << p << "asymptotic.cross_product = " << fmt(r.asymptotic->cross_product) << "\n";
            out << p << "asymptotic.cond1 = " << (r.asymptotic->cond_a_minus_b_negative ? "yes" : "no")
                << "\n";
            out << p << "asymptotic.cond2 = "
                << (r.asymptotic->cond_cross_product_positive ? "yes" : "no") << "\n";
            out << p << "asymptotic.degenerate = " << (r.asymptotic->degenerate ? "yes" : "no")
                << "\n";
            out << p << "printed_conditions_agree = "
                << (r.printed_conditions_agree ? "yes" : "no") << "\n";
        }
    }
    return out.str();
}

}  // namespace poolgame::csv
