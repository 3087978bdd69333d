#pragma once

#include <string>
#include <vector>

namespace poolgame::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool dashed = false;
    std::string label;
};

struct Markers {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#d62728";
    bool filled = true;
    std::string label;
};

// Small static line plot: fixed canvas, computed axis limits, ~5 ticks per
// axis, legend from non-empty labels. Deterministic output.
std::string plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                 const std::vector<Series>& series, const std::vector<Markers>& markers = {});

}  // namespace poolgame::svg
