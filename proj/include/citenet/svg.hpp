#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "citenet/graph.hpp"
#include "citenet/layout.hpp"

namespace citenet::svg {

/// Fill colour of community c; communities past the palette share grey.
std::string community_color(std::size_t c);

std::string bar_chart(const std::string& title, const std::vector<std::string>& labels,
                      const std::vector<double>& values, const std::string& y_label);

struct SeriesPoint {
    double x = 0.0;
    double y = 0.0;
    std::optional<double> error;  ///< drawn as a vertical bar of +-error
};

struct Series {
    std::string name;
    std::size_t color = 0;
    std::vector<SeriesPoint> points;
};

std::string line_chart(const std::string& title, const std::vector<Series>& series, const std::string& x_label,
                       const std::string& y_label);

/// Nodes coloured by community (nullopt draws grey); edges as thin lines.
std::string network(const CitationGraph& g, const std::vector<Point>& positions,
                    const std::vector<std::optional<std::size_t>>& community);

}  // namespace citenet::svg
