#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "citenet/graph.hpp"

namespace citenet {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct LayoutOptions {
    std::size_t iterations = 300;
    double spring_length = 1.0;
    std::uint64_t seed = 1;
};

/// Fruchterman-Reingold spring embedder on the undirected projection:
/// attraction d^2/k along edges, repulsion k^2/d between all pairs, linear
/// cooling. Output is centred on the origin. Deterministic under seed.
std::vector<Point> force_layout(const CitationGraph& g, const LayoutOptions& options = {});

}  // namespace citenet
