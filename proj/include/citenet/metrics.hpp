#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "citenet/community.hpp"
#include "citenet/graph.hpp"

namespace citenet {

struct DegreeTriple {
    std::size_t in = 0;
    std::size_t out = 0;
    std::size_t undirected = 0;

    bool operator==(const DegreeTriple&) const = default;
};

std::vector<DegreeTriple> degrees(const CitationGraph& g);

/// Local clustering on the undirected projection; 0 when degree < 2.
std::vector<double> clustering(const CitationGraph& g);

/// Unnormalized directed betweenness over ordered pairs, endpoints excluded,
/// unreachable pairs contributing nothing. Sources are split across
/// `threads` workers; partial sums are combined in worker order.
std::vector<double> betweenness(const CitationGraph& g, std::size_t threads = 1);

struct PathLengthStats {
    double mean = 0.0;
    double stddev = 0.0;  ///< population standard deviation over pair distances
    std::size_t pairs = 0;
    std::size_t component_size = 0;
};

/// Distances over unordered pairs of the largest undirected component.
/// Throws EmptyResult("no pairs") when that component has fewer than 2 nodes.
PathLengthStats mean_shortest_path(const CitationGraph& g, std::size_t threads = 1);

struct MeasureReport {
    std::vector<DegreeTriple> degree;
    std::vector<double> clustering;
    std::vector<double> betweenness;
    double avg_degree = 0.0;  ///< undirected
    std::optional<PathLengthStats> path_length;
};

MeasureReport measure(const CitationGraph& g, std::size_t threads = 1);

struct CommunityMeans {
    std::size_t community = 0;
    std::size_t size = 0;
    double in_degree = 0.0;
    double out_degree = 0.0;
    double undirected_degree = 0.0;
    double clustering = 0.0;
    double betweenness = 0.0;
};

/// Arithmetic means of each node measure over community members.
std::vector<CommunityMeans> community_means(const MeasureReport& report, const Partition& p);

/// Community-level citation digraph.
struct ReducedGraph {
    std::size_t communities = 0;
    std::vector<std::size_t> sizes;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> weights;  ///< (from, to) -> citations, from != to
    std::vector<std::size_t> in_strength;   ///< citations received from other communities
    std::vector<std::size_t> out_strength;  ///< citations sent to other communities

    std::size_t total_weight() const;
    /// Edges kept for presentation: weight >= min_weight.
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> edges_at_least(std::size_t min_weight) const;
};

ReducedGraph reduce_by_community(const CitationGraph& g, const Partition& p);

}  // namespace citenet
