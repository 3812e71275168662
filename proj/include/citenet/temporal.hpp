#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "citenet/community.hpp"
#include "citenet/corpus.hpp"
#include "citenet/graph.hpp"
#include "citenet/metrics.hpp"

namespace citenet {

/// Publication year of every graph node, looked up in the corpus.
std::vector<std::optional<int>> node_years(const CitationGraph& g, const Corpus& corpus);

struct PublicationSeries {
    std::vector<std::map<int, std::size_t>> counts;  ///< per community: year -> documents
    std::size_t undated = 0;                         ///< members without a year, excluded
};

PublicationSeries publication_series(const Corpus& corpus, const CitationGraph& g, const Partition& p);

/// Splits at split_year: first part holds years <= split_year. Both parts
/// keep one (possibly empty) series per community.
std::pair<PublicationSeries, PublicationSeries> split_series(const PublicationSeries& series, int split_year);

struct Snapshot {
    int year = 0;
    CitationGraph graph;      ///< induced on dated nodes with year <= this year
    std::vector<bool> mask;   ///< membership over the full graph's nodes
    std::size_t n = 0;
    double avg_degree = 0.0;  ///< undirected
};

Snapshot snapshot(const CitationGraph& g, const Corpus& corpus, int year);

struct WindowRow {
    std::size_t community = 0;
    std::size_t full_size = 0;
    std::size_t window_size = 0;
    double proportion_pct = 0.0;  ///< window_size / full_size * 100
    double full_avg_degree = 0.0;
    double window_avg_degree = 0.0;
};

struct WindowResult {
    int first_year = 0;
    int last_year = 0;
    CitationGraph graph;
    std::vector<bool> mask;
    std::vector<WindowRow> rows;
};

/// Induced subgraph on first_year <= year <= last_year, with per-community
/// size and undirected degree in both the window and the full network.
/// Throws InvalidArgument when first_year > last_year.
WindowResult window_subnetwork(const CitationGraph& g, const Corpus& corpus, const Partition& p,
                               int first_year, int last_year);

struct PathLengthPoint {
    int year = 0;
    std::size_t n = 0;
    double avg_degree = 0.0;
    std::optional<PathLengthStats> path_length;  ///< absent when fewer than 2 connected nodes
};

std::vector<PathLengthPoint> path_length_series(const CitationGraph& g, const Corpus& corpus,
                                                const std::vector<int>& years, std::size_t threads = 1);

}  // namespace citenet
