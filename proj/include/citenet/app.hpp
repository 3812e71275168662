#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "citenet/community.hpp"
#include "citenet/graph.hpp"
#include "citenet/synth.hpp"

namespace citenet {

/// Everything a CLI run needs. Defaults: 5 keywords, weight threshold 7,
/// split at 1970, window 1985-1995.
struct RunConfig {
    std::filesystem::path corpus;
    std::vector<std::string> query{"bjt", "bipolar junction transistor"};
    ExpandFrom expand_from = ExpandFrom::Core;
    PruneMode prune = PruneMode::SinglePass;
    double tau = 0.15;
    std::size_t trials = 20;
    std::uint64_t seed = 1;
    std::size_t top_k = 5;
    std::size_t min_weight = 7;
    std::size_t min_community_size = 0;  ///< presentation filter for tables and charts
    std::optional<int> split_year = 1970;
    std::optional<std::pair<int, int>> window = std::pair{1985, 1995};
    std::vector<int> snapshot_years;     ///< empty: every snapshot_step years plus the last year
    int snapshot_step = 10;
    std::size_t layout_iterations = 300;
    std::filesystem::path out = "out";
    std::size_t threads = 1;

    /// Throws InvalidArgument on out-of-range values.
    void validate() const;
};

/// Output file names inside RunConfig::out.
namespace files {
inline constexpr const char* kGraphml = "graph.graphml";
inline constexpr const char* kDot = "graph.dot";
inline constexpr const char* kEdges = "edges.csv";
inline constexpr const char* kTrace = "build_trace.txt";
inline constexpr const char* kLoadReport = "load_report.json";
inline constexpr const char* kPartition = "partition.csv";
inline constexpr const char* kCommunityLog = "communities.txt";
inline constexpr const char* kProfiles = "profiles.csv";
inline constexpr const char* kMeasures = "measures.csv";
inline constexpr const char* kCommunityMeans = "community_means.csv";
inline constexpr const char* kReducedDot = "reduced.dot";
inline constexpr const char* kReducedGraphml = "reduced.graphml";
inline constexpr const char* kReducedEdges = "reduced_edges.csv";
inline constexpr const char* kAnnotatedGraphml = "graph_communities.graphml";
inline constexpr const char* kSeries = "series.csv";
inline constexpr const char* kSeriesEarly = "series_early.csv";
inline constexpr const char* kSeriesLate = "series_late.csv";
inline constexpr const char* kSnapshots = "snapshots.csv";
inline constexpr const char* kWindow = "window.csv";
inline constexpr const char* kPositions = "positions.csv";
inline constexpr const char* kLayoutSvg = "layout.svg";
inline constexpr const char* kSynthCorpus = "corpus.jsonl";
inline constexpr const char* kGroundTruth = "ground_truth.csv";
}  // namespace files

struct CommandResult {
    std::vector<std::filesystem::path> written;
    std::string summary;
};

/// Loads the corpus, builds the network and writes graph, edge list and trace.
/// Throws EmptyResult when the query matches nothing.
CommandResult cmd_build(const RunConfig& config);

/// Reads the built graph, detects communities and writes partition,
/// profiles, measures, reduced network and per-community charts.
CommandResult cmd_analyze(const RunConfig& config);

/// Reads graph and partition; writes series, snapshots, window table,
/// path-length curve and charts.
CommandResult cmd_timeline(const RunConfig& config);

/// Force-directed positions and an SVG coloured by community when a
/// partition file is present.
CommandResult cmd_layout(const RunConfig& config);

/// Writes a synthetic corpus and its ground truth to config.out.
CommandResult cmd_synth(const RunConfig& config, const SynthSpec& spec);

/// build, analyze, timeline and layout in sequence.
CommandResult cmd_all(const RunConfig& config);

/// Snapshot years used by cmd_timeline for a graph whose dated nodes span
/// [first, last].
std::vector<int> default_snapshot_years(int first, int last, int step);

}  // namespace citenet
