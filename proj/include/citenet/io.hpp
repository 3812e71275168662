#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citenet/community.hpp"
#include "citenet/corpus.hpp"
#include "citenet/graph.hpp"
#include "citenet/keywords.hpp"
#include "citenet/metrics.hpp"
#include "citenet/temporal.hpp"

namespace citenet {

/// Per-node attributes carried alongside a graph in GraphML and DOT files.
struct NodeAnnotations {
    std::vector<std::optional<int>> year;
    std::vector<std::optional<DocType>> doc_type;
    std::vector<std::optional<std::size_t>> community;

    bool operator==(const NodeAnnotations&) const = default;
};

/// Year and type from the corpus; community from p when given.
NodeAnnotations annotate(const CitationGraph& g, const Corpus& corpus, const Partition* p = nullptr);

struct GraphFile {
    CitationGraph graph;
    NodeAnnotations annotations;
};

void write_graphml(std::ostream& out, const CitationGraph& g, const NodeAnnotations& notes);
GraphFile read_graphml(std::istream& in);

void write_dot(std::ostream& out, const CitationGraph& g, const NodeAnnotations& notes);
GraphFile read_dot(std::istream& in);

/// `source,target` with a header row.
void write_edge_csv(std::ostream& out, const CitationGraph& g);
/// Nodes are the edge endpoints; no flags.
CitationGraph read_edge_csv(std::istream& in);

/// `node_id,community`.
void write_partition_csv(std::ostream& out, const CitationGraph& g, const Partition& p);
/// Throws InvalidArgument unless every graph node appears exactly once.
Partition read_partition_csv(std::istream& in, const CitationGraph& g);

/// `node_id,in_deg,out_deg,undeg,clustering,betweenness,community`.
void write_measures_csv(std::ostream& out, const CitationGraph& g, const MeasureReport& report, const Partition& p);
void write_community_means_csv(std::ostream& out, const std::vector<CommunityMeans>& means);

/// One row per community: size, core share, degree, document-type shares, then terms.
void write_profiles_csv(std::ostream& out, const std::vector<CommunityProfile>& profiles);

/// Reduced network; edges below min_weight are omitted.
void write_reduced_dot(std::ostream& out, const ReducedGraph& r, std::size_t min_weight);
void write_reduced_graphml(std::ostream& out, const ReducedGraph& r, std::size_t min_weight);
/// `source,target,weight` with every inter-community edge.
void write_reduced_csv(std::ostream& out, const ReducedGraph& r);

/// `community,year,count`.
void write_series_csv(std::ostream& out, const PublicationSeries& series);
/// `year,n,avg_k,mean_spl,std_spl`; absent path lengths are empty cells.
void write_snapshot_csv(std::ostream& out, const std::vector<PathLengthPoint>& points);
/// One row per community: full and window sizes, window share, mean degrees.
void write_window_csv(std::ostream& out, const WindowResult& window);

// --- small helpers shared with the CLI --------------------------------------

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
/// RFC 4180 quoting when needed.
std::string csv_field(std::string_view text);
/// Splits one CSV record (no embedded newlines).
std::vector<std::string> parse_csv_line(std::string_view line);

void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace citenet
