#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citenet/corpus.hpp"

namespace citenet {

using NodeId = std::uint32_t;

struct NodeInfo {
    std::string id;
    bool is_seed = false;
    bool in_core = false;

    bool operator==(const NodeInfo&) const = default;
};

using IdEdge = std::pair<std::string, std::string>;

/// Simple directed citation graph. An edge (u, v) means u cites v.
///
/// Nodes are stored sorted by id, so NodeId order is lexicographic id order.
/// Out-, in- and undirected adjacency are kept as sorted CSR arrays.
class CitationGraph {
public:
    CitationGraph() = default;

    /// Validates and builds a graph. Duplicate edges collapse; self-loops,
    /// unknown endpoints, duplicate node ids and in_core without is_seed
    /// throw InvalidArgument.
    static CitationGraph from_parts(std::vector<NodeInfo> nodes, std::span<const IdEdge> edges);

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return out_targets_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }

    const NodeInfo& node(NodeId v) const { return nodes_[v]; }
    const std::string& id(NodeId v) const { return nodes_[v].id; }
    const std::vector<NodeInfo>& nodes() const noexcept { return nodes_; }
    std::optional<NodeId> find(std::string_view id) const;

    std::span<const NodeId> successors(NodeId v) const {
        return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
    }
    std::span<const NodeId> predecessors(NodeId v) const {
        return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
    }
    /// Neighbours in the simple undirected projection (antiparallel pairs collapse).
    std::span<const NodeId> neighbors(NodeId v) const {
        return {und_targets_.data() + und_offsets_[v], und_targets_.data() + und_offsets_[v + 1]};
    }

    std::size_t out_degree(NodeId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
    std::size_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }
    std::size_t undirected_degree(NodeId v) const { return und_offsets_[v + 1] - und_offsets_[v]; }
    std::size_t undirected_edge_count() const noexcept { return und_targets_.size() / 2; }

    bool has_edge(NodeId u, NodeId v) const;

    /// Edges as (source, target) index pairs, sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const;
    std::vector<IdEdge> id_edges() const;

    /// Mean degree of the undirected projection, 0 for an empty graph.
    double average_undirected_degree() const noexcept;

    /// Subgraph induced by nodes with keep[v] == true. Flags carry over.
    CitationGraph induced(const std::vector<bool>& keep) const;

    bool operator==(const CitationGraph& other) const {
        return nodes_ == other.nodes_ && out_offsets_ == other.out_offsets_ &&
               out_targets_ == other.out_targets_;
    }

private:
    CitationGraph(std::vector<NodeInfo> sorted_nodes,
                  std::vector<std::pair<NodeId, NodeId>> edges);

    std::vector<NodeInfo> nodes_;
    std::vector<std::size_t> out_offsets_{0}, in_offsets_{0}, und_offsets_{0};
    std::vector<NodeId> out_targets_, in_sources_, und_targets_;
};

/// Directed graph over every corpus document and every in-corpus reference.
/// No node is flagged as seed.
CitationGraph corpus_graph(const Corpus& corpus);

/// Weakly connected components; label per node, components numbered by
/// first (smallest-id) member.
std::vector<std::size_t> weak_component_labels(const CitationGraph& g, std::size_t* count = nullptr);

/// Component sizes in descending order.
std::vector<std::size_t> weak_component_sizes(const CitationGraph& g);

/// Nodes of the largest weak component; ties go to the component holding the
/// lexicographically smallest id.
std::vector<bool> largest_weak_component_mask(const CitationGraph& g);

// --- network construction -------------------------------------------------

enum class ExpandFrom { Core, AllSeeds };
enum class PruneMode { SinglePass, Fixpoint };

/// Step (a): nodes = seeds, edges = citations among them. All nodes are seeds.
CitationGraph seed_graph(const Corpus& corpus, const std::set<std::string>& seeds);

/// Throws EmptyResult("empty graph") on an empty input.
CitationGraph largest_weak_component(const CitationGraph& g);

/// Returns g with in_core set on every node.
CitationGraph mark_core(const CitationGraph& g);

struct Expansion {
    CitationGraph graph;
    std::size_t skipped_missing = 0;  ///< references whose target is not in the corpus
};

/// Step (b): adds every in-corpus reference target of a source node that is
/// not already present, as a non-seed node, with the citing edge. With
/// ExpandFrom::Core the sources are the graph's nodes; with AllSeeds the
/// caller passes the full seed graph and every seed is a source.
Expansion expand_with_references(const Corpus& corpus, const CitationGraph& base);

/// Drops non-seed nodes with indegree <= 1, all at once; Fixpoint repeats
/// until none is left. No component selection.
CitationGraph remove_leaf_expanded(const CitationGraph& g, PruneMode mode = PruneMode::SinglePass);

/// Step (c): remove_leaf_expanded followed by largest_weak_component.
CitationGraph prune_expanded(const CitationGraph& g, PruneMode mode = PruneMode::SinglePass);

/// Step (d): adds citations from non-seed nodes to any other node present
/// (expanded or seed).
CitationGraph close_expanded_edges(const Corpus& corpus, const CitationGraph& g);

struct BuildOptions {
    ExpandFrom expand_from = ExpandFrom::Core;
    PruneMode prune = PruneMode::SinglePass;
};

struct StageCounts {
    std::size_t nodes = 0;
    std::size_t edges = 0;

    bool operator==(const StageCounts&) const = default;
};

/// Per-stage audit of build_network.
struct BuildTrace {
    std::size_t seed_matches = 0;
    StageCounts seed_stage;                      ///< step (a), before component selection
    std::vector<std::size_t> seed_components;    ///< component sizes of the seed graph, descending
    StageCounts core;                            ///< step (a) result
    StageCounts expanded;                        ///< step (b)
    std::size_t skipped_missing = 0;
    std::vector<std::string> pruned_ids;         ///< removed at step (c) for low indegree, sorted
    StageCounts after_leaf_removal;
    std::vector<std::size_t> pruned_components;  ///< component sizes after leaf removal, descending
    StageCounts pruned;                          ///< step (c) result
    StageCounts closed;                          ///< step (d) result
    BuildOptions options;

    std::string report() const;
};

struct BuildResult {
    CitationGraph graph;
    BuildTrace trace;
};

/// The four-step construction: seed graph, core, expansion, pruning, closing.
/// Throws EmptyResult("no seed matches") when the query matches nothing.
BuildResult build_network(const Corpus& corpus, const Query& query, const BuildOptions& options = {});

}  // namespace citenet
