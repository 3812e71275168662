#include "citenet/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "citenet/error.hpp"

namespace citenet {

namespace {

void build_csr(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs,
               std::vector<std::size_t>& offsets, std::vector<NodeId>& targets) {
    offsets.assign(n + 1, 0);
    for (const auto& [u, v] : pairs) ++offsets[u + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    targets.resize(pairs.size());
    auto cursor = offsets;
    for (const auto& [u, v] : pairs) targets[cursor[u]++] = v;
    for (std::size_t v = 0; v < n; ++v)
        std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
                  targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
}

// Disjoint-set forest used for weak components.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;  // root is always the smallest member
    }

private:
    std::vector<std::size_t> parent_;
};

StageCounts counts(const CitationGraph& g) { return {g.node_count(), g.edge_count()}; }

void print_sizes(std::ostream& out, const std::vector<std::size_t>& sizes) {
    out << '[';
    for (std::size_t i = 0; i < sizes.size(); ++i) out << (i ? "," : "") << sizes[i];
    out << ']';
}

}  // namespace

CitationGraph::CitationGraph(std::vector<NodeInfo> sorted_nodes,
                             std::vector<std::pair<NodeId, NodeId>> edges)
    : nodes_(std::move(sorted_nodes)) {
    const std::size_t n = nodes_.size();
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    build_csr(n, edges, out_offsets_, out_targets_);

    std::vector<std::pair<NodeId, NodeId>> reversed;
    reversed.reserve(edges.size());
    for (const auto& [u, v] : edges) reversed.emplace_back(v, u);
    build_csr(n, reversed, in_offsets_, in_sources_);

    std::vector<std::pair<NodeId, NodeId>> both;
    both.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) {
        both.emplace_back(u, v);
        both.emplace_back(v, u);
    }
    std::sort(both.begin(), both.end());
    both.erase(std::unique(both.begin(), both.end()), both.end());
    build_csr(n, both, und_offsets_, und_targets_);
}

CitationGraph CitationGraph::from_parts(std::vector<NodeInfo> nodes, std::span<const IdEdge> edges) {
    std::sort(nodes.begin(), nodes.end(),
              [](const NodeInfo& a, const NodeInfo& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id.empty()) throw InvalidArgument("node with empty id");
        if (i > 0 && nodes[i].id == nodes[i - 1].id)
            throw InvalidArgument("duplicate node id '" + nodes[i].id + "'");
        if (nodes[i].in_core && !nodes[i].is_seed)
            throw InvalidArgument("node '" + nodes[i].id + "' is in the core but not a seed");
    }
    auto index_of = [&](const std::string& id) -> NodeId {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                                   [](const NodeInfo& n, const std::string& key) { return n.id < key; });
        if (it == nodes.end() || it->id != id)
            throw InvalidArgument("edge endpoint '" + id + "' is not a node");
        return static_cast<NodeId>(it - nodes.begin());
    };
    std::vector<std::pair<NodeId, NodeId>> indexed;
    indexed.reserve(edges.size());
    for (const auto& [src, dst] : edges) {
        if (src == dst) throw InvalidArgument("self-loop on '" + src + "'");
        indexed.emplace_back(index_of(src), index_of(dst));
    }
    return CitationGraph(std::move(nodes), std::move(indexed));
}

std::optional<NodeId> CitationGraph::find(std::string_view id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const NodeInfo& n, std::string_view key) { return n.id < key; });
    if (it == nodes_.end() || it->id != id) return std::nullopt;
    return static_cast<NodeId>(it - nodes_.begin());
}

bool CitationGraph::has_edge(NodeId u, NodeId v) const {
    auto succ = successors(u);
    return std::binary_search(succ.begin(), succ.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> CitationGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> result;
    result.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u)
        for (NodeId v : successors(u)) result.emplace_back(u, v);
    return result;
}

std::vector<IdEdge> CitationGraph::id_edges() const {
    std::vector<IdEdge> result;
    result.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u)
        for (NodeId v : successors(u)) result.emplace_back(id(u), id(v));
    return result;
}

double CitationGraph::average_undirected_degree() const noexcept {
    if (nodes_.empty()) return 0.0;
    return static_cast<double>(und_targets_.size()) / static_cast<double>(nodes_.size());
}

CitationGraph CitationGraph::induced(const std::vector<bool>& keep) const {
    if (keep.size() != node_count()) throw InvalidArgument("induced: mask size mismatch");
    std::vector<NodeId> remap(node_count(), 0);
    std::vector<NodeInfo> kept;
    for (NodeId v = 0; v < node_count(); ++v) {
        if (!keep[v]) continue;
        remap[v] = static_cast<NodeId>(kept.size());
        kept.push_back(nodes_[v]);
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < node_count(); ++u) {
        if (!keep[u]) continue;
        for (NodeId v : successors(u))
            if (keep[v]) edges.emplace_back(remap[u], remap[v]);
    }
    return CitationGraph(std::move(kept), std::move(edges));
}

CitationGraph corpus_graph(const Corpus& corpus) {
    std::vector<NodeInfo> nodes;
    std::vector<IdEdge> edges;
    for (const auto& doc : corpus.documents()) {
        nodes.push_back({doc.id, false, false});
        for (const auto& ref : doc.references)
            if (corpus.contains(ref)) edges.emplace_back(doc.id, ref);
    }
    return CitationGraph::from_parts(std::move(nodes), edges);
}

std::vector<std::size_t> weak_component_labels(const CitationGraph& g, std::size_t* count) {
    UnionFind uf(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.successors(u)) uf.unite(u, v);
    std::vector<std::size_t> labels(g.node_count());
    std::unordered_map<std::size_t, std::size_t> root_label;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto [it, inserted] = root_label.try_emplace(uf.find(v), root_label.size());
        labels[v] = it->second;
    }
    if (count) *count = root_label.size();
    return labels;
}

std::vector<std::size_t> weak_component_sizes(const CitationGraph& g) {
    std::size_t count = 0;
    const auto labels = weak_component_labels(g, &count);
    std::vector<std::size_t> sizes(count, 0);
    for (auto l : labels) ++sizes[l];
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

std::vector<bool> largest_weak_component_mask(const CitationGraph& g) {
    std::size_t count = 0;
    const auto labels = weak_component_labels(g, &count);
    std::vector<std::size_t> sizes(count, 0);
    for (auto l : labels) ++sizes[l];
    // Labels are assigned in order of each component's smallest id, so the
    // first maximum is the lexicographic tie winner.
    const auto best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<bool> mask(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) mask[v] = labels[v] == best;
    return mask;
}

CitationGraph seed_graph(const Corpus& corpus, const std::set<std::string>& seeds) {
    std::vector<NodeInfo> nodes;
    std::vector<IdEdge> edges;
    for (const auto& id : seeds) {
        const Document* doc = corpus.find(id);
        if (!doc) throw InvalidArgument("seed '" + id + "' is not in the corpus");
        nodes.push_back({id, true, false});
        for (const auto& ref : doc->references)
            if (seeds.contains(ref)) edges.emplace_back(id, ref);
    }
    return CitationGraph::from_parts(std::move(nodes), edges);
}

CitationGraph largest_weak_component(const CitationGraph& g) {
    if (g.empty()) throw EmptyResult("empty graph");
    return g.induced(largest_weak_component_mask(g));
}

CitationGraph mark_core(const CitationGraph& g) {
    auto nodes = g.nodes();
    for (auto& n : nodes) {
        if (!n.is_seed) throw InvalidArgument("core node '" + n.id + "' is not a seed");
        n.in_core = true;
    }
    return CitationGraph::from_parts(std::move(nodes), g.id_edges());
}

Expansion expand_with_references(const Corpus& corpus, const CitationGraph& base) {
    Expansion result;
    auto nodes = base.nodes();
    auto edges = base.id_edges();
    std::set<std::string> added;
    for (const auto& node : base.nodes()) {
        if (!node.is_seed) continue;
        const Document* doc = corpus.find(node.id);
        if (!doc) throw InvalidArgument("graph node '" + node.id + "' is not in the corpus");
        for (const auto& ref : doc->references) {
            if (!corpus.contains(ref)) {
                ++result.skipped_missing;
                continue;
            }
            if (base.find(ref)) continue;  // already present; its edge exists from step (a)
            if (added.insert(ref).second) nodes.push_back({ref, false, false});
            edges.emplace_back(node.id, ref);
        }
    }
    result.graph = CitationGraph::from_parts(std::move(nodes), edges);
    return result;
}

CitationGraph remove_leaf_expanded(const CitationGraph& g, PruneMode mode) {
    CitationGraph current = g;
    while (true) {
        std::vector<bool> keep(current.node_count(), true);
        bool removed = false;
        for (NodeId v = 0; v < current.node_count(); ++v) {
            if (!current.node(v).is_seed && current.in_degree(v) <= 1) {
                keep[v] = false;
                removed = true;
            }
        }
        if (!removed) return current;
        current = current.induced(keep);
        if (mode == PruneMode::SinglePass) return current;
    }
}

CitationGraph prune_expanded(const CitationGraph& g, PruneMode mode) {
    return largest_weak_component(remove_leaf_expanded(g, mode));
}

CitationGraph close_expanded_edges(const Corpus& corpus, const CitationGraph& g) {
    auto edges = g.id_edges();
    for (const auto& node : g.nodes()) {
        if (node.is_seed) continue;
        const Document* doc = corpus.find(node.id);
        if (!doc) throw InvalidArgument("graph node '" + node.id + "' is not in the corpus");
        for (const auto& ref : doc->references)
            if (g.find(ref)) edges.emplace_back(node.id, ref);
    }
    return CitationGraph::from_parts(g.nodes(), edges);
}

BuildResult build_network(const Corpus& corpus, const Query& query, const BuildOptions& options) {
    BuildTrace trace;
    trace.options = options;

    const auto seeds = select_seeds(corpus, query);
    trace.seed_matches = seeds.size();
    if (seeds.empty()) throw EmptyResult("no seed matches");

    const CitationGraph seeded = seed_graph(corpus, seeds);
    trace.seed_stage = counts(seeded);
    trace.seed_components = weak_component_sizes(seeded);

    const auto core_mask = largest_weak_component_mask(seeded);
    const CitationGraph core = mark_core(seeded.induced(core_mask));
    if (core.empty()) throw EmptyResult("empty core");
    trace.core = counts(core);

    CitationGraph base = core;
    if (options.expand_from == ExpandFrom::AllSeeds) {
        auto nodes = seeded.nodes();
        for (NodeId v = 0; v < seeded.node_count(); ++v) nodes[v].in_core = core_mask[v];
        base = CitationGraph::from_parts(std::move(nodes), seeded.id_edges());
    }

    auto expansion = expand_with_references(corpus, base);
    trace.expanded = counts(expansion.graph);
    trace.skipped_missing = expansion.skipped_missing;

    const CitationGraph leafless = remove_leaf_expanded(expansion.graph, options.prune);
    for (const auto& n : expansion.graph.nodes())
        if (!leafless.find(n.id)) trace.pruned_ids.push_back(n.id);
    trace.after_leaf_removal = counts(leafless);
    trace.pruned_components = weak_component_sizes(leafless);

    const CitationGraph pruned = largest_weak_component(leafless);
    trace.pruned = counts(pruned);

    CitationGraph closed = close_expanded_edges(corpus, pruned);
    trace.closed = counts(closed);
    return {std::move(closed), std::move(trace)};
}

std::string BuildTrace::report() const {
    std::ostringstream out;
    out << "expand_from: " << (options.expand_from == ExpandFrom::Core ? "core" : "all-seeds") << '\n'
        << "prune: " << (options.prune == PruneMode::SinglePass ? "single-pass" : "fixpoint") << '\n'
        << "seed_matches: " << seed_matches << '\n'
        << "step_a_seed_graph: nodes=" << seed_stage.nodes << " edges=" << seed_stage.edges << '\n'
        << "step_a_components: ";
    print_sizes(out, seed_components);
    out << '\n'
        << "step_a_core: nodes=" << core.nodes << " edges=" << core.edges << '\n'
        << "step_b_expanded: nodes=" << expanded.nodes << " edges=" << expanded.edges << '\n'
        << "step_b_skipped_missing_references: " << skipped_missing << '\n'
        << "step_c_removed_leaf_nodes: " << pruned_ids.size() << '\n'
        << "step_c_after_leaf_removal: nodes=" << after_leaf_removal.nodes
        << " edges=" << after_leaf_removal.edges << '\n'
        << "step_c_components: ";
    print_sizes(out, pruned_components);
    out << '\n'
        << "step_c_pruned: nodes=" << pruned.nodes << " edges=" << pruned.edges << '\n'
        << "step_d_closed: nodes=" << closed.nodes << " edges=" << closed.edges << '\n'
        << "removed_ids:";
    for (const auto& id : pruned_ids) out << ' ' << id;
    out << '\n';
    return out.str();
}

}  // namespace citenet
