#include "citenet/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "citenet/error.hpp"

namespace citenet {

namespace {

// Runs body(begin, end, worker) over contiguous source ranges.
template <typename Body>
void for_source_blocks(std::size_t n, std::size_t threads, Body body) {
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        body(std::size_t{0}, n, std::size_t{0});
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * chunk), end = std::min(n, begin + chunk);
        pool.emplace_back([=, &body] { body(begin, end, w); });
    }
}

constexpr std::size_t kBetweennessBlocks = 64;

// Single-source dependency accumulation on the directed graph.
struct BrandesWorkspace {
    explicit BrandesWorkspace(std::size_t n) : dist(n, -1), sigma(n, 0.0), delta(n, 0.0) {
        order.reserve(n);
    }

    void accumulate(const CitationGraph& g, NodeId s, std::vector<double>& centrality) {
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const NodeId v = order[head];
            for (NodeId w : g.successors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
            }
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            const NodeId w = order[i];
            for (NodeId v : g.predecessors(w))
                if (dist[v] >= 0 && dist[v] + 1 == dist[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) centrality[w] += delta[w];
        }
        for (NodeId v : order) {
            dist[v] = -1;
            sigma[v] = 0.0;
            delta[v] = 0.0;
        }
    }

    std::vector<long> dist;
    std::vector<double> sigma, delta;
    std::vector<NodeId> order;
};

}  // namespace

std::vector<DegreeTriple> degrees(const CitationGraph& g) {
    std::vector<DegreeTriple> d(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) d[v] = {g.in_degree(v), g.out_degree(v), g.undirected_degree(v)};
    return d;
}

std::vector<double> clustering(const CitationGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> c(n, 0.0);
    std::vector<char> mark(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        const auto nb = g.neighbors(v);
        const std::size_t k = nb.size();
        if (k < 2) continue;
        for (NodeId u : nb) mark[u] = 1;
        std::size_t links = 0;  // each neighbour-neighbour edge seen twice
        for (NodeId u : nb)
            for (NodeId w : g.neighbors(u)) links += mark[w];
        for (NodeId u : nb) mark[u] = 0;
        const double triangles = static_cast<double>(links / 2);
        c[v] = triangles / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
    }
    return c;
}

std::vector<double> betweenness(const CitationGraph& g, std::size_t threads) {
    const std::size_t n = g.node_count();
    // Sources are split into a fixed number of blocks whatever the thread
    // count, and block sums are combined in block order: the floating point
    // result is then identical for any number of threads.
    const std::size_t blocks = std::min<std::size_t>(n, kBetweennessBlocks);
    std::vector<std::vector<double>> partial(blocks, std::vector<double>(n, 0.0));
    std::atomic<std::size_t> next{0};
    for_source_blocks(std::max<std::size_t>(blocks, 1), threads, [&](std::size_t, std::size_t, std::size_t) {
        BrandesWorkspace ws(n);
        for (std::size_t b = next++; b < blocks; b = next++) {
            const std::size_t begin = b * n / blocks, end = (b + 1) * n / blocks;
            for (std::size_t s = begin; s < end; ++s) ws.accumulate(g, static_cast<NodeId>(s), partial[b]);
        }
    });
    std::vector<double> result(n, 0.0);
    for (const auto& p : partial)
        for (std::size_t v = 0; v < n; ++v) result[v] += p[v];
    return result;
}

PathLengthStats mean_shortest_path(const CitationGraph& g, std::size_t threads) {
    if (g.node_count() < 2) throw EmptyResult("no pairs");
    const auto mask = largest_weak_component_mask(g);
    std::vector<NodeId> members;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (mask[v]) members.push_back(v);
    if (members.size() < 2) throw EmptyResult("no pairs");

    const std::size_t n = g.node_count();
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, members.size());
    // Distance histograms are exact integers, so the combine order is irrelevant.
    std::vector<std::vector<std::size_t>> histogram(workers);
    for_source_blocks(members.size(), workers, [&](std::size_t begin, std::size_t end, std::size_t w) {
        std::vector<long> dist(n, -1);
        std::vector<NodeId> queue;
        queue.reserve(n);
        auto& hist = histogram[w];
        for (std::size_t i = begin; i < end; ++i) {
            const NodeId s = members[i];
            queue.assign(1, s);
            dist[s] = 0;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const NodeId v = queue[head];
                for (NodeId u : g.neighbors(v)) {
                    if (dist[u] >= 0) continue;
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                    if (u > s) {  // count each unordered pair once
                        const auto d = static_cast<std::size_t>(dist[u]);
                        if (hist.size() <= d) hist.resize(d + 1, 0);
                        ++hist[d];
                    }
                }
            }
            for (NodeId v : queue) dist[v] = -1;
        }
    });
    std::vector<std::size_t> total;
    for (const auto& h : histogram) {
        if (total.size() < h.size()) total.resize(h.size(), 0);
        for (std::size_t d = 0; d < h.size(); ++d) total[d] += h[d];
    }
    PathLengthStats stats;
    stats.component_size = members.size();
    double sum = 0.0;
    for (std::size_t d = 0; d < total.size(); ++d) {
        stats.pairs += total[d];
        sum += static_cast<double>(d) * static_cast<double>(total[d]);
    }
    stats.mean = sum / static_cast<double>(stats.pairs);
    double sq = 0.0;
    for (std::size_t d = 0; d < total.size(); ++d) {
        const double diff = static_cast<double>(d) - stats.mean;
        sq += diff * diff * static_cast<double>(total[d]);
    }
    stats.stddev = std::sqrt(sq / static_cast<double>(stats.pairs));
    return stats;
}

MeasureReport measure(const CitationGraph& g, std::size_t threads) {
    MeasureReport r;
    r.degree = degrees(g);
    r.clustering = clustering(g);
    r.betweenness = betweenness(g, threads);
    r.avg_degree = g.average_undirected_degree();
    try {
        r.path_length = mean_shortest_path(g, threads);
    } catch (const EmptyResult&) {
        r.path_length.reset();
    }
    return r;
}

std::vector<CommunityMeans> community_means(const MeasureReport& report, const Partition& p) {
    if (report.degree.size() != p.node_count()) throw InvalidArgument("community_means: partition does not cover report");
    std::vector<CommunityMeans> means(p.community_count());
    for (std::size_t c = 0; c < means.size(); ++c) means[c].community = c;
    for (std::size_t v = 0; v < p.node_count(); ++v) {
        auto& m = means[p.community(static_cast<NodeId>(v))];
        ++m.size;
        m.in_degree += static_cast<double>(report.degree[v].in);
        m.out_degree += static_cast<double>(report.degree[v].out);
        m.undirected_degree += static_cast<double>(report.degree[v].undirected);
        m.clustering += report.clustering[v];
        m.betweenness += report.betweenness[v];
    }
    for (auto& m : means) {
        if (m.size == 0) continue;
        const double s = static_cast<double>(m.size);
        m.in_degree /= s;
        m.out_degree /= s;
        m.undirected_degree /= s;
        m.clustering /= s;
        m.betweenness /= s;
    }
    return means;
}

std::size_t ReducedGraph::total_weight() const {
    std::size_t total = 0;
    for (const auto& [key, w] : weights) total += w;
    return total;
}

std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> ReducedGraph::edges_at_least(
    std::size_t min_weight) const {
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> kept;
    for (const auto& [key, w] : weights)
        if (w >= min_weight) kept.emplace_back(key, w);
    return kept;
}

ReducedGraph reduce_by_community(const CitationGraph& g, const Partition& p) {
    if (p.node_count() != g.node_count()) throw InvalidArgument("reduce_by_community: partition does not cover graph");
    ReducedGraph r;
    r.communities = p.community_count();
    r.sizes = p.sizes();
    r.in_strength.assign(r.communities, 0);
    r.out_strength.assign(r.communities, 0);
    for (const auto& [u, v] : g.edges()) {
        const std::size_t cu = p.community(u), cv = p.community(v);
        if (cu == cv) continue;
        ++r.weights[{cu, cv}];
        ++r.out_strength[cu];
        ++r.in_strength[cv];
    }
    return r;
}

}  // namespace citenet
