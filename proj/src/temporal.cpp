#include "citenet/temporal.hpp"

#include "citenet/error.hpp"

namespace citenet {

namespace {

std::vector<bool> year_mask(const std::vector<std::optional<int>>& years, std::optional<int> first, int last) {
    std::vector<bool> mask(years.size(), false);
    for (std::size_t v = 0; v < years.size(); ++v)
        mask[v] = years[v] && *years[v] <= last && (!first || *years[v] >= *first);
    return mask;
}

// Mean undirected degree per community, degrees taken in `g`.
std::vector<double> community_avg_degree(const CitationGraph& g, const std::vector<std::size_t>& community,
                                         std::size_t count, std::vector<std::size_t>& sizes) {
    std::vector<double> sum(count, 0.0);
    sizes.assign(count, 0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        sum[community[v]] += static_cast<double>(g.undirected_degree(v));
        ++sizes[community[v]];
    }
    for (std::size_t c = 0; c < count; ++c) sum[c] = sizes[c] ? sum[c] / static_cast<double>(sizes[c]) : 0.0;
    return sum;
}

}  // namespace

std::vector<std::optional<int>> node_years(const CitationGraph& g, const Corpus& corpus) {
    std::vector<std::optional<int>> years(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (const Document* doc = corpus.find(g.id(v))) years[v] = doc->year;
    return years;
}

PublicationSeries publication_series(const Corpus& corpus, const CitationGraph& g, const Partition& p) {
    if (p.node_count() != g.node_count()) throw InvalidArgument("publication_series: partition does not cover graph");
    PublicationSeries series;
    series.counts.resize(p.community_count());
    const auto years = node_years(g, corpus);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!years[v]) {
            ++series.undated;
            continue;
        }
        ++series.counts[p.community(v)][*years[v]];
    }
    return series;
}

std::pair<PublicationSeries, PublicationSeries> split_series(const PublicationSeries& series, int split_year) {
    PublicationSeries early, late;
    early.counts.resize(series.counts.size());
    late.counts.resize(series.counts.size());
    early.undated = late.undated = series.undated;
    for (std::size_t c = 0; c < series.counts.size(); ++c)
        for (const auto& [year, count] : series.counts[c])
            (year <= split_year ? early : late).counts[c][year] = count;
    return {std::move(early), std::move(late)};
}

Snapshot snapshot(const CitationGraph& g, const Corpus& corpus, int year) {
    Snapshot s;
    s.year = year;
    s.mask = year_mask(node_years(g, corpus), std::nullopt, year);
    s.graph = g.induced(s.mask);
    s.n = s.graph.node_count();
    s.avg_degree = s.graph.average_undirected_degree();
    return s;
}

WindowResult window_subnetwork(const CitationGraph& g, const Corpus& corpus, const Partition& p,
                               int first_year, int last_year) {
    if (first_year > last_year) throw InvalidArgument("window: first year is after last year");
    if (p.node_count() != g.node_count()) throw InvalidArgument("window: partition does not cover graph");
    WindowResult w;
    w.first_year = first_year;
    w.last_year = last_year;
    w.mask = year_mask(node_years(g, corpus), first_year, last_year);
    w.graph = g.induced(w.mask);

    std::vector<std::size_t> window_community;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (w.mask[v]) window_community.push_back(p.community(v));

    const std::size_t k = p.community_count();
    std::vector<std::size_t> full_sizes, window_sizes;
    const auto full_deg = community_avg_degree(g, p.labels(), k, full_sizes);
    const auto window_deg = community_avg_degree(w.graph, window_community, k, window_sizes);
    for (std::size_t c = 0; c < k; ++c) {
        WindowRow row;
        row.community = c;
        row.full_size = full_sizes[c];
        row.window_size = window_sizes[c];
        row.proportion_pct = full_sizes[c] ? 100.0 * static_cast<double>(window_sizes[c]) /
                                                 static_cast<double>(full_sizes[c])
                                           : 0.0;
        row.full_avg_degree = full_deg[c];
        row.window_avg_degree = window_deg[c];
        w.rows.push_back(row);
    }
    return w;
}

std::vector<PathLengthPoint> path_length_series(const CitationGraph& g, const Corpus& corpus,
                                                const std::vector<int>& years, std::size_t threads) {
    std::vector<PathLengthPoint> points;
    for (int y : years) {
        const Snapshot s = snapshot(g, corpus, y);
        PathLengthPoint pt{y, s.n, s.avg_degree, std::nullopt};
        try {
            pt.path_length = mean_shortest_path(s.graph, threads);
        } catch (const EmptyResult&) {
        }
        points.push_back(pt);
    }
    return points;
}

}  // namespace citenet
