#include "citenet/app.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "citenet/corpus.hpp"
#include "citenet/error.hpp"
#include "citenet/io.hpp"
#include "citenet/keywords.hpp"
#include "citenet/layout.hpp"
#include "citenet/metrics.hpp"
#include "citenet/svg.hpp"
#include "citenet/temporal.hpp"

namespace citenet {

namespace fs = std::filesystem;

namespace {

// Charts show at most this many communities; tables show all.
constexpr std::size_t kChartCommunities = 10;

class Writer {
public:
    explicit Writer(const fs::path& dir) : dir_(dir) { fs::create_directories(dir_); }

    template <typename Fn>
    void stream(const char* name, Fn&& fn) {
        const fs::path path = dir_ / name;
        std::ostringstream out;
        fn(out);
        write_text_file(path, out.str());
        result.written.push_back(path);
    }

    void text(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        write_text_file(path, content);
        result.written.push_back(path);
    }

    CommandResult result;

private:
    fs::path dir_;
};

Corpus load(const RunConfig& config, LoadReport& report) {
    if (config.corpus.empty()) throw InvalidArgument("no corpus given");
    if (!fs::exists(config.corpus)) throw IoError("corpus not found: " + config.corpus.string());
    return load_corpus(config.corpus, report);
}

Corpus load(const RunConfig& config) {
    LoadReport report;
    return load(config, report);
}

CitationGraph load_graph(const RunConfig& config) {
    const fs::path path = config.out / files::kGraphml;
    if (!fs::exists(path)) throw IoError("built graph not found: " + path.string() + " (run build first)");
    std::istringstream in(read_text_file(path));
    return read_graphml(in).graph;
}

std::optional<Partition> load_partition(const RunConfig& config, const CitationGraph& g) {
    const fs::path path = config.out / files::kPartition;
    if (!fs::exists(path)) return std::nullopt;
    std::istringstream in(read_text_file(path));
    return read_partition_csv(in, g);
}

Partition require_partition(const RunConfig& config, const CitationGraph& g) {
    auto p = load_partition(config, g);
    if (!p) throw IoError("partition not found in " + config.out.string() + " (run analyze first)");
    return std::move(*p);
}

std::string community_label(std::size_t c) { return "C" + std::to_string(c); }

bool shown(const RunConfig& config, std::size_t size) { return size >= config.min_community_size; }

void measure_charts(Writer& w, const RunConfig& config, const std::vector<CommunityMeans>& means) {
    std::vector<std::string> labels;
    std::vector<double> in, out, und, cc, bc;
    for (const auto& m : means) {
        if (!shown(config, m.size)) continue;
        if (labels.size() == kChartCommunities) break;
        labels.push_back(community_label(m.community));
        in.push_back(m.in_degree);
        out.push_back(m.out_degree);
        und.push_back(m.undirected_degree);
        cc.push_back(m.clustering);
        bc.push_back(m.betweenness);
    }
    w.text("means_in_degree.svg", svg::bar_chart("mean indegree", labels, in, "k_in"));
    w.text("means_out_degree.svg", svg::bar_chart("mean outdegree", labels, out, "k_out"));
    w.text("means_degree.svg", svg::bar_chart("mean undirected degree", labels, und, "k"));
    w.text("means_clustering.svg", svg::bar_chart("mean clustering coefficient", labels, cc, "C"));
    w.text("means_betweenness.svg", svg::bar_chart("mean betweenness", labels, bc, "B"));
}

svg::Series to_series(const std::map<int, std::size_t>& counts, std::size_t c) {
    svg::Series s{community_label(c), c, {}};
    for (const auto& [year, n] : counts) s.points.push_back({static_cast<double>(year), static_cast<double>(n), {}});
    return s;
}

std::string series_chart(const std::string& title, const PublicationSeries& series, const Partition& p,
                         const RunConfig& config) {
    std::vector<svg::Series> lines;
    const auto sizes = p.sizes();
    for (std::size_t c = 0; c < series.counts.size() && lines.size() < kChartCommunities; ++c)
        if (shown(config, sizes[c])) lines.push_back(to_series(series.counts[c], c));
    return svg::line_chart(title, lines, "year", "publications");
}

}  // namespace

void RunConfig::validate() const {
    if (query.empty()) throw InvalidArgument("at least one query phrase is required");
    if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("tau must lie in (0, 1)");
    if (trials == 0) throw InvalidArgument("trials must be positive");
    if (threads == 0) throw InvalidArgument("threads must be positive");
    if (snapshot_step <= 0) throw InvalidArgument("snapshot step must be positive");
    if (window && window->first > window->second)
        throw InvalidArgument("window start " + std::to_string(window->first) + " is after end " +
                              std::to_string(window->second));
    if (out.empty()) throw InvalidArgument("output directory must be given");
}

std::vector<int> default_snapshot_years(int first, int last, int step) {
    if (step <= 0) throw InvalidArgument("snapshot step must be positive");
    std::vector<int> years;
    if (first > last) return years;
    // First multiple of step at or after `first`; floor division for negatives.
    int y = first / step * step;
    if (y < first) y += step;
    for (; y <= last; y += step) years.push_back(y);
    if (years.empty() || years.back() != last) years.push_back(last);
    return years;
}

CommandResult cmd_build(const RunConfig& config) {
    config.validate();
    LoadReport report;
    const Corpus corpus = load(config, report);
    Writer w(config.out);
    w.text(files::kLoadReport, report.to_json());

    const Query query = Query::from_phrases(config.query);
    BuildOptions options;
    options.expand_from = config.expand_from;
    options.prune = config.prune;
    const BuildResult built = build_network(corpus, query, options);
    const CitationGraph& g = built.graph;
    const NodeAnnotations notes = annotate(g, corpus);

    w.stream(files::kGraphml, [&](std::ostream& out) { write_graphml(out, g, notes); });
    w.stream(files::kDot, [&](std::ostream& out) { write_dot(out, g, notes); });
    w.stream(files::kEdges, [&](std::ostream& out) { write_edge_csv(out, g); });
    w.text(files::kTrace, built.trace.report());

    std::ostringstream summary;
    summary << "corpus: " << report.summary() << "\nnetwork: " << g.node_count() << " nodes, " << g.edge_count()
            << " edges\n";
    w.result.summary = summary.str();
    return std::move(w.result);
}

CommandResult cmd_analyze(const RunConfig& config) {
    config.validate();
    const Corpus corpus = load(config);
    const CitationGraph g = load_graph(config);
    Writer w(config.out);

    DetectOptions opts;
    opts.trials = config.trials;
    opts.seed = config.seed;
    opts.teleport = config.tau;
    opts.threads = config.threads;
    const Detection det = detect_communities(g, opts);
    const Partition& p = det.partition;

    w.stream(files::kPartition, [&](std::ostream& out) { write_partition_csv(out, g, p); });
    w.text(files::kCommunityLog, det.trial_log());

    auto profiles = community_profiles(corpus, g, p, config.top_k);
    std::erase_if(profiles, [&](const CommunityProfile& row) { return !shown(config, row.size); });
    w.stream(files::kProfiles, [&](std::ostream& out) { write_profiles_csv(out, profiles); });

    const MeasureReport report = measure(g, config.threads);
    w.stream(files::kMeasures, [&](std::ostream& out) { write_measures_csv(out, g, report, p); });
    auto means = community_means(report, p);
    std::erase_if(means, [&](const CommunityMeans& row) { return !shown(config, row.size); });
    w.stream(files::kCommunityMeans, [&](std::ostream& out) { write_community_means_csv(out, means); });
    measure_charts(w, config, means);

    const ReducedGraph reduced = reduce_by_community(g, p);
    w.stream(files::kReducedDot, [&](std::ostream& out) { write_reduced_dot(out, reduced, config.min_weight); });
    w.stream(files::kReducedGraphml,
             [&](std::ostream& out) { write_reduced_graphml(out, reduced, config.min_weight); });
    w.stream(files::kReducedEdges, [&](std::ostream& out) { write_reduced_csv(out, reduced); });

    const NodeAnnotations notes = annotate(g, corpus, &p);
    w.stream(files::kAnnotatedGraphml, [&](std::ostream& out) { write_graphml(out, g, notes); });

    std::ostringstream summary;
    summary << "communities: " << p.community_count() << "\ncodelength: " << format_double(det.codelength.total)
            << " bits (trial " << det.best_trial << ")\n";
    if (report.path_length)
        summary << "mean shortest path: " << format_double(report.path_length->mean) << " +- "
                << format_double(report.path_length->stddev) << '\n';
    w.result.summary = summary.str();
    return std::move(w.result);
}

CommandResult cmd_timeline(const RunConfig& config) {
    config.validate();
    const Corpus corpus = load(config);
    const CitationGraph g = load_graph(config);
    const Partition p = require_partition(config, g);
    Writer w(config.out);

    const PublicationSeries series = publication_series(corpus, g, p);
    w.stream(files::kSeries, [&](std::ostream& out) { write_series_csv(out, series); });
    if (config.split_year) {
        const auto [early, late] = split_series(series, *config.split_year);
        w.stream(files::kSeriesEarly, [&](std::ostream& out) { write_series_csv(out, early); });
        w.stream(files::kSeriesLate, [&](std::ostream& out) { write_series_csv(out, late); });
        const std::string split = std::to_string(*config.split_year);
        w.text("series_early.svg", series_chart("publications up to " + split, early, p, config));
        w.text("series_late.svg", series_chart("publications after " + split, late, p, config));
    } else {
        w.text("series.svg", series_chart("publications per year", series, p, config));
    }

    std::vector<int> years = config.snapshot_years;
    if (years.empty()) {
        std::optional<int> lo, hi;
        for (const auto& y : node_years(g, corpus))
            if (y) {
                lo = lo ? std::min(*lo, *y) : *y;
                hi = hi ? std::max(*hi, *y) : *y;
            }
        if (lo) years = default_snapshot_years(*lo, *hi, config.snapshot_step);
    }
    std::sort(years.begin(), years.end());
    years.erase(std::unique(years.begin(), years.end()), years.end());
    const auto points = path_length_series(g, corpus, years, config.threads);
    w.stream(files::kSnapshots, [&](std::ostream& out) { write_snapshot_csv(out, points); });

    svg::Series growth{"nodes", 0, {}}, degree{"<k>", 1, {}}, spl{"mean shortest path", 0, {}};
    for (const auto& pt : points) {
        growth.points.push_back({static_cast<double>(pt.year), static_cast<double>(pt.n), {}});
        degree.points.push_back({static_cast<double>(pt.year), pt.avg_degree, {}});
        if (pt.path_length)
            spl.points.push_back({static_cast<double>(pt.year), pt.path_length->mean, pt.path_length->stddev});
    }
    w.text("growth_nodes.svg", svg::line_chart("network size", {growth}, "year", "nodes"));
    w.text("growth_degree.svg", svg::line_chart("average degree", {degree}, "year", "<k>"));
    w.text("path_length.svg", svg::line_chart("mean shortest path length", {spl}, "year", "<l>"));

    if (config.window) {
        const WindowResult window = window_subnetwork(g, corpus, p, config.window->first, config.window->second);
        w.stream(files::kWindow, [&](std::ostream& out) { write_window_csv(out, window); });
        std::vector<std::string> labels;
        std::vector<double> share;
        for (const auto& row : window.rows) {
            if (!shown(config, row.full_size)) continue;
            if (labels.size() == kChartCommunities) break;
            labels.push_back(community_label(row.community));
            share.push_back(row.proportion_pct);
        }
        w.text("window.svg",
               svg::bar_chart("share published " + std::to_string(window.first_year) + "-" +
                                  std::to_string(window.last_year),
                              labels, share, "% of community"));
    }

    std::ostringstream summary;
    summary << "series: " << series.counts.size() << " communities, " << series.undated << " undated\n"
            << "snapshots: " << points.size() << '\n';
    w.result.summary = summary.str();
    return std::move(w.result);
}

CommandResult cmd_layout(const RunConfig& config) {
    config.validate();
    const CitationGraph g = load_graph(config);
    if (g.node_count() == 0) throw EmptyResult("empty graph");
    const auto p = load_partition(config, g);
    Writer w(config.out);

    LayoutOptions opts;
    opts.iterations = config.layout_iterations;
    opts.seed = config.seed;
    const auto pos = force_layout(g, opts);
    std::vector<std::optional<std::size_t>> community(g.node_count());
    if (p)
        for (NodeId v = 0; v < g.node_count(); ++v) community[v] = p->community(v);

    w.stream(files::kPositions, [&](std::ostream& out) {
        out << "node_id,x,y,community\n";
        for (NodeId v = 0; v < g.node_count(); ++v) {
            out << csv_field(g.id(v)) << ',' << format_double(pos[v].x) << ',' << format_double(pos[v].y) << ',';
            if (community[v]) out << *community[v];
            out << '\n';
        }
    });
    w.text(files::kLayoutSvg, svg::network(g, pos, community));
    w.result.summary = "layout: " + std::to_string(g.node_count()) + " nodes\n";
    return std::move(w.result);
}

CommandResult cmd_synth(const RunConfig& config, const SynthSpec& spec) {
    const SynthCorpus synth = generate(spec);
    Writer w(config.out);
    w.stream(files::kSynthCorpus, [&](std::ostream& out) { write_corpus(out, synth.corpus); });
    w.stream(files::kGroundTruth, [&](std::ostream& out) { write_ground_truth(out, synth.truth); });
    w.result.summary = "synthetic corpus: " + std::to_string(synth.corpus.size()) + " documents\n";
    return std::move(w.result);
}

CommandResult cmd_all(const RunConfig& config) {
    CommandResult all;
    for (auto* step : {&cmd_build, &cmd_analyze, &cmd_timeline, &cmd_layout}) {
        CommandResult r = step(config);
        all.written.insert(all.written.end(), r.written.begin(), r.written.end());
        all.summary += r.summary;
    }
    return all;
}

}  // namespace citenet
