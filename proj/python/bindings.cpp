#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "citenet/app.hpp"
#include "citenet/community.hpp"
#include "citenet/corpus.hpp"
#include "citenet/error.hpp"
#include "citenet/graph.hpp"
#include "citenet/keywords.hpp"
#include "citenet/metrics.hpp"
#include "citenet/synth.hpp"

namespace py = pybind11;
using namespace citenet;

namespace {

Partition to_partition(const std::vector<std::size_t>& labels) { return Partition::from_labels(labels); }

py::dict report_dict(const LoadReport& r) {
    py::dict d;
    d["lines"] = r.lines;
    d["accepted"] = r.accepted;
    d["rejected"] = r.rejected;
    d["repaired"] = r.repaired;
    d["messages"] = r.messages;
    return d;
}

py::dict truth_dict(const GroundTruth& t) {
    py::dict d;
    d["ids"] = t.ids;
    d["block"] = t.block;
    d["is_seed"] = t.is_seed;
    d["year"] = t.year;
    d["peak_year"] = t.peak_year;
    d["markers"] = t.markers;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Citation-network construction, community detection and temporal analysis.";

    auto base = py::register_exception<Error>(m, "CitenetError");
    py::register_exception<IoError>(m, "IoError", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<EmptyResult>(m, "EmptyResult", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

    py::enum_<ExpandFrom>(m, "ExpandFrom").value("CORE", ExpandFrom::Core).value("ALL_SEEDS", ExpandFrom::AllSeeds);
    py::enum_<PruneMode>(m, "PruneMode")
        .value("SINGLE_PASS", PruneMode::SinglePass)
        .value("FIXPOINT", PruneMode::Fixpoint);

    py::class_<Document>(m, "Document")
        .def_readonly("id", &Document::id)
        .def_readonly("title", &Document::title)
        .def_readonly("abstract", &Document::abstract)
        .def_readonly("year", &Document::year)
        .def_property_readonly("doc_type", [](const Document& d) { return std::string(to_string(d.doc_type)); })
        .def_readonly("references", &Document::references);

    py::class_<Corpus>(m, "Corpus")
        .def("__len__", &Corpus::size)
        .def("__contains__", &Corpus::contains)
        .def("find", [](const Corpus& c, const std::string& id) -> std::optional<Document> {
            const Document* d = c.find(id);
            return d ? std::optional<Document>(*d) : std::nullopt;
        })
        .def_property_readonly("documents", &Corpus::documents)
        .def_property_readonly("year_range", &Corpus::year_range)
        .def("write", [](const Corpus& c, const std::filesystem::path& p) { write_corpus(p, c); });

    m.def(
        "load_corpus",
        [](const std::filesystem::path& path) {
            LoadReport report;
            Corpus c = load_corpus(path, report);
            return py::make_tuple(std::move(c), report_dict(report));
        },
        py::arg("path"), "Load a JSON-lines corpus; returns (corpus, load report).");

    py::class_<CitationGraph>(m, "CitationGraph")
        .def_static(
            "from_edges",
            [](const std::vector<std::string>& ids, const std::vector<std::pair<std::string, std::string>>& edges) {
                std::vector<NodeInfo> nodes;
                for (const auto& id : ids) nodes.push_back({id});
                std::vector<IdEdge> e;
                for (const auto& [u, v] : edges) e.push_back({u, v});
                return CitationGraph::from_parts(nodes, e);
            },
            py::arg("ids"), py::arg("edges"))
        .def_property_readonly("node_count", &CitationGraph::node_count)
        .def_property_readonly("edge_count", &CitationGraph::edge_count)
        .def_property_readonly("ids",
                               [](const CitationGraph& g) {
                                   std::vector<std::string> ids;
                                   for (const auto& n : g.nodes()) ids.push_back(n.id);
                                   return ids;
                               })
        .def_property_readonly("edges",
                               [](const CitationGraph& g) {
                                   std::vector<std::pair<std::string, std::string>> out;
                                   for (const auto& [u, v] : g.edges()) out.emplace_back(g.id(u), g.id(v));
                                   return out;
                               })
        .def("is_seed", [](const CitationGraph& g, NodeId v) { return g.node(v).is_seed; })
        .def("in_core", [](const CitationGraph& g, NodeId v) { return g.node(v).in_core; });

    m.def("corpus_graph", &corpus_graph, py::arg("corpus"), "Every corpus document and in-corpus citation.");
    m.def(
        "build_network",
        [](const Corpus& corpus, const std::vector<std::string>& query, ExpandFrom expand_from, PruneMode prune) {
            BuildOptions opts;
            opts.expand_from = expand_from;
            opts.prune = prune;
            auto r = build_network(corpus, Query::from_phrases(query), opts);
            return py::make_tuple(std::move(r.graph), r.trace.report());
        },
        py::arg("corpus"), py::arg("query") = std::vector<std::string>{"bjt", "bipolar junction transistor"},
        py::arg("expand_from") = ExpandFrom::Core, py::arg("prune") = PruneMode::SinglePass,
        "Seed matching, expansion, pruning and closure; returns (graph, trace report).");

    m.def(
        "visit_rates",
        [](const CitationGraph& g, double teleport) { return stationary_flow(g, teleport).visit_rate; },
        py::arg("graph"), py::arg("teleport") = 0.15);
    m.def(
        "codelength",
        [](const CitationGraph& g, const std::vector<std::size_t>& labels, double teleport) {
            return codelength(g, to_partition(labels), stationary_flow(g, teleport)).total;
        },
        py::arg("graph"), py::arg("labels"), py::arg("teleport") = 0.15);
    m.def(
        "detect_communities",
        [](const CitationGraph& g, std::size_t trials, std::uint64_t seed, double teleport, std::size_t threads) {
            DetectOptions opts;
            opts.trials = trials;
            opts.seed = seed;
            opts.teleport = teleport;
            opts.threads = threads;
            const auto d = detect_communities(g, opts);
            py::dict out;
            out["labels"] = d.partition.labels();
            out["codelength"] = d.codelength.total;
            out["best_trial"] = d.best_trial;
            out["communities"] = d.partition.community_count();
            return out;
        },
        py::arg("graph"), py::arg("trials") = 20, py::arg("seed") = 1, py::arg("teleport") = 0.15,
        py::arg("threads") = 1);
    m.def(
        "nmi",
        [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
            return nmi(to_partition(a), to_partition(b));
        },
        py::arg("a"), py::arg("b"));

    m.def("betweenness", &betweenness, py::arg("graph"), py::arg("threads") = 1);
    m.def("clustering", &clustering, py::arg("graph"));
    m.def(
        "degrees",
        [](const CitationGraph& g) {
            std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
            for (const auto& d : degrees(g)) out.emplace_back(d.in, d.out, d.undirected);
            return out;
        },
        py::arg("graph"), "(in, out, undirected) per node.");
    m.def("term_score", &term_score, py::arg("community_df"), py::arg("global_df"), py::arg("community_size"),
          py::arg("corpus_size"), py::arg("smoothing") = kKeywordSmoothing);

    m.def(
        "generate_planted",
        [](std::size_t blocks, std::size_t block_size, double p_in, double p_out, std::uint64_t seed) {
            auto s = generate(SynthSpec::planted(blocks, block_size, p_in, p_out, seed));
            return py::make_tuple(std::move(s.corpus), truth_dict(s.truth));
        },
        py::arg("blocks"), py::arg("block_size"), py::arg("p_in"), py::arg("p_out"), py::arg("seed") = 1);
    m.def(
        "generate_dominant_area",
        [](std::uint64_t seed) {
            auto s = generate(SynthSpec::dominant_area(seed));
            return py::make_tuple(std::move(s.corpus), truth_dict(s.truth));
        },
        py::arg("seed") = 1);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("corpus", &RunConfig::corpus)
        .def_readwrite("query", &RunConfig::query)
        .def_readwrite("expand_from", &RunConfig::expand_from)
        .def_readwrite("prune", &RunConfig::prune)
        .def_readwrite("tau", &RunConfig::tau)
        .def_readwrite("trials", &RunConfig::trials)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("top_k", &RunConfig::top_k)
        .def_readwrite("min_weight", &RunConfig::min_weight)
        .def_readwrite("min_community_size", &RunConfig::min_community_size)
        .def_readwrite("split_year", &RunConfig::split_year)
        .def_readwrite("window", &RunConfig::window)
        .def_readwrite("snapshot_years", &RunConfig::snapshot_years)
        .def_readwrite("snapshot_step", &RunConfig::snapshot_step)
        .def_readwrite("layout_iterations", &RunConfig::layout_iterations)
        .def_readwrite("out", &RunConfig::out)
        .def_readwrite("threads", &RunConfig::threads)
        .def("validate", &RunConfig::validate);

    auto command = [](CommandResult (*fn)(const RunConfig&)) {
        return [fn](const RunConfig& c) {
            CommandResult r;
            {
                py::gil_scoped_release release;
                r = fn(c);
            }
            return py::make_tuple(r.written, r.summary);
        };
    };
    m.def("cmd_build", command(&cmd_build), py::arg("config"));
    m.def("cmd_analyze", command(&cmd_analyze), py::arg("config"));
    m.def("cmd_timeline", command(&cmd_timeline), py::arg("config"));
    m.def("cmd_layout", command(&cmd_layout), py::arg("config"));
    m.def("cmd_all", command(&cmd_all), py::arg("config"));
}
