#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "citenet/error.hpp"
#include "citenet/io.hpp"
#include "citenet/rng.hpp"
#include "citenet/synth.hpp"
#include "oracles.hpp"

using namespace citenet;

namespace {

// Flags and odd ids exercise quoting in every format.
CitationGraph sample_graph() {
    return CitationGraph::from_parts({{"A", true, true}, {"b \"q\"", true, false}, {"c,d"}, {"e<f>&"}},
                                     std::vector<IdEdge>{{"A", "b \"q\""}, {"c,d", "A"}, {"e<f>&", "c,d"}, {"A", "e<f>&"}});
}

NodeAnnotations sample_notes() {
    NodeAnnotations n;
    n.year = {1990, std::nullopt, 2001, 1950};
    n.doc_type = {DocType::Patent, DocType::Journal, std::nullopt, DocType::None};
    n.community = {0, 1, std::nullopt, 0};
    return n;
}

}  // namespace

TEST_CASE("GraphML round trip") {
    const auto g = sample_graph();
    std::stringstream s;
    write_graphml(s, g, sample_notes());
    const auto back = read_graphml(s);
    CHECK(back.graph == g);
    CHECK(back.annotations == sample_notes());
}

TEST_CASE("DOT round trip") {
    const auto g = sample_graph();
    std::stringstream s;
    write_dot(s, g, sample_notes());
    const auto back = read_dot(s);
    CHECK(back.graph == g);
    CHECK(back.annotations == sample_notes());
}

TEST_CASE("round trips on synthetic graphs") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto spec = SynthSpec::planted(3, 15, 0.3, 0.02, seed);
        spec.seed_rate = {0.5, 0.2, 0.0};
        const auto synth = generate(spec);
        const auto g = corpus_graph(synth.corpus);
        const auto p = planted_partition(g, synth.truth);
        const auto notes = annotate(g, synth.corpus, &p);
        std::stringstream gm, dot, csv;
        write_graphml(gm, g, notes);
        write_dot(dot, g, notes);
        write_edge_csv(csv, g);
        const auto a = read_graphml(gm), b = read_dot(dot);
        CHECK(a.graph == g);
        CHECK(b.graph == g);
        CHECK(a.annotations == notes);
        CHECK(b.annotations == notes);
        const auto c = read_edge_csv(csv);
        CHECK(c.edge_count() == g.edge_count());
        for (const auto& [u, v] : g.edges()) CHECK(c.has_edge(*c.find(g.id(u)), *c.find(g.id(v))));
    }
}

TEST_CASE("edge CSV") {
    const auto g = oracle::make_graph(3, {{2, 0}, {0, 1}});
    std::ostringstream s;
    write_edge_csv(s, g);
    CHECK(s.str() == "source,target\nn00,n01\nn02,n00\n");
    std::istringstream bad("source,target\nonly-one-field\n");
    CHECK_THROWS_AS(read_edge_csv(bad), InvalidArgument);
}

TEST_CASE("partition CSV") {
    const auto g = oracle::make_graph(4, {{0, 1}});
    const auto p = Partition::from_labels(std::vector<std::size_t>{1, 1, 0, 2});
    std::stringstream s;
    write_partition_csv(s, g, p);
    CHECK(s.str() == "node_id,community\nn00,0\nn01,0\nn02,1\nn03,2\n");
    CHECK(read_partition_csv(s, g) == p);

    std::istringstream missing("node_id,community\nn00,0\n");
    CHECK_THROWS_AS(read_partition_csv(missing, g), InvalidArgument);
    std::istringstream twice("node_id,community\nn00,0\nn00,0\nn01,0\nn02,0\nn03,0\n");
    CHECK_THROWS_AS(read_partition_csv(twice, g), InvalidArgument);
    std::istringstream stranger("node_id,community\nzz,0\n");
    CHECK_THROWS_AS(read_partition_csv(stranger, g), InvalidArgument);
}

TEST_CASE("reduced network exports honour the weight threshold") {
    // eight edges from community 0 into 1, one back
    oracle::Edges e;
    for (int u = 0; u < 4; ++u)
        for (int v = 4; v < 6; ++v) e.emplace_back(u, v);
    e.emplace_back(4, 0);
    const auto g = oracle::make_graph(6, e);
    const auto p = Partition::from_labels(std::vector<std::size_t>{0, 0, 0, 0, 1, 1});
    const auto r = reduce_by_community(g, p);
    std::ostringstream at7, at0, at9, csv;
    write_reduced_dot(at7, r, 7);
    write_reduced_dot(at0, r, 0);
    write_reduced_dot(at9, r, 9);
    write_reduced_csv(csv, r);
    CHECK(at7.str().find("\"C0\" -> \"C1\" [weight=8]") != std::string::npos);
    CHECK(at7.str().find("\"C1\" -> \"C0\"") == std::string::npos);
    CHECK(at0.str().find("\"C1\" -> \"C0\" [weight=1]") != std::string::npos);
    CHECK(at9.str().find("->") == std::string::npos);
    CHECK(csv.str() == "source,target,weight\n0,1,8\n1,0,1\n");

    std::ostringstream gm;
    write_reduced_graphml(gm, r, 7);
    CHECK(gm.str().find("<edge source=\"C0\" target=\"C1\"><data key=\"weight\">8</data>") != std::string::npos);
    CHECK(gm.str().find("source=\"C1\"") == std::string::npos);
}

TEST_CASE("doubles are written shortest and round-trip") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double x = rng.uniform() * std::pow(10.0, static_cast<double>(rng.below(20)) - 10.0);
        CHECK(std::stod(format_double(x)) == x);
    }
}

TEST_CASE("CSV fields") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(parse_csv_line("a,\"b,c\",\"d\"\"e\",") == std::vector<std::string>{"a", "b,c", "d\"e", ""});
    for (const std::string s : {"x", "a,b", "q\"q", "", " lead"})
        CHECK(parse_csv_line(csv_field(s) + "," + csv_field(s)) == std::vector<std::string>{s, s});
}

TEST_CASE("series, snapshot and window tables") {
    PublicationSeries series;
    series.counts = {{{1990, 2}, {1991, 1}}, {{1960, 1}}};
    std::ostringstream s;
    write_series_csv(s, series);
    CHECK(s.str() == "community,year,count\n0,1990,2\n0,1991,1\n1,1960,1\n");

    std::vector<PathLengthPoint> points(2);
    points[0] = {1950, 1, 0.0, std::nullopt};
    points[1] = {1960, 3, 1.5, PathLengthStats{1.25, 0.5, 3, 3}};
    std::ostringstream t;
    write_snapshot_csv(t, points);
    CHECK(t.str() == "year,n,avg_k,mean_spl,std_spl\n1950,1,0,,\n1960,3,1.5,1.25,0.5\n");
}

TEST_CASE("malformed graph files") {
    std::istringstream not_xml("this is not xml");
    CHECK_THROWS_AS(read_graphml(not_xml), InvalidArgument);
    std::istringstream not_dot("graph g { a -- b }");
    CHECK_THROWS_AS(read_dot(not_dot), InvalidArgument);
    std::istringstream dangling("digraph g { \"a\" -> }");
    CHECK_THROWS_AS(read_dot(dangling), InvalidArgument);
}
