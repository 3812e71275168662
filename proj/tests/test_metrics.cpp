#include <doctest.h>

#include <cmath>
#include <numeric>

#include "citenet/community.hpp"
#include "citenet/error.hpp"
#include "citenet/metrics.hpp"
#include "oracles.hpp"

using namespace citenet;

TEST_CASE("degrees") {
    // node 1: cited by 0 and 2, cites 3
    const auto g = oracle::make_graph(5, {{0, 1}, {2, 1}, {1, 3}});
    const auto d = degrees(g);
    CHECK(d[1] == DegreeTriple{2, 1, 3});
    CHECK(d[4] == DegreeTriple{0, 0, 0});
    const auto pair = degrees(oracle::make_graph(2, {{0, 1}, {1, 0}}));
    CHECK(pair[0] == DegreeTriple{1, 1, 1});
    CHECK(pair[1] == DegreeTriple{1, 1, 1});
}

TEST_CASE("degree sums equal the edge count") {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const int n = 1 + static_cast<int>(rng.below(15));
        const auto g = oracle::make_graph(n, oracle::random_digraph(rng, n, 0.2));
        std::size_t in = 0, out = 0, und = 0;
        for (const auto& d : degrees(g)) {
            in += d.in;
            out += d.out;
            und += d.undirected;
        }
        CHECK(in == g.edge_count());
        CHECK(out == g.edge_count());
        CHECK(und == 2 * g.undirected_edge_count());
    }
}

TEST_CASE("clustering") {
    for (double c : clustering(oracle::make_graph(3, {{0, 1}, {1, 2}, {2, 0}}))) CHECK(c == 1.0);
    CHECK(clustering(oracle::make_graph(4, {{0, 1}, {0, 2}, {0, 3}}))[0] == 0.0);
    SUBCASE("five-node fixture against triangle enumeration") {
        // triangles 0-1-2 and 0-2-3, tail 3-4; one antiparallel pair
        const oracle::Edges e{{0, 1}, {1, 2}, {2, 0}, {0, 2}, {2, 3}, {3, 0}, {3, 4}};
        const auto got = clustering(oracle::make_graph(5, e));
        const auto want = oracle::clustering(5, e);
        for (int i = 0; i < 5; ++i) CHECK(got[i] == want[i]);
        // node 0: neighbours 1,2,3; triangles 012, 023 of 3 triples
        CHECK(got[0] == doctest::Approx(2.0 / 3.0));
        CHECK(got[4] == 0.0);
    }
    SUBCASE("random graphs against triangle enumeration") {
        Rng rng(9);
        for (int t = 0; t < 30; ++t) {
            const int n = 1 + static_cast<int>(rng.below(10));
            const auto e = oracle::random_digraph(rng, n, 0.3);
            const auto got = clustering(oracle::make_graph(n, e));
            const auto want = oracle::clustering(n, e);
            for (int i = 0; i < n; ++i) {
                CHECK(got[i] == want[i]);
                CHECK(got[i] >= 0.0);
                CHECK(got[i] <= 1.0);
            }
        }
    }
}

TEST_CASE("betweenness") {
    SUBCASE("directed path") {
        const auto b = betweenness(oracle::make_graph(3, {{0, 1}, {1, 2}}));
        CHECK(b == std::vector<double>{0.0, 1.0, 0.0});
    }
    SUBCASE("directed 3-cycle: each node is interior to exactly one of the six ordered pairs") {
        for (double x : betweenness(oracle::make_graph(3, {{0, 1}, {1, 2}, {2, 0}}))) CHECK(x == doctest::Approx(1.0));
    }
    SUBCASE("diamond splits credit between two shortest paths") {
        const auto b = betweenness(oracle::make_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
        CHECK(b[1] == doctest::Approx(0.5));
        CHECK(b[2] == doctest::Approx(0.5));
    }
    SUBCASE("random graphs against path enumeration, any thread count") {
        Rng rng(13);
        for (int t = 0; t < 30; ++t) {
            const int n = 2 + static_cast<int>(rng.below(7));
            const auto e = oracle::random_digraph(rng, n, 0.35);
            const auto g = oracle::make_graph(n, e);
            const auto want = oracle::betweenness(n, e);
            const auto one = betweenness(g, 1);
            const auto many = betweenness(g, 3);
            for (int i = 0; i < n; ++i) {
                CHECK(std::abs(one[i] - want[i]) < 1e-9);
                CHECK(many[i] == one[i]);
            }
        }
    }
}

TEST_CASE("mean shortest path") {
    SUBCASE("path on three nodes") {
        const auto s = mean_shortest_path(oracle::make_graph(3, {{0, 1}, {2, 1}}));
        CHECK(s.mean == doctest::Approx(4.0 / 3.0));
        CHECK(s.stddev == doctest::Approx(std::sqrt(2.0) / 3.0));
        CHECK(s.pairs == 3);
    }
    SUBCASE("complete graph") {
        oracle::Edges e;
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v) e.emplace_back(u, v);
        const auto s = mean_shortest_path(oracle::make_graph(5, e));
        CHECK(s.mean == 1.0);
        CHECK(s.stddev == 0.0);
    }
    SUBCASE("only the largest component counts") {
        const auto s = mean_shortest_path(oracle::make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {4, 5}}));
        CHECK(s.component_size == 4);
        CHECK(s.pairs == 6);
        CHECK(s.mean == doctest::Approx(10.0 / 6.0));
    }
    SUBCASE("fewer than two connected nodes") {
        CHECK_THROWS_AS(mean_shortest_path(oracle::make_graph(1, {})), EmptyResult);
        CHECK_THROWS_AS(mean_shortest_path(oracle::make_graph(3, {})), EmptyResult);
        CHECK_THROWS_AS(mean_shortest_path(CitationGraph{}), EmptyResult);
    }
    SUBCASE("random graphs against BFS distances; adding an edge never lengthens") {
        Rng rng(17);
        for (int t = 0; t < 20; ++t) {
            const int n = 3 + static_cast<int>(rng.below(10));
            oracle::Edges e;
            for (int v = 1; v < n; ++v) e.emplace_back(v, static_cast<int>(rng.below(v)));  // a tree, connected
            const auto d = oracle::distances(n, e);
            double sum = 0.0, sq = 0.0;
            int pairs = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    sum += d[i][j];
                    sq += d[i][j] * d[i][j];
                    ++pairs;
                }
            const double mean = sum / pairs;
            const auto s = mean_shortest_path(oracle::make_graph(n, e), 2);
            CHECK(s.mean == doctest::Approx(mean).epsilon(1e-12));
            CHECK(s.stddev == doctest::Approx(std::sqrt(std::max(0.0, sq / pairs - mean * mean))).epsilon(1e-9));
            auto more = e;
            more.emplace_back(0, n - 1);
            if (n > 2) CHECK(mean_shortest_path(oracle::make_graph(n, more)).mean <= s.mean + 1e-12);
        }
    }
}

TEST_CASE("community means and reduced network") {
    // communities {0,1,2} and {3,4}; cross edges 2->3, 4->0, 1->3
    const oracle::Edges e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 3}};
    const auto g = oracle::make_graph(5, e);
    const auto p = Partition::from_labels(std::vector<std::size_t>{0, 0, 0, 1, 1});
    const auto report = measure(g);
    const auto means = community_means(report, p);
    REQUIRE(means.size() == 2);
    CHECK(means[0].size == 3);
    CHECK(means[0].in_degree == doctest::Approx((1 + 1 + 1) / 3.0));
    CHECK(means[0].out_degree == doctest::Approx((1 + 2 + 1) / 3.0));
    CHECK(means[1].in_degree == doctest::Approx((2 + 1) / 2.0));
    const double bsum = report.betweenness[3] + report.betweenness[4];
    CHECK(means[1].betweenness == doctest::Approx(bsum / 2.0));

    const auto r = reduce_by_community(g, p);
    CHECK(r.communities == 2);
    CHECK(r.weights.at({0, 1}) == 2);
    CHECK(r.weights.at({1, 0}) == 1);
    CHECK(r.total_weight() == 3);
    CHECK(r.out_strength == std::vector<std::size_t>{2, 1});
    CHECK(r.in_strength == std::vector<std::size_t>{1, 2});
    CHECK(r.edges_at_least(7).empty());
    CHECK(r.edges_at_least(2).size() == 1);
    CHECK(r.edges_at_least(0).size() == 2);

    const auto singleton = community_means(report, Partition::singletons(5));
    for (const auto& m : singleton) CHECK(m.size == 1);

    CHECK(reduce_by_community(g, Partition::single_module(5)).weights.empty());
    CHECK_THROWS_AS(reduce_by_community(g, Partition::single_module(4)), InvalidArgument);
}

TEST_CASE("reduced weights are conserved on random graphs") {
    Rng rng(21);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + static_cast<int>(rng.below(20));
        const auto e = oracle::random_digraph(rng, n, 0.2);
        std::vector<std::size_t> labels(n);
        for (auto& l : labels) l = rng.below(4);
        const auto p = Partition::from_labels(labels);
        const auto g = oracle::make_graph(n, e);
        std::size_t cross = 0;
        for (auto [u, v] : g.edges()) cross += p.community(u) != p.community(v);
        const auto r = reduce_by_community(g, p);
        CHECK(r.total_weight() == cross);
        CHECK(std::accumulate(r.in_strength.begin(), r.in_strength.end(), std::size_t{0}) == cross);
        CHECK(std::accumulate(r.out_strength.begin(), r.out_strength.end(), std::size_t{0}) == cross);
        for (const auto& [key, w] : r.weights) CHECK(key.first != key.second);
    }
}
