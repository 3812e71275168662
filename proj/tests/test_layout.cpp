#include <doctest.h>

#include <cmath>

#include "citenet/layout.hpp"
#include "citenet/synth.hpp"
#include "oracles.hpp"

using namespace citenet;

namespace {

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

TEST_CASE("trivial layouts") {
    CHECK(force_layout(CitationGraph{}).empty());
    const auto one = force_layout(oracle::make_graph(1, {}));
    REQUIRE(one.size() == 1);
    CHECK(one[0].x == 0.0);
    CHECK(one[0].y == 0.0);
}

TEST_CASE("a linked pair settles at the spring length, centred") {
    // attraction d^2/k balances repulsion k^2/d at d = k
    LayoutOptions opts;
    opts.iterations = 500;
    opts.spring_length = 2.0;
    const auto pos = force_layout(oracle::make_graph(2, {{0, 1}}), opts);
    CHECK(dist(pos[0], pos[1]) == doctest::Approx(2.0).epsilon(0.05));
    CHECK(pos[0].x + pos[1].x == doctest::Approx(0.0).scale(1.0));
    CHECK(pos[0].y + pos[1].y == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("deterministic under the seed") {
    const auto g = corpus_graph(generate(SynthSpec::planted(2, 10, 0.4, 0.05, 1)).corpus);
    LayoutOptions a;
    a.seed = 4;
    const auto x = force_layout(g, a), y = force_layout(g, a);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x[i].x == y[i].x);
        CHECK(x[i].y == y[i].y);
    }
    a.seed = 5;
    const auto z = force_layout(g, a);
    bool differs = false;
    for (std::size_t i = 0; i < x.size(); ++i) differs |= x[i].x != z[i].x;
    CHECK(differs);
}

TEST_CASE("planted blocks are drawn apart") {
    const auto synth = generate(SynthSpec::planted(3, 10, 0.5, 0.01, 2));
    const auto g = corpus_graph(synth.corpus);
    const auto p = planted_partition(g, synth.truth);
    const auto pos = force_layout(g);
    double intra = 0, inter = 0;
    std::size_t ni = 0, no = 0;
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v = u + 1; v < g.node_count(); ++v) {
            const double d = dist(pos[u], pos[v]);
            if (p.community(u) == p.community(v)) intra += d, ++ni;
            else inter += d, ++no;
        }
    CHECK(intra / ni < inter / no);
    for (const auto& q : pos) {
        CHECK(std::isfinite(q.x));
        CHECK(std::isfinite(q.y));
    }
}
