#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "citenet/error.hpp"
#include "citenet/graph.hpp"
#include "citenet/synth.hpp"

using namespace citenet;

TEST_CASE("complete blocks when p_in is 1 and p_out is 0") {
    const auto synth = generate(SynthSpec::planted(2, 5, 1.0, 0.0, 4));
    const auto& t = synth.truth;
    const auto g = corpus_graph(synth.corpus);
    for (std::size_t u = 0; u < t.ids.size(); ++u)
        for (std::size_t v = 0; v < t.ids.size(); ++v) {
            if (u == v) continue;
            const bool edge = g.has_edge(*g.find(t.ids[u]), *g.find(t.ids[v]));
            const bool expected = t.block[u] == t.block[v] && t.year[u] >= t.year[v];
            CHECK(edge == expected);
        }
}

TEST_CASE("generation is deterministic and byte-stable") {
    SynthSpec spec = SynthSpec::planted(3, 20, 0.3, 0.02, 99);
    spec.seed_rate = {0.5, 0.1, 0.0};
    std::ostringstream a, b, ta, tb;
    const auto x = generate(spec), y = generate(spec);
    write_corpus(a, x.corpus);
    write_corpus(b, y.corpus);
    write_ground_truth(ta, x.truth);
    write_ground_truth(tb, y.truth);
    CHECK(a.str() == b.str());
    CHECK(ta.str() == tb.str());
    CHECK(ta.str().rfind("doc_id,block,is_seed,year\n", 0) == 0);

    spec.seed = 100;
    std::ostringstream c;
    write_corpus(c, generate(spec).corpus);
    CHECK(c.str() != a.str());
}

TEST_CASE("citations never point forward in time") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto synth = generate(SynthSpec::dominant_area(seed));
        for (const auto& d : synth.corpus.documents())
            for (const auto& r : d.references) CHECK(*d.year >= *synth.corpus.find(r)->year);
    }
}

TEST_CASE("edge counts within 3 sigma of the binomial expectation, pooled over 10 seeds") {
    // With years fixed, each ordered pair (u, v) with year[u] >= year[v] is an
    // independent Bernoulli trial; count eligible pairs from the emitted data.
    const double p_in = 0.3, p_out = 0.005;
    double mean_in = 0, var_in = 0, mean_out = 0, var_out = 0, observed_in = 0, observed_out = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto synth = generate(SynthSpec::planted(10, 30, p_in, p_out, seed));
        const auto& t = synth.truth;
        for (std::size_t u = 0; u < t.ids.size(); ++u)
            for (std::size_t v = 0; v < t.ids.size(); ++v) {
                if (u == v || t.year[u] < t.year[v]) continue;
                if (t.block[u] == t.block[v]) {
                    mean_in += p_in;
                    var_in += p_in * (1 - p_in);
                } else {
                    mean_out += p_out;
                    var_out += p_out * (1 - p_out);
                }
            }
        for (std::size_t u = 0; u < t.ids.size(); ++u)
            for (const auto& r : synth.corpus.find(t.ids[u])->references)
                (t.block[u] == t.block_of(r) ? observed_in : observed_out) += 1;
    }
    CHECK(std::abs(observed_out - mean_out) <= 3 * std::sqrt(var_out));
    CHECK(std::abs(observed_in - mean_in) <= 3 * std::sqrt(var_in));
    // the cross-block fraction lands near its expectation too
    CHECK(observed_out / (observed_in + observed_out) ==
          doctest::Approx(mean_out / (mean_in + mean_out)).epsilon(0.15));
}

TEST_CASE("markers, filler and seeds") {
    SynthSpec spec = SynthSpec::planted(4, 30, 0.2, 0.01, 6);
    spec.seed_rate = {0.5, 0.5, 0.0, 0.0};
    const auto synth = generate(spec);
    const auto& t = synth.truth;

    // marker vocabularies are pairwise disjoint and disjoint from filler
    std::set<std::string> seen(t.filler.begin(), t.filler.end());
    CHECK(seen.size() == spec.filler_words);
    for (const auto& m : t.markers) {
        CHECK(m.size() == spec.markers_per_block);
        for (const auto& w : m) CHECK(seen.insert(w).second);
    }

    const auto query = Query::from_phrases(spec.marker_phrases);
    std::size_t filler_tokens = 0, tokens = 0;
    const std::set<std::string> filler(t.filler.begin(), t.filler.end());
    for (std::size_t i = 0; i < t.ids.size(); ++i) {
        const auto& d = *synth.corpus.find(t.ids[i]);
        CHECK(matches_query(d, query) == t.is_seed[i]);
        if (t.is_seed[i]) CHECK(t.block[i] < 2);
        for (const auto& tok : tokenize(d.title)) {
            ++tokens;
            filler_tokens += filler.count(tok);
        }
    }
    // about 70% filler
    CHECK(static_cast<double>(filler_tokens) / tokens == doctest::Approx(0.7).epsilon(0.05));
}

TEST_CASE("planted peak years are strict modes") {
    const auto spec = SynthSpec::dominant_area(2);
    const auto synth = generate(spec);
    const auto& t = synth.truth;
    for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
        std::map<int, int> hist;
        for (std::size_t i = 0; i < t.ids.size(); ++i)
            if (t.block[i] == b) ++hist[t.year[i]];
        const int peak = t.peak_year[b];
        CHECK(peak == spec.peak_year[b]);
        for (const auto& [y, n] : hist)
            if (y != peak) CHECK(n < hist[peak]);
        CHECK(hist.begin()->first >= spec.first_year);
        CHECK(hist.rbegin()->first <= spec.last_year);
    }
}

TEST_CASE("the dominant-area corpus has one dominant seed block") {
    const auto spec = SynthSpec::dominant_area(1);
    const auto synth = generate(spec);
    CHECK(synth.corpus.size() == 3000);
    std::vector<std::size_t> seeds(spec.block_sizes.size(), 0);
    for (std::size_t i = 0; i < synth.truth.ids.size(); ++i) seeds[synth.truth.block[i]] += synth.truth.is_seed[i];
    for (std::size_t b = 1; b < seeds.size(); ++b) CHECK(seeds[0] > seeds[b]);
}

TEST_CASE("invalid specs") {
    auto bad = [](auto&& mutate) {
        SynthSpec s = SynthSpec::planted(2, 5, 0.3, 0.01, 1);
        mutate(s);
        return s;
    };
    CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.block_sizes = {}; })), InvalidArgument);
    CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.block_sizes = {5, 1}; })), InvalidArgument);
    CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.block_sizes = {5, 0}; })), InvalidArgument);
    CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.p_out = 0.5; })), InvalidArgument);
    CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.p_in = 1.5; })), InvalidArgument);
    CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.seed_rate = {0.5}; })), InvalidArgument);
    CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.peak_year = {1900, 1950}; })), InvalidArgument);
    CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.block_p_in = {0.3}; })), InvalidArgument);
    CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.first_year = 2020; })), InvalidArgument);
    CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.filler_fraction = 1.0; })), InvalidArgument);
}

TEST_CASE("planted partition") {
    const auto synth = generate(SynthSpec::planted(3, 10, 0.3, 0.01, 1));
    const auto g = corpus_graph(synth.corpus);
    const auto p = planted_partition(g, synth.truth);
    CHECK(p.community_count() == 3);
    CHECK(p.sizes() == std::vector<std::size_t>{10, 10, 10});
    const auto stranger = CitationGraph::from_parts({{"nobody"}}, std::vector<IdEdge>{});
    CHECK_THROWS_AS(planted_partition(stranger, synth.truth), InvalidArgument);
}
