#include <doctest.h>

#include <sstream>

#include "citenet/corpus.hpp"
#include "citenet/error.hpp"
#include "citenet/synth.hpp"

using namespace citenet;

namespace {

Corpus parse(const std::string& text, LoadReport& report) {
    std::istringstream in(text);
    return load_corpus(in, report);
}

const Query kBjt = Query::from_phrases({"bjt", "bipolar junction transistor"});

Document doc_with(std::string abstract) {
    Document d;
    d.id = "d";
    d.abstract = std::move(abstract);
    return d;
}

}  // namespace

TEST_CASE("tokenize splits on anything that is not a letter or digit") {
    CHECK(tokenize("Bipolar-Junction Transistor (BJT)") ==
          std::vector<std::string>{"bipolar", "junction", "transistor", "bjt"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("SiC IGBTs, 4H-SiC") == std::vector<std::string>{"sic", "igbts", "4h", "sic"});
    CHECK(tokenize("  ,;  ").empty());
    // non-ASCII bytes are separators
    CHECK(tokenize("na\xc3\xafve") == std::vector<std::string>{"na", "ve"});
}

TEST_CASE("load keeps well-formed records and reports the rest") {
    LoadReport report;
    SUBCASE("three good records") {
        const auto c = parse(R"({"id":"a"}
{"id":"b","title":"t","abstract":"x","year":1999,"doc_type":"Patent","references":["a"]}
{"id":"c","references":[]}
)",
                             report);
        CHECK(c.size() == 3);
        CHECK(report.accepted == 3);
        CHECK(report.rejected == 0);
        CHECK(c.find("b")->doc_type == DocType::Patent);
        CHECK(c.find("b")->year == 1999);
        CHECK_FALSE(c.find("a")->year.has_value());
    }
    SUBCASE("self reference is dropped and counted as a repair") {
        const auto c = parse(R"({"id":"a","references":["a","b","b"]})", report);
        CHECK(c.find("a")->references == std::vector<std::string>{"b"});
        CHECK(report.repaired == 1);
    }
    SUBCASE("unknown doc type maps to None") {
        const auto c = parse(R"({"id":"a","doc_type":"preprint"})", report);
        CHECK(c.find("a")->doc_type == DocType::None);
    }
    SUBCASE("missing id, duplicate id and malformed lines are skipped") {
        const auto c = parse(R"({"id":"a","title":"first"}
{"title":"no id"}
{"id":""}
not json at all
{"id":"a","title":"second"}
{"id":"b","year":"nineteen"}
[1,2]

)",
                             report);
        CHECK(c.size() == 1);
        CHECK(c.find("a")->title == "first");
        CHECK(report.lines == 7);
        CHECK(report.accepted == 1);
        CHECK(report.rejected == 6);
        CHECK(report.messages.size() == 6);
    }
}

TEST_CASE("load is idempotent and round-trips through write_corpus") {
    LoadReport r1, r2;
    const auto c1 = parse(R"({"id":"x","title":"T \"q\"","abstract":"a\nb","year":1950,"doc_type":"book","references":["y","z"]}
{"id":"y","doc_type":"conference"})",
                          r1);
    std::ostringstream out;
    write_corpus(out, c1);
    const auto c2 = parse(out.str(), r2);
    CHECK(c1 == c2);
    CHECK(c1.year_range() == std::pair{1950, 1950});
}

TEST_CASE("unreadable file is an I/O error") {
    LoadReport report;
    CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.jsonl", report), IoError);
}

TEST_CASE("doc type parsing is case-insensitive") {
    CHECK(parse_doc_type("JOURNAL") == DocType::Journal);
    CHECK(parse_doc_type("Conference") == DocType::Conference);
    CHECK(parse_doc_type("book") == DocType::Book);
    CHECK(parse_doc_type("") == DocType::None);
    CHECK(parse_doc_type("patents") == DocType::None);
    for (auto t : {DocType::Patent, DocType::Journal, DocType::Book, DocType::Conference, DocType::None})
        CHECK(parse_doc_type(to_string(t)) == t);
}

TEST_CASE("query matching over abstract tokens") {
    CHECK(matches_query(doc_with("A new BJT amplifier"), kBjt));
    CHECK_FALSE(matches_query(doc_with("A MOSFET study"), kBjt));
    CHECK(matches_query(doc_with("bipolar-junction transistor model"), kBjt));
    CHECK_FALSE(matches_query(doc_with("bipolar transistor junction"), kBjt));
    CHECK_FALSE(matches_query(doc_with("BJTs in parallel"), kBjt));  // plurals do not match

    Document titled = doc_with("nothing here");
    titled.title = "BJT";
    CHECK_FALSE(matches_query(titled, kBjt));

    CHECK_THROWS_AS(Query::from_phrases({}), InvalidArgument);
    CHECK_THROWS_AS(Query::from_phrases({"--"}), InvalidArgument);
}

TEST_CASE("matching is invariant under case and punctuation changes") {
    const std::vector<std::string> variants{"the bipolar junction transistor", "THE BIPOLAR JUNCTION TRANSISTOR",
                                            "the bipolar/junction;transistor", "the Bipolar_Junction.Transistor"};
    for (const auto& v : variants) CHECK(matches_query(doc_with(v), kBjt));
}

TEST_CASE("select_seeds returns exactly the matching ids") {
    Corpus c;
    for (int i = 0; i < 5; ++i) {
        Document d;
        d.id = "d" + std::to_string(i);
        d.abstract = i == 1 || i == 3 ? "about bjt" : "about mosfet";
        c.add(d);
    }
    CHECK(select_seeds(c, kBjt) == std::set<std::string>{"d1", "d3"});
    CHECK(select_seeds(c, kBjt) == select_seeds(c, kBjt));
    CHECK(select_seeds(Corpus{}, kBjt).empty());
}

TEST_CASE("select_seeds finds exactly the generator's planted seeds") {
    SynthSpec spec = SynthSpec::planted(4, 25, 0.2, 0.01, 11);
    spec.seed_rate = {0.6, 0.4, 0.3, 0.2};
    const auto synth = generate(spec);
    std::set<std::string> planted;
    for (std::size_t i = 0; i < synth.truth.ids.size(); ++i)
        if (synth.truth.is_seed[i]) planted.insert(synth.truth.ids[i]);
    CHECK(planted.size() > 20);
    CHECK(select_seeds(synth.corpus, kBjt) == planted);
}

TEST_CASE("corpus add rejects empty and duplicate ids") {
    Corpus c;
    Document d;
    CHECK_FALSE(c.add(d));
    d.id = "a";
    CHECK(c.add(d));
    CHECK_FALSE(c.add(d));
    CHECK(c.size() == 1);
    CHECK(c.contains("a"));
    CHECK_FALSE(c.contains("b"));
    CHECK_FALSE(c.year_range().has_value());
}
