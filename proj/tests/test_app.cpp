#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "citenet/app.hpp"
#include "citenet/error.hpp"
#include "citenet/io.hpp"

using namespace citenet;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CITENET_TEST_DATA;

// Fresh scratch directory per call, removed on destruction.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("citenet_test_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
};

RunConfig config_for(const fs::path& corpus, const fs::path& out) {
    RunConfig c;
    c.corpus = corpus;
    c.out = out;
    c.trials = 5;
    c.layout_iterations = 50;
    return c;
}

fs::path write_corpus_file(const fs::path& dir, const std::string& text) {
    const auto path = dir / "corpus.jsonl";
    write_text_file(path, text);
    return path;
}

// Two 4-cliques of seeds joined by one citation.
const char* kTwoCliques =
    R"({"id":"a1","abstract":"bjt","year":1990,"references":["a2","a3","a4"]}
{"id":"a2","abstract":"bjt","year":1991,"references":["a1","a3","a4"]}
{"id":"a3","abstract":"bjt","year":1992,"references":["a1","a2","a4"]}
{"id":"a4","abstract":"bjt","year":1993,"references":["a1","a2","a3","b1"]}
{"id":"b1","abstract":"bjt","year":2000,"references":["b2","b3","b4"]}
{"id":"b2","abstract":"bjt","year":2001,"references":["b1","b3","b4"]}
{"id":"b3","abstract":"bjt","year":2002,"references":["b1","b2","b4"]}
{"id":"b4","abstract":"bjt","year":2003,"references":["b1","b2","b3"]}
)";

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CITENET_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("build reproduces the hand-traced fixture") {
    Scratch s("build12");
    const auto r = cmd_build(config_for(kData / "build12" / "corpus.jsonl", s.dir));
    CHECK(read_text_file(s.dir / files::kEdges) == read_text_file(kData / "build12" / "edges.csv"));
    CHECK(read_text_file(s.dir / files::kTrace) == read_text_file(kData / "build12" / "build_trace.txt"));
    const auto report = nlohmann::json::parse(read_text_file(s.dir / files::kLoadReport));
    CHECK(report["accepted"] == 12);
    CHECK(report["repaired"] == 2);
    CHECK(r.written.size() == 5);
    for (const auto& p : r.written) CHECK(fs::exists(p));

    std::ifstream gm(s.dir / files::kGraphml);
    const auto back = read_graphml(gm);
    CHECK(back.graph.node_count() == 5);
    CHECK(back.graph.edge_count() == 9);
}

TEST_CASE("build with no matching document is an empty result") {
    Scratch s("nomatch");
    auto c = config_for(kData / "build12" / "corpus.jsonl", s.dir);
    c.query = {"magnetron"};
    CHECK_THROWS_AS(cmd_build(c), EmptyResult);
}

TEST_CASE("full pipeline on two cliques") {
    Scratch s("cliques");
    auto c = config_for(write_corpus_file(s.dir, kTwoCliques), s.dir / "out");
    c.window = std::pair{1990, 1995};
    cmd_all(c);
    std::ifstream gm(c.out / files::kGraphml);
    const auto g = read_graphml(gm).graph;
    std::ifstream pc(c.out / files::kPartition);
    const auto p = read_partition_csv(pc, g);
    CHECK(p.community_count() == 2);
    CHECK(p.community(*g.find("a1")) == p.community(*g.find("a4")));
    CHECK(p.community(*g.find("a1")) != p.community(*g.find("b1")));

    // one citation between the cliques, below the default threshold
    CHECK(read_text_file(c.out / files::kReducedEdges).find(",1\n") != std::string::npos);
    CHECK(read_text_file(c.out / files::kReducedDot).find("->") == std::string::npos);
    // window 1990-1995 holds exactly the a clique
    const auto window = read_text_file(c.out / files::kWindow);
    CHECK(window.find(",4,4,100,") != std::string::npos);
    CHECK(window.find(",4,0,0,") != std::string::npos);
    for (const char* name : {files::kSeriesEarly, files::kSeriesLate, files::kSnapshots, files::kPositions,
                             files::kLayoutSvg, files::kProfiles, files::kMeasures, files::kCommunityMeans})
        CHECK(fs::exists(c.out / name));
}

TEST_CASE("a single-document network runs end to end") {
    Scratch s("single");
    auto c = config_for(write_corpus_file(s.dir, R"({"id":"solo","abstract":"a BJT","year":2000})"
                                                 "\n"),
                        s.dir / "out");
    cmd_all(c);
    CHECK(read_text_file(c.out / files::kPartition) == "node_id,community\nsolo,0\n");
    // no pairs: path-length cells stay empty
    CHECK(read_text_file(c.out / files::kSnapshots) == "year,n,avg_k,mean_spl,std_spl\n2000,1,0,,\n");
}

TEST_CASE("steps run out of order report missing inputs") {
    Scratch s("order");
    auto c = config_for(write_corpus_file(s.dir, kTwoCliques), s.dir / "out");
    CHECK_THROWS_AS(cmd_analyze(c), IoError);
    cmd_build(c);
    CHECK_THROWS_AS(cmd_timeline(c), IoError);
    c.corpus = s.dir / "missing.jsonl";
    CHECK_THROWS_AS(cmd_build(c), IoError);
}

TEST_CASE("configuration errors") {
    RunConfig c;
    c.corpus = "x";
    c.window = std::pair{1995, 1985};
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.window.reset();
    c.tau = 1.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.tau = 0.15;
    c.query.clear();
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("default snapshot years") {
    CHECK(default_snapshot_years(1926, 1955, 10) == std::vector<int>{1930, 1940, 1950, 1955});
    CHECK(default_snapshot_years(1930, 1950, 10) == std::vector<int>{1930, 1940, 1950});
    CHECK(default_snapshot_years(1931, 1933, 10) == std::vector<int>{1933});
    CHECK(default_snapshot_years(2000, 1990, 10).empty());
    CHECK_THROWS_AS(default_snapshot_years(1900, 2000, 0), InvalidArgument);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
    Scratch s("determinism");
    RunConfig gen;
    gen.out = s.dir / "corpus";
    auto spec = SynthSpec::planted(4, 25, 0.25, 0.01, 8);
    spec.seed_rate = {0.5, 0.5, 0.5, 0.5};
    cmd_synth(gen, spec);

    auto a = config_for(gen.out / files::kSynthCorpus, s.dir / "a");
    a.expand_from = ExpandFrom::AllSeeds;
    auto b = a;
    b.out = s.dir / "b";
    b.threads = 4;
    cmd_all(a);
    cmd_all(b);
    for (const auto& entry : fs::directory_iterator(a.out)) {
        CAPTURE(entry.path().filename().string());
        CHECK(read_text_file(entry.path()) == read_text_file(b.out / entry.path().filename()));
    }
}

TEST_CASE("command-line exit codes") {
    Scratch s("cli");
    const auto corpus = (kData / "build12" / "corpus.jsonl").string();
    const auto out = (s.dir / "out").string();
    CHECK(run_cli("build --corpus " + corpus + " --out " + out) == 0);
    CHECK(read_text_file(s.dir / "out" / files::kEdges) == read_text_file(kData / "build12" / "edges.csv"));
    CHECK(run_cli("build --corpus " + corpus + " --out " + out + " --query magnetron") == 2);
    CHECK(run_cli("build --corpus " + (s.dir / "nope.jsonl").string() + " --out " + out) == 1);
    CHECK(run_cli("build --corpus " + corpus + " --out " + out + " --tau 2") != 0);
    CHECK(run_cli("no-such-command") != 0);
}
