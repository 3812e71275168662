// citenet command-line driver.
//
//   citenet all --corpus docs.jsonl --out report/
//   citenet synth --profile dominant --seed 3 --out synth/
//
// Every flag may also come from a TOML/INI file given with --config; keys are
// the long flag names (e.g. `trials = 40`, `window = "1985:1995"`).

#include <charconv>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "citenet/app.hpp"
#include "citenet/error.hpp"

namespace {

using citenet::RunConfig;

std::pair<int, int> parse_window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw citenet::InvalidArgument("window must look like Y0:Y1, got '" + text + "'");
    auto parse = [&](std::string_view part) {
        int value = 0;
        const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || end != part.data() + part.size() || part.empty())
            throw citenet::InvalidArgument("bad year '" + std::string(part) + "' in window '" + text + "'");
        return value;
    };
    return {parse(std::string_view(text).substr(0, colon)), parse(std::string_view(text).substr(colon + 1))};
}

struct Flags {
    RunConfig config;
    std::string expand = "core";
    bool fixpoint = false;
    std::string window = "1985:1995";
    bool no_window = false;
    int split_year = 1970;
    bool no_split = false;
    // synth
    std::string profile = "dominant";
    std::size_t blocks = 10;
    std::size_t block_size = 30;
    double p_in = 0.3;
    double p_out = 0.005;
};

void add_pipeline_flags(CLI::App& cmd, Flags& f) {
    auto& c = f.config;
    cmd.add_option("--corpus", c.corpus, "JSON-lines corpus")->required();
    cmd.add_option("--query", c.query, "query phrase (repeatable)")->take_all();
    cmd.add_option("--expand-from", f.expand, "expansion source")
        ->check(CLI::IsMember({"core", "all-seeds"}));
    cmd.add_flag("--prune-fixpoint", f.fixpoint, "repeat leaf removal until nothing changes");
    cmd.add_option("--tau", c.tau, "teleportation probability");
    cmd.add_option("--trials", c.trials, "optimizer restarts");
    cmd.add_option("--topk", c.top_k, "keywords per community");
    cmd.add_option("--min-weight", c.min_weight, "reduced-network edge threshold for DOT/GraphML");
    cmd.add_option("--min-community-size", c.min_community_size, "hide smaller communities in tables and charts");
    cmd.add_option("--split-year", f.split_year, "last year of the early publication series");
    cmd.add_flag("--no-split", f.no_split, "write a single publication series");
    cmd.add_option("--window", f.window, "window bounds Y0:Y1");
    cmd.add_flag("--no-window", f.no_window, "skip the window table");
    cmd.add_option("--snapshot-years", c.snapshot_years, "explicit snapshot years")->delimiter(',');
    cmd.add_option("--snapshot-step", c.snapshot_step, "years between default snapshots");
    cmd.add_option("--layout-iterations", c.layout_iterations, "spring-embedder iterations");
}

void add_common_flags(CLI::App& cmd, Flags& f) {
    cmd.add_option("--out", f.config.out, "output directory");
    cmd.add_option("--seed", f.config.seed, "random seed");
    cmd.add_option("--threads", f.config.threads, "worker threads")->check(CLI::PositiveNumber);
}

void finish(Flags& f) {
    f.config.expand_from = f.expand == "all-seeds" ? citenet::ExpandFrom::AllSeeds : citenet::ExpandFrom::Core;
    f.config.prune = f.fixpoint ? citenet::PruneMode::Fixpoint : citenet::PruneMode::SinglePass;
    f.config.window = f.no_window ? std::nullopt : std::optional(parse_window(f.window));
    f.config.split_year = f.no_split ? std::nullopt : std::optional(f.split_year);
}

citenet::SynthSpec synth_spec(const Flags& f) {
    if (f.profile == "dominant") return citenet::SynthSpec::dominant_area(f.config.seed);
    return citenet::SynthSpec::planted(f.blocks, f.block_size, f.p_in, f.p_out, f.config.seed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"citation network construction and analysis"};
    app.set_config("--config", "", "TOML/INI file with flag values");
    app.require_subcommand(1);
    Flags f;

    using Command = citenet::CommandResult (*)(const RunConfig&);
    std::vector<std::pair<CLI::App*, Command>> pipeline;
    for (auto [name, help, fn] : {std::tuple{"build", "construct the citation network", &citenet::cmd_build},
                                  std::tuple{"analyze", "communities, profiles, measures", &citenet::cmd_analyze},
                                  std::tuple{"timeline", "temporal series and snapshots", &citenet::cmd_timeline},
                                  std::tuple{"layout", "force-directed drawing", &citenet::cmd_layout},
                                  std::tuple{"all", "build, analyze, timeline and layout", &citenet::cmd_all}}) {
        auto* cmd = app.add_subcommand(name, help);
        add_pipeline_flags(*cmd, f);
        add_common_flags(*cmd, f);
        pipeline.emplace_back(cmd, fn);
    }
    // layout needs no corpus
    pipeline[3].first->get_option("--corpus")->required(false);

    auto* synth = app.add_subcommand("synth", "write a synthetic corpus with ground truth");
    add_common_flags(*synth, f);
    synth->add_option("--profile", f.profile, "dominant (one large block plus satellites) or planted")
        ->check(CLI::IsMember({"dominant", "planted"}));
    synth->add_option("--blocks", f.blocks, "planted: number of blocks");
    synth->add_option("--block-size", f.block_size, "planted: documents per block");
    synth->add_option("--p-in", f.p_in, "planted: within-block citation probability");
    synth->add_option("--p-out", f.p_out, "planted: between-block citation probability");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        finish(f);
        citenet::CommandResult result;
        if (synth->parsed()) {
            result = citenet::cmd_synth(f.config, synth_spec(f));
        } else {
            for (auto& [cmd, fn] : pipeline)
                if (cmd->parsed()) result = fn(f.config);
        }
        std::cout << result.summary;
        for (const auto& path : result.written) std::cout << "wrote " << path.string() << '\n';
        return 0;
    } catch (const citenet::EmptyResult& e) {
        std::cerr << "citenet: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "citenet: " << e.what() << '\n';
        return 1;
    }
}
