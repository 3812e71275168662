#include "citenet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "citenet/error.hpp"
#include "citenet/keywords.hpp"
#include "citenet/rng.hpp"

namespace citenet {

namespace {

constexpr std::string_view kOnsets[] = {"b", "c", "d", "f", "g", "k", "l", "m", "n", "p",
                                        "r", "s", "t", "v", "z", "br", "cr", "dr", "tr", "pl"};
constexpr std::string_view kVowels[] = {"a", "e", "i", "o", "u", "ai", "ou"};
constexpr std::string_view kCodas[] = {"", "", "n", "r", "s", "x", "l"};

constexpr std::array<std::array<double, kDocTypeCount>, 5> kTypeProfiles = {{
    {0.02, 0.68, 0.01, 0.23, 0.06},
    {0.03, 0.59, 0.01, 0.31, 0.06},
    {0.85, 0.06, 0.00, 0.08, 0.01},
    {0.02, 0.44, 0.01, 0.44, 0.09},
    {0.19, 0.39, 0.01, 0.33, 0.08},
}};

std::string pseudo_word(Rng& rng) {
    std::string w;
    const std::size_t syllables = 2 + rng.below(2);
    for (std::size_t i = 0; i < syllables; ++i) {
        w += kOnsets[rng.below(std::size(kOnsets))];
        w += kVowels[rng.below(std::size(kVowels))];
    }
    w += kCodas[rng.below(std::size(kCodas))];
    return w;
}

// Counts per year from a discretized Gaussian, largest remainder rounding,
// then forced to have a strict mode at the peak.
std::vector<int> allocate_years(std::size_t count, int first, int last, int peak, double spread, Rng& rng) {
    const std::size_t span = static_cast<std::size_t>(last - first + 1);
    std::vector<double> weight(span);
    for (std::size_t i = 0; i < span; ++i) {
        const double d = static_cast<double>(first + static_cast<int>(i) - peak) / spread;
        weight[i] = std::exp(-0.5 * d * d);
    }
    const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
    std::vector<std::size_t> alloc(span);
    std::vector<std::pair<double, std::size_t>> remainder;
    std::size_t used = 0;
    for (std::size_t i = 0; i < span; ++i) {
        const double exact = static_cast<double>(count) * weight[i] / total;
        alloc[i] = static_cast<std::size_t>(std::floor(exact));
        used += alloc[i];
        remainder.emplace_back(exact - std::floor(exact), i);
    }
    std::stable_sort(remainder.begin(), remainder.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; used < count; ++i, ++used) ++alloc[remainder[i % span].second];

    const std::size_t peak_index = static_cast<std::size_t>(peak - first);
    for (std::size_t i = 0; i < span; ++i) {
        while (i != peak_index && alloc[i] > 0 && alloc[i] >= alloc[peak_index]) {
            --alloc[i];
            ++alloc[peak_index];
        }
    }
    std::vector<int> years;
    years.reserve(count);
    for (std::size_t i = 0; i < span; ++i) years.insert(years.end(), alloc[i], first + static_cast<int>(i));
    rng.shuffle(std::span<int>(years));
    return years;
}

DocType draw_type(const std::array<double, kDocTypeCount>& weights, Rng& rng) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double x = rng.uniform() * total;
    for (std::size_t t = 0; t < kDocTypeCount; ++t) {
        if (x < weights[t]) return static_cast<DocType>(t);
        x -= weights[t];
    }
    return DocType::None;
}

std::string compose(std::size_t tokens, double filler_fraction, const std::vector<std::string>& filler,
                    const std::vector<std::string>& markers, Rng& rng) {
    std::string text;
    for (std::size_t i = 0; i < tokens; ++i) {
        if (i) text += ' ';
        const auto& pool = rng.bernoulli(filler_fraction) ? filler : markers;
        text += pool[rng.below(pool.size())];
    }
    return text;
}

class Components {
public:
    explicit Components(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t root(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void join(std::size_t a, std::size_t b) { parent_[root(a)] = root(b); }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

SynthSpec SynthSpec::planted(std::size_t blocks, std::size_t block_size, double p_in, double p_out,
                             std::uint64_t seed) {
    SynthSpec s;
    s.block_sizes.assign(blocks, block_size);
    s.p_in = p_in;
    s.p_out = p_out;
    s.seed = seed;
    return s;
}

SynthSpec SynthSpec::dominant_area(std::uint64_t seed) {
    SynthSpec s;
    s.block_sizes = {900, 380, 330, 290, 260, 230, 200, 170, 140, 100};
    s.p_in = 0.04;
    s.p_out = 0.0015;
    // Satellite density scales as 1/size so a member collects a few citations
    // from its block's seeds and survives pruning; their seed share stays
    // well below the dominant block's.
    s.block_p_in = {0.04, 0.12, 0.14, 0.155, 0.17, 0.2, 0.22, 0.26, 0.32, 0.45};
    s.seed_rate = {0.35, 0.15, 0.15, 0.15, 0.15, 0.15, 0.15, 0.15, 0.15, 0.15};
    s.peak_year = {1990, 2008, 1998, 1982, 2004, 2010, 1975, 1995, 2013, 2001};
    s.year_spread = {10, 7, 9, 11, 8, 6, 12, 9, 5, 7};
    s.first_year = 1926;
    s.last_year = 2018;
    s.seed = seed;
    return s;
}

void SynthSpec::validate() const {
    if (block_sizes.empty()) throw InvalidArgument("synth: at least one block is required");
    for (auto size : block_sizes)
        if (size == 0) throw InvalidArgument("synth: block sizes must be positive");
    if (!(p_out >= 0.0 && p_out < p_in && p_in <= 1.0))
        throw InvalidArgument("synth: need 0 <= p_out < p_in <= 1");
    for (auto size : block_sizes)
        if (size == 1)
            throw InvalidArgument("synth: a block of size 1 cannot hold within-block citations (p_in > 0)");
    const std::size_t k = block_sizes.size();
    if (!block_p_in.empty()) {
        if (block_p_in.size() != k) throw InvalidArgument("synth: block_p_in needs one entry per block");
        for (double p : block_p_in)
            if (!(p > p_out && p <= 1.0)) throw InvalidArgument("synth: need p_out < block_p_in <= 1");
    }
    if (!seed_rate.empty() && seed_rate.size() != k) throw InvalidArgument("synth: seed_rate needs one entry per block");
    for (double r : seed_rate)
        if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("synth: seed rates must lie in [0, 1]");
    if (first_year > last_year) throw InvalidArgument("synth: first_year after last_year");
    if (!peak_year.empty()) {
        if (peak_year.size() != k) throw InvalidArgument("synth: peak_year needs one entry per block");
        for (int y : peak_year)
            if (y < first_year || y > last_year) throw InvalidArgument("synth: peak year outside year range");
    }
    if (!year_spread.empty()) {
        if (year_spread.size() != k) throw InvalidArgument("synth: year_spread needs one entry per block");
        for (double s : year_spread)
            if (!(s > 0.0)) throw InvalidArgument("synth: year spreads must be positive");
    }
    if (!type_weights.empty() && type_weights.size() != k)
        throw InvalidArgument("synth: type_weights needs one entry per block");
    if (markers_per_block == 0 || filler_words == 0) throw InvalidArgument("synth: vocabularies must be non-empty");
    if (!(filler_fraction >= 0.0 && filler_fraction < 1.0))
        throw InvalidArgument("synth: filler_fraction must lie in [0, 1)");
    if (std::any_of(seed_rate.begin(), seed_rate.end(), [](double r) { return r > 0.0; })) {
        if (marker_phrases.empty()) throw InvalidArgument("synth: seeds requested without marker phrases");
        for (const auto& m : marker_phrases)
            if (tokenize(m).empty()) throw InvalidArgument("synth: marker phrase without tokens");
    }
}

std::size_t GroundTruth::block_of(const std::string& id) const {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) throw InvalidArgument("ground truth: unknown id '" + id + "'");
    return block[static_cast<std::size_t>(it - ids.begin())];
}

SynthCorpus generate(const SynthSpec& spec) {
    spec.validate();
    const std::size_t k = spec.block_sizes.size();
    const std::size_t n = std::accumulate(spec.block_sizes.begin(), spec.block_sizes.end(), std::size_t{0});

    Rng vocab_rng(derive_seed(spec.seed, 1));
    Rng layout_rng(derive_seed(spec.seed, 2));
    Rng text_rng(derive_seed(spec.seed, 3));
    Rng edge_rng(derive_seed(spec.seed, 4));

    GroundTruth truth;

    // Vocabularies: disjoint, no stopwords, nothing that could form a query phrase.
    std::set<std::string> taken;
    for (const auto& phrase : spec.marker_phrases)
        for (auto& t : tokenize(phrase)) taken.insert(t);
    auto fresh_word = [&] {
        while (true) {
            std::string w = pseudo_word(vocab_rng);
            if (w.size() >= 4 && !is_stopword(w) && taken.insert(w).second) return w;
        }
    };
    truth.markers.resize(k);
    for (auto& m : truth.markers)
        for (std::size_t j = 0; j < spec.markers_per_block; ++j) m.push_back(fresh_word());
    for (std::size_t j = 0; j < spec.filler_words; ++j) truth.filler.push_back(fresh_word());

    // Block membership, shuffled over document ids.
    std::vector<std::size_t> block;
    for (std::size_t b = 0; b < k; ++b) block.insert(block.end(), spec.block_sizes[b], b);
    layout_rng.shuffle(std::span<std::size_t>(block));

    // Years per block.
    truth.peak_year.resize(k);
    std::vector<std::vector<int>> block_years(k);
    const int span = spec.last_year - spec.first_year;
    for (std::size_t b = 0; b < k; ++b) {
        const int peak = spec.peak_year.empty()
                             ? spec.first_year + static_cast<int>((static_cast<double>(b) + 0.5) * span / static_cast<double>(k))
                             : spec.peak_year[b];
        const double spread = spec.year_spread.empty() ? 8.0 : spec.year_spread[b];
        truth.peak_year[b] = peak;
        block_years[b] = allocate_years(spec.block_sizes[b], spec.first_year, spec.last_year, peak, spread, layout_rng);
    }

    const int width = static_cast<int>(std::to_string(n).size());
    std::vector<std::size_t> next_year(k, 0);
    std::vector<Document> docs(n);
    truth.ids.resize(n);
    truth.block = block;
    truth.year.resize(n);
    truth.is_seed.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::ostringstream id;
        id << 'W' << std::setw(width) << std::setfill('0') << i;
        const std::size_t b = block[i];
        Document& doc = docs[i];
        doc.id = truth.ids[i] = id.str();
        doc.year = truth.year[i] = block_years[b][next_year[b]++];

        const auto& weights = spec.type_weights.empty() ? kTypeProfiles[b % kTypeProfiles.size()] : spec.type_weights[b];
        doc.doc_type = draw_type(weights, text_rng);
        doc.title = compose(spec.title_tokens, spec.filler_fraction, truth.filler, truth.markers[b], text_rng);
        doc.abstract = compose(spec.abstract_tokens, spec.filler_fraction, truth.filler, truth.markers[b], text_rng);
        if (!spec.seed_rate.empty() && text_rng.bernoulli(spec.seed_rate[b])) {
            truth.is_seed[i] = true;
            const auto& phrase = spec.marker_phrases[text_rng.below(spec.marker_phrases.size())];
            doc.abstract = "A study of the " + phrase + ". " + doc.abstract;
        }
    }

    // Citations: u may cite v only if u is not older than v.
    Components seeds(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v || truth.year[u] < truth.year[v]) continue;
            const double p = block[u] != block[v]       ? spec.p_out
                             : spec.block_p_in.empty() ? spec.p_in
                                                       : spec.block_p_in[block[u]];
            if (!edge_rng.bernoulli(p)) continue;
            docs[u].references.push_back(docs[v].id);
            if (truth.is_seed[u] && truth.is_seed[v]) seeds.join(u, v);
        }
    }

    // Largest seed component; ties go to the one holding the smallest id.
    std::unordered_map<std::size_t, std::pair<std::size_t, std::size_t>> comp;  // root -> (size, min index)
    for (std::size_t i = 0; i < n; ++i) {
        if (!truth.is_seed[i]) continue;
        auto [it, inserted] = comp.try_emplace(seeds.root(i), 0, i);
        ++it->second.first;
        it->second.second = std::min(it->second.second, i);
    }
    std::size_t best_root = n;
    std::pair<std::size_t, std::size_t> best{0, n};
    for (const auto& [root, info] : comp) {
        if (info.first > best.first || (info.first == best.first && info.second < best.second)) {
            best = info;
            best_root = root;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (truth.is_seed[i] && seeds.root(i) == best_root) truth.seed_component.insert(truth.ids[i]);

    SynthCorpus out;
    for (auto& d : docs) out.corpus.add(std::move(d));
    out.truth = std::move(truth);
    return out;
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
    out << "doc_id,block,is_seed,year\n";
    for (std::size_t i = 0; i < truth.ids.size(); ++i)
        out << truth.ids[i] << ',' << truth.block[i] << ',' << (truth.is_seed[i] ? 1 : 0) << ','
            << truth.year[i] << '\n';
}

Partition planted_partition(const CitationGraph& g, const GroundTruth& truth) {
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < truth.ids.size(); ++i) index.emplace(truth.ids[i], i);
    std::vector<std::size_t> labels(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto it = index.find(g.id(v));
        if (it == index.end()) throw InvalidArgument("planted_partition: node '" + g.id(v) + "' not generated");
        labels[v] = truth.block[it->second];
    }
    return Partition::from_labels(labels);
}

}  // namespace citenet
