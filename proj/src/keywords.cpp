#include "citenet/keywords.hpp"

#include <algorithm>
#include <cmath>

#include "citenet/error.hpp"

namespace citenet {

namespace {

// English stopwords, list "en-1". Contractions appear as the fragments the
// tokenizer produces ("don't" -> "don", "t"). Changing this list changes the
// keyword output; bump kStopwordsVersion when editing.
constexpr std::string_view kStopwordList[] = {
    "a", "about", "above", "after", "again", "against", "ain", "all", "am", "an", "and", "any", "are",
    "aren", "as", "at", "be", "because", "been", "before", "being", "below", "between", "both", "but",
    "by", "can", "couldn", "d", "did", "didn", "do", "does", "doesn", "doing", "don", "down", "during",
    "each", "few", "for", "from", "further", "had", "hadn", "has", "hasn", "have", "haven", "having",
    "he", "her", "here", "hers", "herself", "him", "himself", "his", "how", "i", "if", "in", "into",
    "is", "isn", "it", "its", "itself", "just", "ll", "m", "ma", "me", "mightn", "more", "most",
    "mustn", "my", "myself", "needn", "no", "nor", "not", "now", "o", "of", "off", "on", "once",
    "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own", "re", "s", "same",
    "shan", "she", "should", "shouldn", "so", "some", "such", "t", "than", "that", "the", "their",
    "theirs", "them", "themselves", "then", "there", "these", "they", "this", "those", "through",
    "to", "too", "under", "until", "up", "ve", "very", "was", "wasn", "we", "were", "weren", "what",
    "when", "where", "which", "while", "who", "whom", "why", "will", "with", "won", "wouldn", "y",
    "you", "your", "yours", "yourself", "yourselves", "also", "although", "among", "another",
    "could", "either", "every", "however", "many", "may", "might", "much", "must", "neither", "per",
    "several", "shall", "since", "therefore", "thus", "upon", "via", "whether", "within", "without",
    "would", "yet",
};

void add_terms(const std::vector<std::string>& tokens, std::set<std::string>& terms) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (is_stopword(tokens[i])) continue;
        terms.insert(tokens[i]);
        if (i + 1 < tokens.size() && !is_stopword(tokens[i + 1])) terms.insert(tokens[i] + " " + tokens[i + 1]);
    }
}

}  // namespace

const std::set<std::string, std::less<>>& stopwords() {
    static const std::set<std::string, std::less<>> words(std::begin(kStopwordList), std::end(kStopwordList));
    return words;
}

bool is_stopword(std::string_view token) { return stopwords().contains(token); }

TermFrequencies term_candidates(const Corpus& corpus, const std::set<std::string>& ids) {
    TermFrequencies df;
    for (const auto& id : ids) {
        const Document* doc = corpus.find(id);
        if (!doc) continue;
        std::set<std::string> terms;
        add_terms(tokenize(doc->title), terms);
        add_terms(tokenize(doc->abstract), terms);
        for (const auto& t : terms) ++df[t];
    }
    return df;
}

double term_score(std::size_t community_df, std::size_t global_df, std::size_t community_size,
                  std::size_t corpus_size, double smoothing) {
    const double fc = static_cast<double>(community_df);
    const double fg = static_cast<double>(global_df);
    const double nc = static_cast<double>(community_size);
    const double n = static_cast<double>(corpus_size);
    const double inside = (fc + smoothing) / (nc + smoothing);
    const double outside = (fg - fc + smoothing) / (n - nc + smoothing);
    return (fc / nc) * std::log2(inside / outside);
}

std::vector<ScoredTerm> score_terms(const TermFrequencies& community, const TermFrequencies& global,
                                    std::size_t community_size, std::size_t corpus_size, double smoothing) {
    if (community_size == 0) throw InvalidArgument("score_terms: empty community");
    if (corpus_size < community_size) throw InvalidArgument("score_terms: community larger than corpus");
    std::vector<ScoredTerm> scored;
    scored.reserve(community.size());
    for (const auto& [term, fc] : community) {
        auto it = global.find(term);
        const std::size_t fg = it == global.end() ? fc : std::max(it->second, fc);
        scored.push_back({term, fc, fg, term_score(fc, fg, community_size, corpus_size, smoothing)});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredTerm& a, const ScoredTerm& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.community_df != b.community_df) return a.community_df > b.community_df;
        return a.term < b.term;
    });
    return scored;
}

std::vector<CommunityProfile> community_profiles(const Corpus& corpus, const CitationGraph& g,
                                                 const Partition& p, std::size_t top_k) {
    if (p.node_count() != g.node_count()) throw InvalidArgument("community_profiles: partition does not cover graph");
    std::set<std::string> all_ids;
    for (const auto& node : g.nodes()) all_ids.insert(node.id);
    const TermFrequencies global = term_candidates(corpus, all_ids);
    const std::size_t n = g.node_count();

    std::vector<CommunityProfile> profiles;
    const auto members = p.members();
    for (std::size_t c = 0; c < members.size(); ++c) {
        CommunityProfile prof;
        prof.community = c;
        prof.size = members[c].size();
        prof.size_pct = 100.0 * static_cast<double>(prof.size) / static_cast<double>(n);

        std::set<std::string> ids;
        std::size_t core = 0, degree_sum = 0;
        std::array<std::size_t, kDocTypeCount> types{};
        for (NodeId v : members[c]) {
            ids.insert(g.id(v));
            if (g.node(v).in_core) ++core;
            degree_sum += g.undirected_degree(v);
            const Document* doc = corpus.find(g.id(v));
            ++types[static_cast<std::size_t>(doc ? doc->doc_type : DocType::None)];
        }
        const double size = static_cast<double>(prof.size);
        prof.core_pct = 100.0 * static_cast<double>(core) / size;
        prof.avg_degree = static_cast<double>(degree_sum) / size;
        for (std::size_t t = 0; t < kDocTypeCount; ++t)
            prof.type_pct[t] = 100.0 * static_cast<double>(types[t]) / size;

        auto ranked = score_terms(term_candidates(corpus, ids), global, prof.size, n);
        if (ranked.size() > top_k) ranked.resize(top_k);
        prof.top_terms = std::move(ranked);
        profiles.push_back(std::move(prof));
    }
    return profiles;
}

}  // namespace citenet
