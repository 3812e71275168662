#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "citenet/community.hpp"
#include "citenet/corpus.hpp"
#include "citenet/graph.hpp"

namespace citenet {

/// Version tag of the bundled English stopword list.
inline constexpr std::string_view kStopwordsVersion = "en-1";

const std::set<std::string, std::less<>>& stopwords();
bool is_stopword(std::string_view token);

/// term -> number of documents containing it.
using TermFrequencies = std::map<std::string, std::size_t>;

/// Unigrams and bigrams of title and abstract (each field tokenized
/// separately, no bigram across the boundary), stopwords dropped, counted
/// once per document. Ids missing from the corpus are ignored.
TermFrequencies term_candidates(const Corpus& corpus, const std::set<std::string>& ids);

inline constexpr double kKeywordSmoothing = 0.5;

/// Smoothed log-odds contrast of a term between a community and the rest:
/// (f_c / n_c) * log2(((f_c + a) / (n_c + a)) / ((f_g - f_c + a) / (n - n_c + a))).
double term_score(std::size_t community_df, std::size_t global_df, std::size_t community_size,
                  std::size_t corpus_size, double smoothing = kKeywordSmoothing);

struct ScoredTerm {
    std::string term;
    std::size_t community_df = 0;
    std::size_t global_df = 0;
    double score = 0.0;
};

/// Scores every term of the community map; sorted by score descending, then
/// community frequency descending, then term. Throws InvalidArgument when
/// community_size is zero.
std::vector<ScoredTerm> score_terms(const TermFrequencies& community, const TermFrequencies& global,
                                    std::size_t community_size, std::size_t corpus_size,
                                    double smoothing = kKeywordSmoothing);

struct CommunityProfile {
    std::size_t community = 0;
    std::size_t size = 0;
    double size_pct = 0.0;  ///< share of all network nodes
    double core_pct = 0.0;
    double avg_degree = 0.0;  ///< mean undirected degree of members
    std::array<double, kDocTypeCount> type_pct{};  ///< Patent, Journal, Book, Conference, None
    std::vector<ScoredTerm> top_terms;
};

/// One profile per community in canonical order. Term contrast uses the
/// network's documents as the reference collection.
std::vector<CommunityProfile> community_profiles(const Corpus& corpus, const CitationGraph& g,
                                                 const Partition& p, std::size_t top_k = 5);

}  // namespace citenet
