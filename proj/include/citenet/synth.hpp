#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "citenet/community.hpp"
#include "citenet/corpus.hpp"
#include "citenet/graph.hpp"

namespace citenet {

/// Parameters of a synthetic corpus with planted blocks.
struct SynthSpec {
    std::vector<std::size_t> block_sizes;
    double p_in = 0.3;   ///< citation probability for an eligible same-block pair
    double p_out = 0.005;
    /// Per block override of p_in; empty uses p_in everywhere.
    std::vector<double> block_p_in;

    /// Per block: probability that a document carries the query marker.
    /// Empty means no seeds anywhere.
    std::vector<double> seed_rate;
    /// Phrases inserted into seed abstracts, one picked per document.
    std::vector<std::string> marker_phrases{"bipolar junction transistor", "BJT"};

    int first_year = 1926;
    int last_year = 2018;
    std::vector<int> peak_year;      ///< per block; empty spreads peaks evenly
    std::vector<double> year_spread; ///< per block standard deviation; empty means 8 years

    std::size_t markers_per_block = 8;
    std::size_t filler_words = 60;
    std::size_t abstract_tokens = 40;
    std::size_t title_tokens = 6;
    double filler_fraction = 0.7;

    /// Per block weights over Patent, Journal, Book, Conference, None.
    /// Empty means a fixed rotation of profiles.
    std::vector<std::array<double, kDocTypeCount>> type_weights;

    std::uint64_t seed = 1;

    /// Equal blocks, no seeds.
    static SynthSpec planted(std::size_t blocks, std::size_t block_size, double p_in, double p_out,
                             std::uint64_t seed);
    /// One dominant seed-rich block plus nine satellites with staggered
    /// year peaks, about 3000 documents.
    static SynthSpec dominant_area(std::uint64_t seed);

    /// Throws InvalidArgument when parameters are out of range or infeasible.
    void validate() const;
};

struct GroundTruth {
    std::vector<std::string> ids;    ///< corpus order
    std::vector<std::size_t> block;
    std::vector<bool> is_seed;
    std::vector<int> year;
    std::vector<int> peak_year;                       ///< per block; the strict mode of its years
    std::vector<std::vector<std::string>> markers;    ///< per block
    std::vector<std::string> filler;
    /// Largest weak component of the seed-induced citation graph, from the
    /// generator's own edge list.
    std::set<std::string> seed_component;

    std::size_t block_of(const std::string& id) const;
};

struct SynthCorpus {
    Corpus corpus;
    GroundTruth truth;
};

SynthCorpus generate(const SynthSpec& spec);

/// CSV `doc_id,block,is_seed,year`.
void write_ground_truth(std::ostream& out, const GroundTruth& truth);

/// Planted blocks as a partition of g's nodes. Throws InvalidArgument if a
/// node is not a generated document.
Partition planted_partition(const CitationGraph& g, const GroundTruth& truth);

}  // namespace citenet
