#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace citenet {

enum class DocType { Patent, Journal, Book, Conference, None };

inline constexpr std::size_t kDocTypeCount = 5;

/// Case-insensitive; anything outside the four named types maps to None.
DocType parse_doc_type(std::string_view text);
std::string_view to_string(DocType type);

struct Document {
    std::string id;
    std::string title;
    std::string abstract;
    std::optional<int> year;
    DocType doc_type = DocType::None;
    std::vector<std::string> references;

    bool operator==(const Document&) const = default;
};

/// Outcome of a corpus load. Malformed and rejected lines are not fatal.
struct LoadReport {
    std::size_t lines = 0;     ///< non-blank lines seen
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t repaired = 0;  ///< accepted records whose references were deduplicated or lost a self-reference
    std::vector<std::string> messages;

    std::string summary() const;
    std::string to_json() const;
};

/// Immutable, id-indexed document collection.
class Corpus {
public:
    Corpus() = default;

    /// Inserts the document unless its id is empty or already present.
    /// References are normalized (deduplicated, self-reference dropped).
    /// Returns false when rejected.
    bool add(Document doc);

    const Document* find(std::string_view id) const;
    bool contains(std::string_view id) const { return find(id) != nullptr; }

    std::size_t size() const noexcept { return docs_.size(); }
    bool empty() const noexcept { return docs_.empty(); }

    /// Documents in insertion order.
    const std::vector<Document>& documents() const noexcept { return docs_; }

    /// (min, max) over documents that carry a year.
    std::optional<std::pair<int, int>> year_range() const noexcept { return year_range_; }

    bool operator==(const Corpus& other) const { return docs_ == other.docs_; }

private:
    std::vector<Document> docs_;
    std::unordered_map<std::string, std::size_t> index_;
    std::optional<std::pair<int, int>> year_range_;
};

/// Removes duplicate and self references in place; returns true if anything changed.
bool normalize_references(Document& doc);

Corpus load_corpus(const std::filesystem::path& path, LoadReport& report);
Corpus load_corpus(std::istream& in, LoadReport& report);

/// One record per line, keys in a fixed order; the exact bytes the loader accepts.
void write_corpus(std::ostream& out, const Corpus& corpus);
void write_corpus(const std::filesystem::path& path, const Corpus& corpus);

/// Case-folded maximal runs of ASCII letters and digits.
std::vector<std::string> tokenize(std::string_view text);

/// Seed-keyword query: a disjunction of token phrases.
class Query {
public:
    /// Each input string is tokenized into one phrase. Throws InvalidArgument
    /// when the list is empty or any phrase has no tokens.
    static Query from_phrases(const std::vector<std::string>& phrases);

    const std::vector<std::vector<std::string>>& phrases() const noexcept { return phrases_; }

private:
    std::vector<std::vector<std::string>> phrases_;
};

/// True iff some phrase occurs as a contiguous token run of the abstract.
bool matches_query(const Document& doc, const Query& query);

std::set<std::string> select_seeds(const Corpus& corpus, const Query& query);

}  // namespace citenet
