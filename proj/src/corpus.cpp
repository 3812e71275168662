#include "citenet/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "citenet/error.hpp"

namespace citenet {

namespace {

constexpr bool is_token_char(unsigned char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

constexpr char fold(unsigned char c) noexcept {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

bool contains_phrase(const std::vector<std::string>& tokens, const std::vector<std::string>& phrase) {
    if (phrase.empty() || phrase.size() > tokens.size()) return false;
    return std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end()) != tokens.end();
}

// Parses one record; returns an error message instead of throwing so the
// loader can keep going.
std::optional<std::string> parse_record(const std::string& line, Document& doc) {
    nlohmann::json record;
    try {
        record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        return std::string("malformed JSON: ") + e.what();
    }
    if (!record.is_object()) return "record is not an object";

    auto id = record.find("id");
    if (id == record.end() || !id->is_string() || id->get_ref<const std::string&>().empty())
        return "missing or empty id";
    doc.id = id->get<std::string>();

    auto text_field = [&](const char* key, std::string& out) -> std::optional<std::string> {
        auto it = record.find(key);
        if (it == record.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) return std::string("field '") + key + "' is not a string";
        out = it->get<std::string>();
        return std::nullopt;
    };
    if (auto err = text_field("title", doc.title)) return err;
    if (auto err = text_field("abstract", doc.abstract)) return err;

    if (auto it = record.find("year"); it != record.end() && !it->is_null()) {
        if (!it->is_number_integer()) return "field 'year' is not an integer";
        doc.year = it->get<int>();
    }

    std::string type_text;
    if (auto err = text_field("doc_type", type_text)) return err;
    doc.doc_type = parse_doc_type(type_text);

    if (auto it = record.find("references"); it != record.end() && !it->is_null()) {
        if (!it->is_array()) return "field 'references' is not an array";
        doc.references.reserve(it->size());
        for (const auto& ref : *it) {
            if (!ref.is_string()) return "non-string entry in 'references'";
            doc.references.push_back(ref.get<std::string>());
        }
    }
    return std::nullopt;
}

}  // namespace

DocType parse_doc_type(std::string_view text) {
    std::string lower(text.size(), '\0');
    std::transform(text.begin(), text.end(), lower.begin(),
                   [](unsigned char c) { return fold(c); });
    if (lower == "patent") return DocType::Patent;
    if (lower == "journal") return DocType::Journal;
    if (lower == "book") return DocType::Book;
    if (lower == "conference") return DocType::Conference;
    return DocType::None;
}

std::string_view to_string(DocType type) {
    switch (type) {
        case DocType::Patent: return "Patent";
        case DocType::Journal: return "Journal";
        case DocType::Book: return "Book";
        case DocType::Conference: return "Conference";
        case DocType::None: return "None";
    }
    return "None";
}

std::string LoadReport::summary() const {
    std::ostringstream out;
    out << "corpus load: " << lines << " lines, " << accepted << " accepted, " << rejected
        << " rejected, " << repaired << " repaired";
    for (const auto& m : messages) out << "\n  " << m;
    return out.str();
}

std::string LoadReport::to_json() const {
    nlohmann::json j = {{"lines", lines},
                        {"accepted", accepted},
                        {"rejected", rejected},
                        {"repaired", repaired},
                        {"messages", messages}};
    return j.dump(2);
}

bool normalize_references(Document& doc) {
    const std::size_t before = doc.references.size();
    std::unordered_set<std::string> seen;
    std::vector<std::string> kept;
    kept.reserve(before);
    for (auto& ref : doc.references) {
        if (ref == doc.id) continue;
        if (seen.insert(ref).second) kept.push_back(std::move(ref));
    }
    doc.references = std::move(kept);
    return doc.references.size() != before;
}

bool Corpus::add(Document doc) {
    if (doc.id.empty() || index_.contains(doc.id)) return false;
    normalize_references(doc);
    if (doc.year) {
        if (!year_range_) {
            year_range_ = {*doc.year, *doc.year};
        } else {
            year_range_->first = std::min(year_range_->first, *doc.year);
            year_range_->second = std::max(year_range_->second, *doc.year);
        }
    }
    index_.emplace(doc.id, docs_.size());
    docs_.push_back(std::move(doc));
    return true;
}

const Document* Corpus::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &docs_[it->second];
}

Corpus load_corpus(std::istream& in, LoadReport& report) {
    report = LoadReport{};
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }))
            continue;
        ++report.lines;

        Document doc;
        if (auto err = parse_record(line, doc)) {
            ++report.rejected;
            report.messages.push_back("line " + std::to_string(line_no) + ": " + *err);
            continue;
        }
        if (corpus.contains(doc.id)) {
            ++report.rejected;
            report.messages.push_back("line " + std::to_string(line_no) + ": duplicate id '" +
                                      doc.id + "'");
            continue;
        }
        if (normalize_references(doc)) ++report.repaired;
        corpus.add(std::move(doc));
        ++report.accepted;
    }
    if (in.bad()) throw IoError("error while reading corpus stream");
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, LoadReport& report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file '" + path.string() + "'");
    return load_corpus(in, report);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
    for (const auto& doc : corpus.documents()) {
        nlohmann::ordered_json j;
        j["id"] = doc.id;
        j["title"] = doc.title;
        j["abstract"] = doc.abstract;
        if (doc.year) j["year"] = *doc.year;
        j["doc_type"] = std::string(to_string(doc.doc_type));
        j["references"] = doc.references;
        out << j.dump() << '\n';
    }
}

void write_corpus(const std::filesystem::path& path, const Corpus& corpus) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write corpus file '" + path.string() + "'");
    write_corpus(out, corpus);
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (is_token_char(c)) {
            current.push_back(fold(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

Query Query::from_phrases(const std::vector<std::string>& phrases) {
    if (phrases.empty()) throw InvalidArgument("query needs at least one phrase");
    Query q;
    for (const auto& p : phrases) {
        auto tokens = tokenize(p);
        if (tokens.empty()) throw InvalidArgument("query phrase '" + p + "' has no tokens");
        q.phrases_.push_back(std::move(tokens));
    }
    return q;
}

bool matches_query(const Document& doc, const Query& query) {
    const auto tokens = tokenize(doc.abstract);
    return std::any_of(query.phrases().begin(), query.phrases().end(),
                       [&](const auto& phrase) { return contains_phrase(tokens, phrase); });
}

std::set<std::string> select_seeds(const Corpus& corpus, const Query& query) {
    std::set<std::string> seeds;
    for (const auto& doc : corpus.documents())
        if (matches_query(doc, query)) seeds.insert(doc.id);
    return seeds;
}

}  // namespace citenet
