#include "citenet/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "citenet/error.hpp"

namespace citenet {

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string dot_quote(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

bool parse_bool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw InvalidArgument("bad boolean '" + text + "' for " + what);
}

template <typename T>
T parse_number(std::string_view text, const std::string& what) {
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw InvalidArgument("bad number '" + std::string(text) + "' for " + what);
    return value;
}

struct RawNode {
    NodeInfo info;
    std::optional<int> year;
    std::optional<DocType> doc_type;
    std::optional<std::size_t> community;
};

GraphFile assemble(std::vector<RawNode> raw, const std::vector<IdEdge>& edges) {
    std::vector<NodeInfo> infos;
    infos.reserve(raw.size());
    for (const auto& r : raw) infos.push_back(r.info);
    GraphFile file;
    file.graph = CitationGraph::from_parts(std::move(infos), edges);
    const std::size_t n = file.graph.node_count();
    file.annotations.year.resize(n);
    file.annotations.doc_type.resize(n);
    file.annotations.community.resize(n);
    for (auto& r : raw) {
        const NodeId v = *file.graph.find(r.info.id);
        file.annotations.year[v] = r.year;
        file.annotations.doc_type[v] = r.doc_type;
        file.annotations.community[v] = r.community;
    }
    return file;
}

void set_attribute(RawNode& node, const std::string& name, const std::string& value) {
    if (name == "is_seed") node.info.is_seed = parse_bool(value, name);
    else if (name == "in_core") node.info.in_core = parse_bool(value, name);
    else if (name == "year") node.year = parse_number<int>(value, name);
    else if (name == "doc_type") node.doc_type = parse_doc_type(value);
    else if (name == "community") node.community = parse_number<std::size_t>(value, name);
    // Unknown attributes are ignored.
}

// Tokens of the DOT subset this tool writes.
class DotLexer {
public:
    explicit DotLexer(std::string text) : text_(std::move(text)) {}

    // Returns false at end of input. Quoted strings come back unescaped with
    // quoted == true.
    bool next(std::string& token, bool& quoted) {
        skip_space();
        quoted = false;
        token.clear();
        if (pos_ >= text_.size()) return false;
        const char c = text_[pos_];
        if (c == '"') {
            quoted = true;
            ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
                token += text_[pos_++];
            }
            if (pos_ >= text_.size()) throw InvalidArgument("DOT: unterminated string");
            ++pos_;
            return true;
        }
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            token = "->";
            pos_ += 2;
            return true;
        }
        if (std::string_view("{}[]=,;").find(c) != std::string_view::npos) {
            token = c;
            ++pos_;
            return true;
        }
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_' || text_[pos_] == '.' || text_[pos_] == '-')) {
            token += text_[pos_++];
        }
        if (token.empty()) throw InvalidArgument(std::string("DOT: unexpected character '") + c + "'");
        return true;
    }

private:
    void skip_space() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_.compare(pos_, 2, "//") == 0) {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string text_;
    std::size_t pos_ = 0;
};

std::string slurp(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> parse_csv_line(std::string_view line) {
    std::vector<std::string> fields(1);
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    fields.back() += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    if (in_quotes) throw InvalidArgument("CSV: unterminated quoted field");
    return fields;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return slurp(in);
}

NodeAnnotations annotate(const CitationGraph& g, const Corpus& corpus, const Partition* p) {
    if (p && p->node_count() != g.node_count()) throw InvalidArgument("annotate: partition does not cover graph");
    NodeAnnotations notes;
    const std::size_t n = g.node_count();
    notes.year.resize(n);
    notes.doc_type.resize(n);
    notes.community.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        if (const Document* doc = corpus.find(g.id(v))) {
            notes.year[v] = doc->year;
            notes.doc_type[v] = doc->doc_type;
        }
        if (p) notes.community[v] = p->community(v);
    }
    return notes;
}

void write_graphml(std::ostream& out, const CitationGraph& g, const NodeAnnotations& notes) {
    const bool has_community = std::any_of(notes.community.begin(), notes.community.end(),
                                           [](const auto& c) { return c.has_value(); });
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"is_seed\" for=\"node\" attr.name=\"is_seed\" attr.type=\"boolean\"/>\n"
        << "  <key id=\"in_core\" for=\"node\" attr.name=\"in_core\" attr.type=\"boolean\"/>\n"
        << "  <key id=\"year\" for=\"node\" attr.name=\"year\" attr.type=\"int\"/>\n"
        << "  <key id=\"doc_type\" for=\"node\" attr.name=\"doc_type\" attr.type=\"string\"/>\n";
    if (has_community) out << "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n";
    out << "  <graph id=\"citations\" edgedefault=\"directed\">\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto& node = g.node(v);
        out << "    <node id=\"" << xml_escape(node.id) << "\">"
            << "<data key=\"is_seed\">" << (node.is_seed ? "true" : "false") << "</data>"
            << "<data key=\"in_core\">" << (node.in_core ? "true" : "false") << "</data>";
        if (v < notes.year.size() && notes.year[v]) out << "<data key=\"year\">" << *notes.year[v] << "</data>";
        if (v < notes.doc_type.size() && notes.doc_type[v])
            out << "<data key=\"doc_type\">" << to_string(*notes.doc_type[v]) << "</data>";
        if (v < notes.community.size() && notes.community[v])
            out << "<data key=\"community\">" << *notes.community[v] << "</data>";
        out << "</node>\n";
    }
    for (const auto& [u, v] : g.edges())
        out << "    <edge source=\"" << xml_escape(g.id(u)) << "\" target=\"" << xml_escape(g.id(v)) << "\"/>\n";
    out << "  </graph>\n</graphml>\n";
}

GraphFile read_graphml(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw InvalidArgument(std::string("GraphML: ") + e.what());
    }
    const auto root = tree.get_child_optional("graphml");
    if (!root) throw InvalidArgument("GraphML: missing <graphml> root");

    std::unordered_map<std::string, std::string> key_names;
    for (const auto& [tag, child] : *root) {
        if (tag != "key") continue;
        const auto id = child.get<std::string>("<xmlattr>.id", "");
        key_names[id] = child.get<std::string>("<xmlattr>.attr.name", id);
    }
    const auto graph = root->get_child_optional("graph");
    if (!graph) throw InvalidArgument("GraphML: missing <graph>");

    std::vector<RawNode> nodes;
    std::vector<IdEdge> edges;
    for (const auto& [tag, child] : *graph) {
        if (tag == "node") {
            RawNode node;
            node.info.id = child.get<std::string>("<xmlattr>.id", "");
            for (const auto& [dtag, data] : child) {
                if (dtag != "data") continue;
                const auto key = data.get<std::string>("<xmlattr>.key", "");
                auto it = key_names.find(key);
                set_attribute(node, it == key_names.end() ? key : it->second, data.data());
            }
            nodes.push_back(std::move(node));
        } else if (tag == "edge") {
            edges.emplace_back(child.get<std::string>("<xmlattr>.source", ""),
                               child.get<std::string>("<xmlattr>.target", ""));
        }
    }
    return assemble(std::move(nodes), edges);
}

void write_dot(std::ostream& out, const CitationGraph& g, const NodeAnnotations& notes) {
    out << "digraph citations {\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto& node = g.node(v);
        out << "  " << dot_quote(node.id) << " [is_seed=" << (node.is_seed ? "true" : "false")
            << ", in_core=" << (node.in_core ? "true" : "false");
        if (v < notes.year.size() && notes.year[v]) out << ", year=" << *notes.year[v];
        if (v < notes.doc_type.size() && notes.doc_type[v]) out << ", doc_type=" << dot_quote(to_string(*notes.doc_type[v]));
        if (v < notes.community.size() && notes.community[v]) out << ", community=" << *notes.community[v];
        out << "];\n";
    }
    for (const auto& [u, v] : g.edges()) out << "  " << dot_quote(g.id(u)) << " -> " << dot_quote(g.id(v)) << ";\n";
    out << "}\n";
}

GraphFile read_dot(std::istream& in) {
    DotLexer lex(slurp(in));
    std::string tok;
    bool quoted = false;
    auto expect = [&](std::string_view what) {
        if (!lex.next(tok, quoted) || quoted || tok != what)
            throw InvalidArgument("DOT: expected '" + std::string(what) + "', got '" + tok + "'");
    };
    if (!lex.next(tok, quoted) || tok != "digraph") throw InvalidArgument("DOT: expected 'digraph'");
    if (!lex.next(tok, quoted)) throw InvalidArgument("DOT: truncated header");
    if (tok == "{" && !quoted) {
        // anonymous graph
    } else {
        expect("{");
    }

    std::vector<RawNode> nodes;
    std::unordered_map<std::string, std::size_t> node_index;
    std::vector<IdEdge> edges;
    auto node_for = [&](const std::string& id) -> RawNode& {
        auto [it, inserted] = node_index.try_emplace(id, nodes.size());
        if (inserted) {
            nodes.emplace_back();
            nodes.back().info.id = id;
        }
        return nodes[it->second];
    };

    while (lex.next(tok, quoted)) {
        if (!quoted && tok == "}") return assemble(std::move(nodes), edges);
        if (!quoted && tok == ";") continue;
        const std::string first = tok;
        if (!lex.next(tok, quoted)) throw InvalidArgument("DOT: truncated statement");
        if (!quoted && tok == "->") {
            if (!lex.next(tok, quoted)) throw InvalidArgument("DOT: edge without target");
            node_for(first);
            node_for(tok);
            edges.emplace_back(first, tok);
            if (!lex.next(tok, quoted)) throw InvalidArgument("DOT: truncated edge");
            if (!quoted && tok == "[") {
                while (lex.next(tok, quoted) && !(tok == "]" && !quoted)) {
                }
                if (!lex.next(tok, quoted)) throw InvalidArgument("DOT: truncated edge");
            }
            if (quoted || tok != ";") throw InvalidArgument("DOT: expected ';' after edge");
            continue;
        }
        RawNode& node = node_for(first);
        if (!quoted && tok == "[") {
            while (true) {
                if (!lex.next(tok, quoted)) throw InvalidArgument("DOT: unterminated attribute list");
                if (!quoted && tok == "]") break;
                if (!quoted && tok == ",") continue;
                const std::string name = tok;
                expect("=");
                if (!lex.next(tok, quoted)) throw InvalidArgument("DOT: attribute without value");
                set_attribute(node, name, tok);
            }
            if (!lex.next(tok, quoted)) throw InvalidArgument("DOT: truncated node statement");
        }
        if (quoted || tok != ";") throw InvalidArgument("DOT: expected ';' after node '" + first + "'");
    }
    throw InvalidArgument("DOT: missing closing '}'");
}

void write_edge_csv(std::ostream& out, const CitationGraph& g) {
    out << "source,target\n";
    for (const auto& [u, v] : g.edges()) out << csv_field(g.id(u)) << ',' << csv_field(g.id(v)) << '\n';
}

CitationGraph read_edge_csv(std::istream& in) {
    std::string line;
    std::getline(in, line);
    std::vector<IdEdge> edges;
    std::set<std::string> ids;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = parse_csv_line(line);
        if (fields.size() != 2) throw InvalidArgument("edge CSV: expected 2 fields in '" + line + "'");
        ids.insert(fields[0]);
        ids.insert(fields[1]);
        edges.emplace_back(std::move(fields[0]), std::move(fields[1]));
    }
    std::vector<NodeInfo> nodes;
    for (const auto& id : ids) nodes.push_back({id, false, false});
    return CitationGraph::from_parts(std::move(nodes), edges);
}

void write_partition_csv(std::ostream& out, const CitationGraph& g, const Partition& p) {
    if (p.node_count() != g.node_count()) throw InvalidArgument("partition does not cover graph");
    out << "node_id,community\n";
    for (NodeId v = 0; v < g.node_count(); ++v) out << csv_field(g.id(v)) << ',' << p.community(v) << '\n';
}

Partition read_partition_csv(std::istream& in, const CitationGraph& g) {
    std::string line;
    std::getline(in, line);
    std::vector<std::optional<std::size_t>> labels(g.node_count());
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = parse_csv_line(line);
        if (fields.size() != 2) throw InvalidArgument("partition CSV: expected 2 fields in '" + line + "'");
        const auto v = g.find(fields[0]);
        if (!v) throw InvalidArgument("partition CSV: unknown node '" + fields[0] + "'");
        if (labels[*v]) throw InvalidArgument("partition CSV: node '" + fields[0] + "' listed twice");
        labels[*v] = parse_number<std::size_t>(fields[1], "community");
    }
    std::vector<std::size_t> flat(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!labels[v]) throw InvalidArgument("partition CSV: node '" + g.id(v) + "' missing");
        flat[v] = *labels[v];
    }
    return Partition::from_labels(flat);
}

void write_measures_csv(std::ostream& out, const CitationGraph& g, const MeasureReport& report, const Partition& p) {
    out << "node_id,in_deg,out_deg,undeg,clustering,betweenness,community\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto& d = report.degree[v];
        out << csv_field(g.id(v)) << ',' << d.in << ',' << d.out << ',' << d.undirected << ','
            << format_double(report.clustering[v]) << ',' << format_double(report.betweenness[v]) << ','
            << p.community(v) << '\n';
    }
}

void write_community_means_csv(std::ostream& out, const std::vector<CommunityMeans>& means) {
    out << "community,size,mean_in_deg,mean_out_deg,mean_undeg,mean_clustering,mean_betweenness\n";
    for (const auto& m : means)
        out << m.community << ',' << m.size << ',' << format_double(m.in_degree) << ','
            << format_double(m.out_degree) << ',' << format_double(m.undirected_degree) << ','
            << format_double(m.clustering) << ',' << format_double(m.betweenness) << '\n';
}

void write_profiles_csv(std::ostream& out, const std::vector<CommunityProfile>& profiles) {
    out << "community,size,size_pct,core_pct,avg_degree,patent_pct,journal_pct,book_pct,conference_pct,none_pct,"
           "top_terms\n";
    for (const auto& p : profiles) {
        std::string terms;
        for (std::size_t i = 0; i < p.top_terms.size(); ++i) terms += (i ? ";" : "") + p.top_terms[i].term;
        out << p.community << ',' << p.size << ',' << format_double(p.size_pct) << ',' << format_double(p.core_pct)
            << ',' << format_double(p.avg_degree);
        for (double t : p.type_pct) out << ',' << format_double(t);
        out << ',' << csv_field(terms) << '\n';
    }
}

void write_reduced_dot(std::ostream& out, const ReducedGraph& r, std::size_t min_weight) {
    out << "digraph reduced {\n";
    for (std::size_t c = 0; c < r.communities; ++c)
        out << "  \"C" << c << "\" [size=" << r.sizes[c] << ", in_strength=" << r.in_strength[c]
            << ", out_strength=" << r.out_strength[c] << "];\n";
    for (const auto& [key, w] : r.edges_at_least(min_weight))
        out << "  \"C" << key.first << "\" -> \"C" << key.second << "\" [weight=" << w << "];\n";
    out << "}\n";
}

void write_reduced_graphml(std::ostream& out, const ReducedGraph& r, std::size_t min_weight) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"size\" for=\"node\" attr.name=\"size\" attr.type=\"int\"/>\n"
        << "  <key id=\"in_strength\" for=\"node\" attr.name=\"in_strength\" attr.type=\"int\"/>\n"
        << "  <key id=\"out_strength\" for=\"node\" attr.name=\"out_strength\" attr.type=\"int\"/>\n"
        << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n"
        << "  <graph id=\"reduced\" edgedefault=\"directed\">\n";
    for (std::size_t c = 0; c < r.communities; ++c)
        out << "    <node id=\"C" << c << "\"><data key=\"size\">" << r.sizes[c] << "</data><data key=\"in_strength\">"
            << r.in_strength[c] << "</data><data key=\"out_strength\">" << r.out_strength[c] << "</data></node>\n";
    for (const auto& [key, w] : r.edges_at_least(min_weight))
        out << "    <edge source=\"C" << key.first << "\" target=\"C" << key.second << "\"><data key=\"weight\">" << w
            << "</data></edge>\n";
    out << "  </graph>\n</graphml>\n";
}

void write_reduced_csv(std::ostream& out, const ReducedGraph& r) {
    out << "source,target,weight\n";
    for (const auto& [key, w] : r.weights) out << key.first << ',' << key.second << ',' << w << '\n';
}

void write_series_csv(std::ostream& out, const PublicationSeries& series) {
    out << "community,year,count\n";
    for (std::size_t c = 0; c < series.counts.size(); ++c)
        for (const auto& [year, count] : series.counts[c]) out << c << ',' << year << ',' << count << '\n';
}

void write_snapshot_csv(std::ostream& out, const std::vector<PathLengthPoint>& points) {
    out << "year,n,avg_k,mean_spl,std_spl\n";
    for (const auto& p : points) {
        out << p.year << ',' << p.n << ',' << format_double(p.avg_degree) << ',';
        if (p.path_length) out << format_double(p.path_length->mean) << ',' << format_double(p.path_length->stddev);
        else out << ',';
        out << '\n';
    }
}

void write_window_csv(std::ostream& out, const WindowResult& window) {
    out << "community,size_full,size_window,proportion_pct,avg_k_full,avg_k_window\n";
    for (const auto& r : window.rows)
        out << r.community << ',' << r.full_size << ',' << r.window_size << ',' << format_double(r.proportion_pct)
            << ',' << format_double(r.full_avg_degree) << ',' << format_double(r.window_avg_degree) << '\n';
}

}  // namespace citenet
