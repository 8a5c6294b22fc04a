#pragma once

// Line-oriented text formats:
//   .ovf  ontology versions          (header "ontoverse-version: 1")
//   .dom  proposition spaces/domains (header "ontoverse-domain: 1")
//   .bpc  behavioral profiles        (header "ontoverse-bpc: 1")
//   graph manifests                  (header "ontoverse-graph: 1")
// '#' starts a comment outside quoted strings. The grammars are given in
// docs/formats.md.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoverse/error.hpp"
#include "ontoverse/logic.hpp"
#include "ontoverse/propositions.hpp"
#include "ontoverse/theory.hpp"
#include "ontoverse/version_graph.hpp"
#include "ontoverse/worldviews.hpp"

namespace ontoverse {

// Ids of versions, documents, domains, axioms, annotations, states and
// metadata keys: [A-Za-z0-9_][A-Za-z0-9_.-]*
inline bool is_name(std::string_view s) noexcept {
    if (s.empty()) return false;
    auto word = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    };
    if (!word(s.front())) return false;
    return std::all_of(s.begin(), s.end(), [&](char c) { return word(c) || c == '.' || c == '-'; });
}

namespace detail {

struct SourceLine {
    std::size_t number;
    std::string text; // comment stripped and trimmed
};

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::string strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted && c == '\\') {
            ++i;
            continue;
        }
        if (c == '"') quoted = !quoted;
        if (c == '#' && !quoted) return std::string(line.substr(0, i));
    }
    return std::string(line);
}

// Non-blank lines after comment removal, with 1-based numbers.
inline std::vector<SourceLine> significant_lines(std::string_view text) {
    std::vector<SourceLine> out;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++number;
        const std::string body(trim(strip_comment(raw)));
        if (!body.empty()) out.push_back({number, body});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

inline std::size_t last_line_number(std::string_view text) {
    const auto breaks = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
    return text.empty() || text.back() != '\n' ? breaks + 1 : breaks;
}

inline void expect_header(const std::vector<SourceLine>& lines, std::string_view header, std::string_view text) {
    if (lines.empty()) throw ParseError(last_line_number(text), "empty file, expected '" + std::string(header) + "'");
    if (lines.front().text != header)
        throw ParseError(lines.front().number, "expected header '" + std::string(header) + "'");
}

inline std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + "\"";
}

// Parses a complete quoted string; nothing may follow the closing quote.
inline std::string unquote(std::string_view s, std::size_t line) {
    if (s.size() < 2 || s.front() != '"') throw ParseError(line, "expected a quoted string");
    std::string out;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '"') {
            if (i + 1 != s.size()) throw ParseError(line, "unexpected text after closing quote");
            return out;
        }
        if (c != '\\') {
            out += c;
            continue;
        }
        if (++i >= s.size()) break;
        switch (s[i]) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        default: throw ParseError(line, std::string("unknown escape '\\") + s[i] + "'");
        }
    }
    throw ParseError(line, "unterminated string");
}

inline std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    for (std::string w; is >> w;) out.push_back(std::move(w));
    return out;
}

// Splits "key: value" at the first colon.
inline std::pair<std::string, std::string> key_value(const SourceLine& l) {
    const auto colon = l.text.find(':');
    if (colon == std::string::npos) throw ParseError(l.number, "expected 'key: value'");
    return {std::string(trim(std::string_view(l.text).substr(0, colon))),
            std::string(trim(std::string_view(l.text).substr(colon + 1)))};
}

inline std::string require_name(std::string_view s, std::size_t line, const char* what) {
    if (!is_name(s)) throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
    return std::string(s);
}

inline std::string require_identifier(std::string_view s, std::size_t line, const char* what) {
    if (!is_symbol_name(s)) throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
    return std::string(s);
}

inline Sentence sentence_at(std::string_view text, LogicTag logic, std::size_t line) {
    try {
        return parse_sentence(text, logic);
    } catch (const ParseError& e) {
        throw ParseError(line, e.detail());
    } catch (const Error& e) {
        throw ParseError(line, e.what());
    }
}

// Single-valued header fields; repeats are errors.
class FieldSet {
public:
    void set(const std::string& key, std::string value, std::size_t line) {
        if (!values_.emplace(key, std::move(value)).second) throw ParseError(line, "duplicate '" + key + ":' line");
    }
    const std::string& get(const std::string& key, std::size_t eof_line) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw ParseError(eof_line, "missing '" + key + ":' line");
        return it->second;
    }
    bool has(const std::string& key) const { return values_.contains(key); }

private:
    std::map<std::string, std::string> values_;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class Parse>
auto parse_file(const std::filesystem::path& path, Parse parse) {
    const std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string(), e);
    }
}


} // namespace detail

// ---------------------------------------------------------------------------
// .ovf

inline constexpr std::string_view kOvfHeader = "ontoverse-version: 1";

// Parses one file; import lines are recorded, not followed (see load_ovf).
inline OntologyVersion parse_ovf(std::string_view text) {
    using namespace detail;
    const auto lines = significant_lines(text);
    expect_header(lines, kOvfHeader, text);
    const std::size_t eof = last_line_number(text);

    OntologyVersion v;
    FieldSet fields;
    std::size_t logic_line = 0;
    struct Pending {
        std::size_t line;
        std::string a, b;
    };
    std::vector<Pending> axioms, interp_axioms, interp_sentences;
    std::set<std::string> ids;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const auto words = split_words(l.text);
        const std::string& head = words.front();

        if (head == "axiom") {
            const auto colon = l.text.find(':');
            if (colon == std::string::npos) throw ParseError(l.number, "expected 'axiom <id>: <sentence>'");
            const std::string id = require_name(trim(std::string_view(l.text).substr(5, colon - 5)), l.number, "axiom id");
            if (!ids.insert(id).second) throw ParseError(l.number, "duplicate axiom/annotation id '" + id + "'");
            axioms.push_back({l.number, id, std::string(trim(std::string_view(l.text).substr(colon + 1)))});
        } else if (head == "annotation") {
            const auto quote_at = l.text.find('"');
            const auto colon = l.text.rfind(':', quote_at);
            if (quote_at == std::string::npos || colon == std::string::npos)
                throw ParseError(l.number, "expected 'annotation <id> kind=<kind> [target=<name>]: \"text\"'");
            const auto attrs = split_words(std::string_view(l.text).substr(10, colon - 10));
            if (attrs.empty()) throw ParseError(l.number, "annotation id missing");
            Annotation an;
            an.id = require_name(attrs[0], l.number, "annotation id");
            bool kind_seen = false;
            for (std::size_t k = 1; k < attrs.size(); ++k) {
                const std::string& a = attrs[k];
                if (a.rfind("kind=", 0) == 0 && !kind_seen) {
                    const std::string kind = a.substr(5);
                    if (kind == "assertive") an.kind = AnnotationKind::Assertive;
                    else if (kind == "nonassertive") an.kind = AnnotationKind::NonAssertive;
                    else throw ParseError(l.number, "unknown annotation kind '" + kind + "'");
                    kind_seen = true;
                } else if (a.rfind("target=", 0) == 0 && !an.target) {
                    an.target = require_name(a.substr(7), l.number, "annotation target");
                } else {
                    throw ParseError(l.number, "unexpected annotation attribute '" + a + "'");
                }
            }
            if (!kind_seen) throw ParseError(l.number, "annotation " + an.id + " lacks kind=");
            if (!trim(std::string_view(l.text).substr(colon + 1, quote_at - colon - 1)).empty())
                throw ParseError(l.number, "unexpected text before annotation string");
            an.text = unquote(trim(std::string_view(l.text).substr(quote_at)), l.number);
            if (!ids.insert(an.id).second) throw ParseError(l.number, "duplicate axiom/annotation id '" + an.id + "'");
            v.theory.annotations.push_back(std::move(an));
        } else if (head == "interp") {
            const auto arrow = l.text.rfind("=>");
            if (words.size() < 2 || arrow == std::string::npos)
                throw ParseError(l.number, "expected 'interp annotation|axiom|sentence <item> => <proposition>'");
            const std::string prop =
                require_identifier(trim(std::string_view(l.text).substr(arrow + 2)), l.number, "proposition");
            const auto item_start = l.text.find(words[1]) + words[1].size();
            const std::string item(trim(std::string_view(l.text).substr(item_start, arrow - item_start)));
            if (words[1] == "annotation") {
                const std::string id = require_name(item, l.number, "annotation id");
                if (!v.interpretation.annotations.emplace(id, prop).second)
                    throw ParseError(l.number, "duplicate interpretation of annotation '" + id + "'");
            } else if (words[1] == "axiom") {
                interp_axioms.push_back({l.number, require_name(item, l.number, "axiom id"), prop});
            } else if (words[1] == "sentence") {
                interp_sentences.push_back({l.number, item, prop});
            } else {
                throw ParseError(l.number, "unknown interpretation target '" + words[1] + "'");
            }
        } else if (head == "meta") {
            const auto quote_at = l.text.find('"');
            const auto colon = l.text.rfind(':', quote_at);
            if (quote_at == std::string::npos || colon == std::string::npos)
                throw ParseError(l.number, "expected 'meta <key>: \"value\"'");
            const std::string key = require_name(trim(std::string_view(l.text).substr(4, colon - 4)), l.number, "metadata key");
            if (!trim(std::string_view(l.text).substr(colon + 1, quote_at - colon - 1)).empty())
                throw ParseError(l.number, "unexpected text before metadata value");
            if (!v.metadata.emplace(key, unquote(trim(std::string_view(l.text).substr(quote_at)), l.number)).second)
                throw ParseError(l.number, "duplicate metadata key '" + key + "'");
        } else {
            auto [key, value] = key_value(l);
            if (key == "id" || key == "document" || key == "domain") {
                fields.set(key, require_name(value, l.number, key.c_str()), l.number);
            } else if (key == "logic") {
                if (!logic_tag_from_string(value)) throw ParseError(l.number, "unknown logic tag '" + value + "'");
                fields.set(key, value, l.number);
                logic_line = l.number;
            } else if (key == "vocab") {
                fields.set(key, value, l.number);
                for (const auto& w : split_words(value))
                    if (!v.theory.vocabulary.insert(require_identifier(w, l.number, "vocabulary symbol")).second)
                        throw ParseError(l.number, "duplicate vocabulary symbol '" + w + "'");
            } else if (key == "import") {
                if (value.empty()) throw ParseError(l.number, "empty import path");
                v.imports.push_back(value);
            } else {
                throw ParseError(l.number, "unknown key '" + key + "'");
            }
        }
    }

    v.id = fields.get("id", eof);
    v.document = fields.get("document", eof);
    v.domain = fields.get("domain", eof);
    if (!logic_line) throw ParseError(eof, "missing 'logic:' line");
    v.theory.logic = *logic_tag_from_string(fields.get("logic", eof));
    fields.get("vocab", eof);

    for (const auto& p : axioms) v.theory.axioms.push_back({p.a, sentence_at(p.b, v.theory.logic, p.line)});
    auto add_sentence_entry = [&](const Sentence& s, const std::string& prop, std::size_t line) {
        auto [it, fresh] = v.interpretation.sentences.emplace(s, prop);
        if (!fresh && it->second != prop)
            throw ParseError(line, "sentence '" + s.text() + "' interpreted as both " + it->second + " and " + prop);
        if (!fresh) throw ParseError(line, "duplicate interpretation of '" + s.text() + "'");
    };
    for (const auto& p : interp_axioms) {
        const Axiom* ax = v.theory.find_axiom(p.a);
        if (!ax) throw ParseError(p.line, "unknown axiom id '" + p.a + "'");
        add_sentence_entry(ax->sentence, p.b, p.line);
    }
    for (const auto& p : interp_sentences) add_sentence_entry(sentence_at(p.a, v.theory.logic, p.line), p.b, p.line);
    return v;
}

inline std::string serialize_ovf(const OntologyVersion& v) {
    using detail::quote;
    std::ostringstream os;
    os << kOvfHeader << '\n';
    os << "id: " << v.id << '\n' << "document: " << v.document << '\n' << "domain: " << v.domain << '\n';
    os << "logic: " << to_string(v.theory.logic) << '\n';
    for (const auto& imp : v.imports) os << "import: " << imp << '\n';
    os << "vocab:";
    for (const auto& s : v.theory.vocabulary) os << ' ' << s;
    os << '\n';
    for (const auto& ax : v.theory.axioms) os << "axiom " << ax.id << ": " << ax.sentence.text() << '\n';
    for (const auto& an : v.theory.annotations) {
        os << "annotation " << an.id << " kind=" << to_string(an.kind);
        if (an.target) os << " target=" << *an.target;
        os << ": " << quote(an.text) << '\n';
    }
    for (const auto& [id, prop] : v.interpretation.annotations) os << "interp annotation " << id << " => " << prop << '\n';
    for (const auto& [s, prop] : v.interpretation.sentences) os << "interp sentence " << s.text() << " => " << prop << '\n';
    for (const auto& [k, val] : v.metadata) os << "meta " << k << ": " << quote(val) << '\n';
    return os.str();
}

namespace detail {

inline void merge_import(OntologyVersion& into, const OntologyVersion& imported, const std::string& ref) {
    if (imported.theory.logic != into.theory.logic)
        throw Error("import '" + ref + "' uses logic " + std::string(to_string(imported.theory.logic)));
    if (imported.domain != into.domain) throw Error("import '" + ref + "' is about domain '" + imported.domain + "'");
    auto& th = into.theory;
    th.vocabulary.insert(imported.theory.vocabulary.begin(), imported.theory.vocabulary.end());
    for (const auto& ax : imported.theory.axioms) {
        if (th.find_axiom(ax.id) || th.find_annotation(ax.id))
            throw Error("duplicate axiom/annotation id '" + ax.id + "' via import '" + ref + "'");
        th.axioms.push_back(ax);
    }
    for (const auto& an : imported.theory.annotations) {
        if (th.find_axiom(an.id) || th.find_annotation(an.id))
            throw Error("duplicate axiom/annotation id '" + an.id + "' via import '" + ref + "'");
        th.annotations.push_back(an);
    }
    for (const auto& [id, prop] : imported.interpretation.annotations)
        if (auto [it, fresh] = into.interpretation.annotations.emplace(id, prop); !fresh && it->second != prop)
            throw Error("conflicting interpretation of annotation '" + id + "' via import '" + ref + "'");
    for (const auto& [s, prop] : imported.interpretation.sentences)
        if (auto [it, fresh] = into.interpretation.sentences.emplace(s, prop); !fresh && it->second != prop)
            throw Error("conflicting interpretation of '" + s.text() + "' via import '" + ref + "'");
}

inline OntologyVersion load_ovf_rec(const std::filesystem::path& path, std::vector<std::filesystem::path>& stack) {
    const auto canonical = std::filesystem::weakly_canonical(path);
    if (std::find(stack.begin(), stack.end(), canonical) != stack.end())
        throw Error("import cycle through '" + path.string() + "'");
    stack.push_back(canonical);
    OntologyVersion v;
    v = parse_file(path, [](std::string_view t) { return parse_ovf(t); });
    const auto imports = std::move(v.imports);
    v.imports.clear();
    for (const auto& ref : imports) {
        const OntologyVersion imported = load_ovf_rec(canonical.parent_path() / ref, stack);
        merge_import(v, imported, ref);
    }
    stack.pop_back();
    return v;
}

} // namespace detail

// Reads an .ovf file and resolves its imports (relative to the importing
// file) into one version. Import cycles are errors.
inline OntologyVersion load_ovf(const std::filesystem::path& path) {
    std::vector<std::filesystem::path> stack;
    return detail::load_ovf_rec(path, stack);
}

// ---------------------------------------------------------------------------
// .dom

inline constexpr std::string_view kDomHeader = "ontoverse-domain: 1";

struct DomainFile {
    PropositionSpace space;
    std::optional<RealDomain> real_domain; // present iff the file has state lines

    friend bool operator==(const DomainFile&, const DomainFile&) = default;
};

inline DomainFile parse_dom(std::string_view text) {
    using namespace detail;
    const auto lines = significant_lines(text);
    expect_header(lines, kDomHeader, text);
    const std::size_t eof = last_line_number(text);

    FieldSet fields;
    PropositionSet props;
    std::vector<std::pair<std::size_t, PropositionSet>> conflicts;
    std::vector<std::pair<std::size_t, StateOfAffairs>> states;
    auto prop_list = [&](const std::string& value, std::size_t line) {
        PropositionSet out;
        for (const auto& w : split_words(value))
            if (!out.insert(require_identifier(w, line, "proposition")).second)
                throw ParseError(line, "duplicate proposition '" + w + "'");
        return out;
    };

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        auto [key, value] = key_value(l);
        if (key == "id") {
            fields.set(key, require_name(value, l.number, "domain id"), l.number);
        } else if (key == "props") {
            fields.set(key, value, l.number);
            props = prop_list(value, l.number);
        } else if (key == "conflict") {
            conflicts.emplace_back(l.number, prop_list(value, l.number));
        } else if (key.rfind("state", 0) == 0 && split_words(key).size() == 2 && split_words(key)[0] == "state") {
            states.emplace_back(l.number, StateOfAffairs{require_name(split_words(key)[1], l.number, "state id"),
                                                         prop_list(value, l.number)});
        } else {
            throw ParseError(l.number, "unknown key '" + key + "'");
        }
    }
    const std::string& id = fields.get("id", eof);
    fields.get("props", eof);
    if (props.empty()) throw ParseError(eof, "domain declares no propositions");
    for (const auto& [line, c] : conflicts) {
        if (c.size() < 2) throw ParseError(line, "a conflict needs at least two propositions");
        for (const auto& p : c)
            if (!props.contains(p)) throw ParseError(line, "conflict mentions undeclared proposition '" + p + "'");
    }
    std::vector<PropositionSet> conflict_sets;
    for (auto& [line, c] : conflicts) conflict_sets.push_back(std::move(c));
    DomainFile out{PropositionSpace(id, props, std::move(conflict_sets)), std::nullopt};

    if (!states.empty()) {
        RealDomain d{id, {}};
        std::set<std::string> seen;
        for (auto& [line, s] : states) {
            if (!seen.insert(s.id).second) throw ParseError(line, "duplicate state '" + s.id + "'");
            for (const auto& p : s.props)
                if (!props.contains(p)) throw ParseError(line, "state mentions undeclared proposition '" + p + "'");
            try {
                const auto check = is_real_domain({s}, out.space);
                if (!check.ok) throw ParseError(line, check.diagnoses.front());
            } catch (const CapExceeded& e) {
                throw ParseError(line, e.what());
            }
            d.states.push_back(std::move(s));
        }
        out.real_domain = std::move(d);
    }
    return out;
}

inline std::string serialize_dom(const DomainFile& f) {
    std::ostringstream os;
    auto list = [&](const PropositionSet& s) {
        for (const auto& p : s) os << ' ' << p;
    };
    os << kDomHeader << '\n' << "id: " << f.space.domain() << '\n' << "props:";
    for (const auto& p : f.space.props()) os << ' ' << p;
    os << '\n';
    for (const auto& c : f.space.conflicts()) {
        os << "conflict:";
        list(c);
        os << '\n';
    }
    if (f.real_domain) {
        for (const auto& s : f.real_domain->states) {
            os << "state " << s.id << ':';
            list(s.props);
            os << '\n';
        }
    }
    return os.str();
}

inline DomainFile load_dom(const std::filesystem::path& path) {
    return detail::parse_file(path, [](std::string_view t) { return parse_dom(t); });
}

// ---------------------------------------------------------------------------
// .bpc

inline constexpr std::string_view kBpcHeader = "ontoverse-bpc: 1";

inline BPC parse_bpc(std::string_view text) {
    using namespace detail;
    const auto lines = significant_lines(text);
    expect_header(lines, kBpcHeader, text);
    const std::size_t eof = last_line_number(text);

    FieldSet fields;
    BPC c;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        auto [key, value] = key_value(l);
        const auto kw = split_words(key);
        if (key == "id" || key == "domain") {
            fields.set(key, require_name(value, l.number, key.c_str()), l.number);
        } else if (kw.size() == 2 && kw[0] == "state") {
            const std::string sid = require_name(kw[1], l.number, "state id");
            Valuation val;
            std::size_t start = 0;
            while (start <= value.size() && !trim(value).empty()) {
                const auto comma = std::min(value.find(',', start), value.size());
                const std::string entry(trim(std::string_view(value).substr(start, comma - start)));
                start = comma + 1;
                if (entry.empty()) throw ParseError(l.number, "empty valuation entry");
                const auto eq = entry.find('=');
                if (eq == std::string::npos) throw ParseError(l.number, "expected '<proposition>=true|false'");
                const std::string p = require_identifier(trim(std::string_view(entry).substr(0, eq)), l.number, "proposition");
                const std::string_view b = trim(std::string_view(entry).substr(eq + 1));
                if (b != "true" && b != "false") throw ParseError(l.number, "truth value must be true or false");
                if (!val.emplace(p, b == "true").second)
                    throw ParseError(l.number, "proposition '" + p + "' valued twice in state " + sid);
            }
            if (!c.states.emplace(sid, std::move(val)).second) throw ParseError(l.number, "duplicate state '" + sid + "'");
        } else {
            throw ParseError(l.number, "unknown key '" + key + "'");
        }
    }
    c.id = fields.get("id", eof);
    c.domain = fields.get("domain", eof);
    if (c.states.empty()) throw ParseError(eof, "a BPC needs at least one state");
    return c;
}

inline std::string serialize_bpc(const BPC& c) {
    std::ostringstream os;
    os << kBpcHeader << '\n' << "id: " << c.id << '\n' << "domain: " << c.domain << '\n';
    for (const auto& [sid, val] : c.states) {
        os << "state " << sid << ':';
        bool first = true;
        for (const auto& [p, b] : val) {
            os << (first ? " " : ", ") << p << '=' << (b ? "true" : "false");
            first = false;
        }
        os << '\n';
    }
    return os.str();
}

inline BPC load_bpc(const std::filesystem::path& path) {
    return detail::parse_file(path, [](std::string_view t) { return parse_bpc(t); });
}

// ---------------------------------------------------------------------------
// Graph manifests

inline constexpr std::string_view kGraphHeader = "ontoverse-graph: 1";

// Version lines belong to the nearest preceding document line.
inline VersionGraph parse_manifest(std::string_view text) {
    using namespace detail;
    const auto lines = significant_lines(text);
    expect_header(lines, kGraphHeader, text);

    VersionGraph g;
    std::optional<std::string> current;
    std::vector<std::pair<std::size_t, DerivationEdge>> edges;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const auto w = split_words(l.text);
        if (w[0] == "document" && w.size() == 2) {
            current = require_name(w[1], l.number, "document id");
            if (g.documents().contains(*current)) throw ParseError(l.number, "duplicate document '" + *current + "'");
            g.add_document(*current);
        } else if (w[0] == "version" && w.size() == 3 && w[2].rfind("file=", 0) == 0) {
            if (!current) throw ParseError(l.number, "version line before any document line");
            const std::string id = require_name(w[1], l.number, "version id");
            const std::string file = w[2].substr(5);
            if (file.empty()) throw ParseError(l.number, "empty file reference");
            if (g.versions().contains(id)) throw ParseError(l.number, "duplicate version '" + id + "'");
            g.add_version(id, *current, file);
        } else if (w[0] == "derives" && w.size() == 5 && w[2] == "from" && w[4].rfind("kind=", 0) == 0) {
            const auto kind = derivation_kind_from_string(w[4].substr(5));
            if (!kind) throw ParseError(l.number, "unknown derivation kind '" + w[4].substr(5) + "'");
            edges.emplace_back(l.number, DerivationEdge{require_name(w[1], l.number, "version id"),
                                                        require_name(w[3], l.number, "version id"), *kind});
        } else {
            throw ParseError(l.number, "expected 'document <id>', 'version <id> file=<path>' or "
                                       "'derives <child> from <parent> kind=<kind>'");
        }
    }
    for (const auto& [line, e] : edges) {
        try {
            g.add_derivation(e.child, e.parent, e.kind);
        } catch (const Error& err) {
            throw ParseError(line, err.what());
        }
    }
    return g;
}

inline std::string serialize_manifest(const VersionGraph& g) {
    std::ostringstream os;
    os << kGraphHeader << '\n';
    for (const auto& doc : g.documents()) {
        os << "document " << doc << '\n';
        for (const auto& [id, entry] : g.versions()) {
            if (entry.document != doc) continue;
            if (entry.file.empty() || entry.file.find_first_of(" \t\n#") != std::string::npos)
                throw Error("file reference of '" + id + "' cannot be written to a manifest");
            os << "version " << id << " file=" << entry.file << '\n';
        }
    }
    for (const auto& e : g.edges())
        os << "derives " << e.child << " from " << e.parent << " kind=" << to_string(e.kind) << '\n';
    return os.str();
}

inline VersionGraph load_manifest(const std::filesystem::path& path) {
    return detail::parse_file(path, [](std::string_view t) { return parse_manifest(t); });
}

} // namespace ontoverse
