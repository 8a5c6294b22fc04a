#pragma once

// Ontologies as documents realized by networks of versions. Versions are
// registered by file reference; derives-from edges form a DAG.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontoverse/error.hpp"
#include "ontoverse/logic.hpp"
#include "ontoverse/theory.hpp"

namespace ontoverse {

enum class DerivationKind { Revision, Translation, Transformation };

inline std::string_view to_string(DerivationKind k) noexcept {
    switch (k) {
    case DerivationKind::Revision: return "revision";
    case DerivationKind::Translation: return "translation";
    default: return "transformation";
    }
}

inline std::optional<DerivationKind> derivation_kind_from_string(std::string_view s) noexcept {
    if (s == "revision") return DerivationKind::Revision;
    if (s == "translation") return DerivationKind::Translation;
    if (s == "transformation") return DerivationKind::Transformation;
    return std::nullopt;
}

struct DerivationEdge {
    std::string child;
    std::string parent;
    DerivationKind kind = DerivationKind::Revision;
    friend bool operator==(const DerivationEdge&, const DerivationEdge&) = default;
};

struct VersionEntry {
    std::string document;
    std::string file;
    friend bool operator==(const VersionEntry&, const VersionEntry&) = default;
};

class VersionGraph {
public:
    const std::set<std::string>& documents() const noexcept { return documents_; }
    const std::map<std::string, VersionEntry>& versions() const noexcept { return versions_; }
    const std::vector<DerivationEdge>& edges() const noexcept { return edges_; }

    void add_document(const std::string& document) { documents_.insert(document); }

    void add_version(const std::string& version, const std::string& document, const std::string& file) {
        if (versions_.contains(version)) throw Error("version '" + version + "' already registered");
        documents_.insert(document);
        versions_.emplace(version, VersionEntry{document, file});
    }

    void add_derivation(const std::string& child, const std::string& parent, DerivationKind kind) {
        if (!versions_.contains(child)) throw Error("unknown version '" + child + "'");
        if (!versions_.contains(parent)) throw Error("unknown version '" + parent + "'");
        if (child == parent || derives_from(parent, child)) throw Error("derivation would create cycle");
        const DerivationEdge e{child, parent, kind};
        if (std::find(edges_.begin(), edges_.end(), e) == edges_.end()) edges_.push_back(e);
    }

    // True iff `descendant` reaches `ancestor` along one or more derives-from edges.
    bool derives_from(const std::string& descendant, const std::string& ancestor) const {
        std::vector<std::string> stack{descendant};
        std::set<std::string> seen;
        while (!stack.empty()) {
            const std::string cur = std::move(stack.back());
            stack.pop_back();
            for (const auto& e : edges_) {
                if (e.child != cur) continue;
                if (e.parent == ancestor) return true;
                if (seen.insert(e.parent).second) stack.push_back(e.parent);
            }
        }
        return false;
    }

    std::vector<DerivationEdge> parents_of(const std::string& version) const {
        std::vector<DerivationEdge> out;
        for (const auto& e : edges_)
            if (e.child == version) out.push_back(e);
        return out;
    }

    // Whole-graph topological order; ties go to the lexicographically smallest id.
    std::vector<std::string> topological_order() const {
        std::map<std::string, std::size_t> indegree;
        for (const auto& [id, entry] : versions_) indegree[id] = 0;
        for (const auto& e : edges_) ++indegree[e.child];
        std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
        for (const auto& [id, d] : indegree)
            if (d == 0) ready.push(id);
        std::vector<std::string> order;
        while (!ready.empty()) {
            std::string cur = ready.top();
            ready.pop();
            for (const auto& e : edges_)
                if (e.parent == cur && --indegree[e.child] == 0) ready.push(e.child);
            order.push_back(std::move(cur));
        }
        return order;
    }

    // Versions realizing the document, parents before children.
    std::vector<std::string> realizations(const std::string& document) const {
        if (!documents_.contains(document)) throw Error("unknown document '" + document + "'");
        std::vector<std::string> out;
        for (auto& id : topological_order())
            if (versions_.at(id).document == document) out.push_back(std::move(id));
        return out;
    }

    // The version and all of its ancestors, parents before children.
    std::vector<std::string> lineage(const std::string& version) const {
        if (!versions_.contains(version)) throw Error("unknown version '" + version + "'");
        std::vector<std::string> out;
        for (auto& id : topological_order())
            if (id == version || derives_from(version, id)) out.push_back(std::move(id));
        return out;
    }

    friend bool operator==(const VersionGraph&, const VersionGraph&) = default;

private:
    std::set<std::string> documents_;
    std::map<std::string, VersionEntry> versions_;
    std::vector<DerivationEdge> edges_;
};

// Rewrites a ClassBox version into propositional logic: every axiom and every
// interpreted sentence is replaced by its translation, keeping the
// proposition it is mapped to. Annotations and vocabulary are unchanged.
inline OntologyVersion translate_logic(const OntologyVersion& v, LogicInstance target, std::string new_id = {}) {
    if (v.theory.logic != LogicTag::ClassBox || target.tag() != LogicTag::PropLogic)
        throw Error("unsupported translation: " + std::string(to_string(v.theory.logic)) + " to " +
                    std::string(to_string(target.tag())));
    OntologyVersion out = v;
    out.id = new_id.empty() ? v.id + "_proplogic" : std::move(new_id);
    out.theory.logic = LogicTag::PropLogic;
    for (auto& ax : out.theory.axioms) ax.sentence = to_proplogic(ax.sentence);
    out.interpretation.sentences.clear();
    for (const auto& [s, prop] : v.interpretation.sentences) {
        if (!out.interpretation.sentences.emplace(to_proplogic(s), prop).second)
            throw Error("translation maps two interpreted sentences to '" + to_proplogic(s).text() + "'");
    }
    out.metadata["translated-from"] = v.id;
    return out;
}

// Registers a translated version beside its source with a translation edge.
inline void record_translation(VersionGraph& graph, const std::string& source, const std::string& translated,
                               const std::string& file) {
    auto it = graph.versions().find(source);
    if (it == graph.versions().end()) throw Error("unknown version '" + source + "'");
    graph.add_version(translated, it->second.document, file);
    graph.add_derivation(translated, source, DerivationKind::Translation);
}

} // namespace ontoverse
