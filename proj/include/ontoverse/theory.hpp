#pragma once

// Annotated logical theories, intended interpretations into a proposition
// space, ontology versions and the propositions they assert.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ontoverse/error.hpp"
#include "ontoverse/logic.hpp"
#include "ontoverse/propositions.hpp"

namespace ontoverse {

enum class AnnotationKind { Assertive, NonAssertive };

inline std::string_view to_string(AnnotationKind k) noexcept {
    return k == AnnotationKind::Assertive ? "assertive" : "nonassertive";
}

struct Annotation {
    std::string id;
    AnnotationKind kind = AnnotationKind::NonAssertive;
    std::optional<std::string> target; // axiom id or vocabulary symbol
    std::string text;

    bool assertive() const noexcept { return kind == AnnotationKind::Assertive; }
    friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct Axiom {
    std::string id;
    Sentence sentence;
    friend bool operator==(const Axiom&, const Axiom&) = default;
};

struct AnnotatedTheory {
    SymbolSet vocabulary;
    std::vector<Axiom> axioms;
    std::vector<Annotation> annotations;
    LogicTag logic = LogicTag::ClassBox;

    std::vector<Sentence> sentences() const {
        std::vector<Sentence> out;
        out.reserve(axioms.size());
        for (const auto& a : axioms) out.push_back(a.sentence);
        return out;
    }

    const Annotation* find_annotation(std::string_view id) const {
        auto it = std::find_if(annotations.begin(), annotations.end(), [&](const auto& a) { return a.id == id; });
        return it == annotations.end() ? nullptr : &*it;
    }

    const Axiom* find_axiom(std::string_view id) const {
        auto it = std::find_if(axioms.begin(), axioms.end(), [&](const auto& a) { return a.id == id; });
        return it == axioms.end() ? nullptr : &*it;
    }

    friend bool operator==(const AnnotatedTheory&, const AnnotatedTheory&) = default;
};

// Finite partial map from assertive annotations and sentences to propositions.
struct InterpretationMap {
    std::map<std::string, PropositionId> annotations;
    std::map<Sentence, PropositionId> sentences;

    friend bool operator==(const InterpretationMap&, const InterpretationMap&) = default;
};

struct OntologyVersion {
    std::string id;
    std::string document;
    DomainId domain;
    AnnotatedTheory theory;
    InterpretationMap interpretation;
    std::map<std::string, std::string> metadata;
    // Unresolved import references, as written in the source file.
    std::vector<std::string> imports;

    friend bool operator==(const OntologyVersion&, const OntologyVersion&) = default;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    std::string code;
    std::string message;
    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;

    bool valid() const noexcept { return violations.empty(); }

    std::string summary() const {
        std::ostringstream os;
        for (const auto& v : violations) os << v.code << ": " << v.message << '\n';
        return os.str();
    }
};

// Checks that v is an ontology version about space's domain: the theory is
// over a non-empty vocabulary and the interpretation covers every assertive
// annotation and every axiom, with images inside the space.
inline ValidationReport validate_version(const OntologyVersion& v, const PropositionSpace& space) {
    ValidationReport r;
    auto violate = [&](std::string code, std::string msg) { r.violations.push_back({std::move(code), std::move(msg)}); };
    const auto& th = v.theory;
    const LogicInstance logic(th.logic);

    if (v.domain != space.domain())
        violate("domain", "version is about '" + v.domain + "' but the space describes '" + space.domain() + "'");
    if (th.vocabulary.empty()) violate("vocabulary", "vocabulary is empty");
    for (const auto& s : th.vocabulary)
        if (!is_symbol_name(s)) violate("vocabulary", "invalid symbol '" + s + "'");

    std::set<std::string> ids;
    for (const auto& ax : th.axioms) {
        if (!ids.insert(ax.id).second) violate("duplicate-id", "duplicate axiom id '" + ax.id + "'");
        if (!logic.well_formed(ax.sentence)) {
            violate("logic", "axiom " + ax.id + " is not a " + std::string(to_string(th.logic)) + " sentence");
            continue;
        }
        for (const auto& sym : signature(ax.sentence))
            if (!th.vocabulary.contains(sym))
                violate("theory-over-vocabulary", "axiom " + ax.id + " uses symbol '" + sym + "' outside the vocabulary");
    }
    for (const auto& an : th.annotations) {
        if (!ids.insert(an.id).second) violate("duplicate-id", "duplicate annotation id '" + an.id + "'");
        if (an.target && !th.find_axiom(*an.target) && !th.vocabulary.contains(*an.target))
            r.warnings.push_back("annotation " + an.id + " targets unknown '" + *an.target + "'");
    }

    const auto& interp = v.interpretation;
    for (const auto& an : th.annotations)
        if (an.assertive() && !interp.annotations.contains(an.id))
            violate("uninterpreted-annotation", "assertive annotation " + an.id + " has no intended interpretation");
    for (const auto& [aid, prop] : interp.annotations) {
        const Annotation* an = th.find_annotation(aid);
        if (!an) violate("interpretation", "interpretation maps unknown annotation '" + aid + "'");
        else if (!an->assertive()) violate("interpretation", "interpretation maps non-assertive annotation '" + aid + "'");
        if (!space.contains(prop)) violate("outside-space", "proposition '" + prop + "' is not in the space");
    }
    for (const auto& ax : th.axioms)
        if (!interp.sentences.contains(ax.sentence))
            violate("uninterpreted-axiom", "axiom " + ax.id + " has no intended interpretation");
    for (const auto& [s, prop] : interp.sentences) {
        if (!logic.well_formed(s)) {
            violate("interpretation", "interpreted sentence '" + s.text() + "' is not in the theory's logic");
        } else {
            for (const auto& sym : signature(s))
                if (!th.vocabulary.contains(sym))
                    violate("interpretation",
                            "interpreted sentence '" + s.text() + "' uses symbol '" + sym + "' outside the vocabulary");
        }
        if (!space.contains(prop)) violate("outside-space", "proposition '" + prop + "' is not in the space");
    }
    return r;
}

struct AssertedPropositions {
    PropositionSet from_annotations;
    PropositionSet from_theory;
    PropositionSet all;

    friend bool operator==(const AssertedPropositions&, const AssertedPropositions&) = default;
};

inline void require_valid(const OntologyVersion& v, const PropositionSpace& space) {
    const auto report = validate_version(v, space);
    if (!report.valid())
        throw Error("'" + v.id + "' is not an ontology version about '" + space.domain() +
                    "': " + report.violations.front().message);
}

// Images of the assertive annotations, plus images of every interpreted
// sentence that the theory entails.
inline AssertedPropositions asserted_propositions(const OntologyVersion& v, const PropositionSpace& space) {
    require_valid(v, space);
    AssertedPropositions out;
    for (const auto& an : v.theory.annotations)
        if (an.assertive()) out.from_annotations.insert(v.interpretation.annotations.at(an.id));
    const auto theta = v.theory.sentences();
    const LogicInstance logic(v.theory.logic);
    for (const auto& [phi, prop] : v.interpretation.sentences)
        if (!out.from_theory.contains(prop) && logic.entails(theta, phi)) out.from_theory.insert(prop);
    out.all = set_union(out.from_annotations, out.from_theory);
    return out;
}

// ---------------------------------------------------------------------------
// Comparisons between versions

inline void require_same_domain(const OntologyVersion& a, const OntologyVersion& b) {
    if (a.domain != b.domain) throw Error("versions target different domains");
}

inline bool strongly_equivalent(const OntologyVersion& v1, const OntologyVersion& v2, const PropositionSpace& space) {
    require_same_domain(v1, v2);
    return asserted_propositions(v1, space).all == asserted_propositions(v2, space).all;
}

inline bool weakly_equivalent_versions(const OntologyVersion& v1, const OntologyVersion& v2,
                                       const PropositionSpace& space) {
    require_same_domain(v1, v2);
    return weakly_equivalent_sets(asserted_propositions(v1, space).all, asserted_propositions(v2, space).all, space);
}

inline constexpr std::size_t kMaxStrongerThanPropositions = 12;

struct StrongerThanResult {
    bool holds = false;
    std::optional<PropositionSet> witness;
};

// Searches P' within the space, in size-then-lexicographic order, such that
// asserted(v1) is weakly equivalent to asserted(v2) u P'.
inline StrongerThanResult stronger_than_sets(const PropositionSet& p1, const PropositionSet& p2,
                                             const PropositionSpace& space) {
    if (space.size() > kMaxStrongerThanPropositions) throw CapExceeded("stronger-than instance too large");
    const PropositionMask m1 = space.to_mask(p1), m2 = space.to_mask(p2);
    for (PropositionMask extra : subsets_by_size_then_lex(space))
        if (detail::weakly_equivalent_masks(m1, m2 | extra, space)) return {true, space.from_mask(extra)};
    return {};
}

inline StrongerThanResult stronger_than(const OntologyVersion& v1, const OntologyVersion& v2,
                                        const PropositionSpace& space) {
    require_same_domain(v1, v2);
    return stronger_than_sets(asserted_propositions(v1, space).all, asserted_propositions(v2, space).all, space);
}

struct MismatchReport {
    bool mismatch = false;
    AssertedPropositions asserted;
    // Conflicts inside the union that straddle annotations and theory.
    std::vector<PropositionSet> conflicts;
};

// Annotation propositions and theory propositions are each consistent but
// jointly inconsistent.
inline MismatchReport check_mismatch(const OntologyVersion& v, const PropositionSpace& space) {
    MismatchReport r;
    r.asserted = asserted_propositions(v, space);
    const auto& a = r.asserted.from_annotations;
    const auto& t = r.asserted.from_theory;
    if (!is_consistent(a, space) || !is_consistent(t, space)) return r;
    r.conflicts = space.conflicts_within(r.asserted.all);
    r.mismatch = !r.conflicts.empty();
    return r;
}

inline bool has_mismatch(const OntologyVersion& v, const PropositionSpace& space) {
    return check_mismatch(v, space).mismatch;
}

} // namespace ontoverse
