#pragma once

// Correctness of ontology versions against real domains (sets of states of
// affairs) and against conceptualizations, represented by behavioral
// profiles (BPCs). Also a seeded randomized verifier for the claim that a
// correct specification of correct conceptualizations is a correct ontology.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ontoverse/error.hpp"
#include "ontoverse/propositions.hpp"
#include "ontoverse/theory.hpp"

namespace ontoverse {

struct StateOfAffairs {
    std::string id;
    PropositionSet props;
    friend bool operator==(const StateOfAffairs&, const StateOfAffairs&) = default;
};

struct RealDomain {
    DomainId domain;
    std::vector<StateOfAffairs> states;

    const StateOfAffairs* find(std::string_view id) const {
        auto it = std::find_if(states.begin(), states.end(), [&](const auto& s) { return s.id == id; });
        return it == states.end() ? nullptr : &*it;
    }
    friend bool operator==(const RealDomain&, const RealDomain&) = default;
};

// Partial valuation of one state: absent propositions are undetermined.
using Valuation = std::map<PropositionId, bool>;

struct BPC {
    std::string id;
    DomainId domain;
    std::map<std::string, Valuation> states;
    friend bool operator==(const BPC&, const BPC&) = default;
};

inline std::string format_set(const PropositionSet& s) {
    std::string out = "{";
    for (auto it = s.begin(); it != s.end(); ++it) {
        if (it != s.begin()) out += ",";
        out += *it;
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Real domains

struct RealDomainCheck {
    bool ok = true;
    std::vector<std::string> diagnoses;
};

// Every state must be a maximal consistent subset of the space.
inline RealDomainCheck is_real_domain(const std::vector<StateOfAffairs>& states, const PropositionSpace& space) {
    if (space.size() > kMaxEnumeratedPropositions) throw CapExceeded("real-domain instance too large");
    RealDomainCheck r;
    auto fail = [&](std::string msg) {
        r.ok = false;
        r.diagnoses.push_back(std::move(msg));
    };
    if (states.empty()) fail("a real domain needs at least one state of affairs");
    std::set<std::string> ids;
    for (const auto& s : states) {
        if (!ids.insert(s.id).second) fail("duplicate state id '" + s.id + "'");
        space.require_within(s.props);
        const PropositionMask m = space.to_mask(s.props);
        if (!space.consistent_mask(m)) {
            fail("state " + s.id + " is inconsistent");
            continue;
        }
        for (std::size_t i = 0; i < space.size(); ++i) {
            const PropositionMask bit = PropositionMask{1} << i;
            if (!(m & bit) && space.consistent_mask(m | bit)) {
                fail("state " + s.id + " is not maximal: " + space.props()[i] + " can be added");
                break;
            }
        }
    }
    return r;
}

inline void require_domain(const DomainId& expected, const DomainId& actual) {
    if (expected != actual) throw Error("domain mismatch: '" + actual + "' vs '" + expected + "'");
}

// ---------------------------------------------------------------------------
// Correct ontology (realist reading)

struct OntologyCorrectness {
    bool ok = true;
    std::optional<std::string> state;
    std::optional<PropositionId> proposition;
};

inline OntologyCorrectness correct_ontology_sets(const PropositionSet& asserted, const RealDomain& d) {
    for (const auto& s : d.states)
        for (const auto& p : asserted)
            if (!s.props.contains(p)) return {false, s.id, p};
    return {};
}

// Asserted propositions hold in every state of affairs of the domain.
inline OntologyCorrectness correct_ontology(const OntologyVersion& v, const RealDomain& d,
                                            const PropositionSpace& space) {
    require_domain(d.domain, v.domain);
    require_domain(space.domain(), d.domain);
    return correct_ontology_sets(asserted_propositions(v, space).all, d);
}

// ---------------------------------------------------------------------------
// Conceptualist reading

inline void require_bpc_within(const BPC& c, const PropositionSpace& space) {
    if (c.states.empty()) throw Error("BPC '" + c.id + "' has no states of affairs");
    for (const auto& [sid, val] : c.states)
        for (const auto& [p, value] : val)
            if (!space.contains(p)) throw Error("BPC '" + c.id + "' values proposition outside space: " + p);
}

// No state of the profile values an asserted proposition false.
inline bool consistent_with_sets(const PropositionSet& asserted, const BPC& c) {
    for (const auto& [sid, val] : c.states)
        for (const auto& p : asserted)
            if (auto it = val.find(p); it != val.end() && !it->second) return false;
    return true;
}

inline bool consistent_with(const OntologyVersion& v, const BPC& c, const PropositionSpace& space) {
    require_domain(c.domain, v.domain);
    require_bpc_within(c, space);
    return consistent_with_sets(asserted_propositions(v, space).all, c);
}

struct ConceptualizationSet {
    std::vector<BPC> members;

    explicit ConceptualizationSet(std::vector<BPC> bpcs) : members(std::move(bpcs)) {
        if (members.empty()) throw Error("a conceptualization set needs at least one member");
        for (const auto& m : members)
            if (m.domain != members.front().domain) throw Error("conceptualizations describe different domains");
    }

    const DomainId& domain() const noexcept { return members.front().domain; }
};

struct SpecificationResult {
    bool ok = true;
    // Asserted proposition -> id of a member valuing it true in all its states.
    std::map<PropositionId, std::string> witnesses;
    std::string failure;
};

inline bool valued_true_everywhere(const BPC& c, const PropositionId& p) {
    return std::all_of(c.states.begin(), c.states.end(), [&](const auto& entry) {
        auto it = entry.second.find(p);
        return it != entry.second.end() && it->second;
    });
}

inline SpecificationResult correct_specification_sets(const PropositionSet& asserted, const ConceptualizationSet& cs) {
    SpecificationResult r;
    for (const auto& c : cs.members) {
        for (const auto& [sid, val] : c.states)
            for (const auto& p : asserted)
                if (auto it = val.find(p); it != val.end() && !it->second) {
                    r.ok = false;
                    r.failure = "not consistent with " + c.id + ": state " + sid + " values " + p + " false";
                    r.witnesses.clear();
                    return r;
                }
    }
    for (const auto& p : asserted) {
        auto it = std::find_if(cs.members.begin(), cs.members.end(),
                               [&](const BPC& c) { return valued_true_everywhere(c, p); });
        if (it == cs.members.end()) {
            r.ok = false;
            r.failure = "no conceptualization values " + p + " true in all of its states";
            r.witnesses.clear();
            return r;
        }
        r.witnesses.emplace(p, it->id);
    }
    return r;
}

// Consistent with every member, and every asserted proposition is vouched
// true by some member in all of that member's states.
inline SpecificationResult correct_specification(const OntologyVersion& v, const ConceptualizationSet& cs,
                                                 const PropositionSpace& space) {
    require_domain(cs.domain(), v.domain);
    for (const auto& c : cs.members) require_bpc_within(c, space);
    return correct_specification_sets(asserted_propositions(v, space).all, cs);
}

struct ConceptualizationCorrectness {
    bool ok = true;
    std::string diagnosis;
};

// Every profile state is a state of the domain, and the valuation never
// disagrees with membership in that state.
inline ConceptualizationCorrectness correct_conceptualization(const BPC& c, const RealDomain& d,
                                                              const PropositionSpace& space) {
    require_domain(d.domain, c.domain);
    require_domain(space.domain(), d.domain);
    require_bpc_within(c, space);
    for (const auto& [sid, val] : c.states) {
        const StateOfAffairs* s = d.find(sid);
        if (!s) return {false, "state " + sid + " of " + c.id + " is not a state of the domain"};
        for (const auto& [p, value] : val) {
            if (value && !s->props.contains(p))
                return {false, c.id + " values " + p + " true in " + sid + " but it does not hold there"};
            if (!value && s->props.contains(p))
                return {false, c.id + " values " + p + " false in " + sid + " but it holds there"};
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Randomized verification

enum class Coverage { Full, Partial };

inline std::string_view to_string(Coverage c) noexcept { return c == Coverage::Full ? "full" : "partial"; }

// SplitMix64; bounded draws use plain modulo so streams are identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::size_t below(std::size_t n) noexcept { return static_cast<std::size_t>(next() % n); }
    std::size_t between(std::size_t lo, std::size_t hi) noexcept { return lo + below(hi - lo + 1); }
    bool chance(std::size_t num, std::size_t den) noexcept { return below(den) < num; }

private:
    std::uint64_t state_;
};

struct Theorem1Instance {
    PropositionSpace space;
    RealDomain domain;
    std::vector<BPC> bpcs;
    OntologyVersion ontology;
};

enum class Theorem1Outcome { PremisesFail, Holds, Counterexample };

struct Theorem1Check {
    Theorem1Outcome outcome = Theorem1Outcome::Holds;
    std::string detail;
};

inline std::string describe_instance(const Theorem1Instance& in, const PropositionSet& asserted) {
    std::ostringstream os;
    os << "props=";
    for (std::size_t i = 0; i < in.space.props().size(); ++i) os << (i ? "," : "") << in.space.props()[i];
    os << " conflicts=";
    for (std::size_t i = 0; i < in.space.conflicts().size(); ++i) os << (i ? ";" : "") << format_set(in.space.conflicts()[i]);
    if (in.space.conflicts().empty()) os << "-";
    os << " domain=";
    for (std::size_t i = 0; i < in.domain.states.size(); ++i)
        os << (i ? ";" : "") << in.domain.states[i].id << format_set(in.domain.states[i].props);
    for (const auto& c : in.bpcs) {
        os << " bpc " << c.id << "=";
        bool first_state = true;
        for (const auto& [sid, val] : c.states) {
            os << (first_state ? "" : ";") << sid << "{";
            first_state = false;
            bool first = true;
            for (const auto& [p, v] : val) {
                os << (first ? "" : ",") << p << "=" << (v ? "true" : "false");
                first = false;
            }
            os << "}";
        }
    }
    os << " asserted=" << format_set(asserted);
    return os.str();
}

// Evaluates the implication on one instance: if every BPC is a correct
// conceptualization and the ontology a correct specification of them, the
// ontology must be correct for the domain.
inline Theorem1Check check_theorem1_instance(const Theorem1Instance& in) {
    for (const auto& c : in.bpcs) {
        auto cc = correct_conceptualization(c, in.domain, in.space);
        if (!cc.ok) return {Theorem1Outcome::PremisesFail, cc.diagnosis};
    }
    const ConceptualizationSet cs(in.bpcs);
    const PropositionSet asserted = asserted_propositions(in.ontology, in.space).all;
    auto spec = correct_specification(in.ontology, cs, in.space);
    if (!spec.ok) return {Theorem1Outcome::PremisesFail, spec.failure};
    auto correct = correct_ontology_sets(asserted, in.domain);
    if (correct.ok) return {};
    return {Theorem1Outcome::Counterexample,
            describe_instance(in, asserted) + " violated state=" + *correct.state + " prop=" + *correct.proposition};
}

namespace detail {

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
    SplitMix64 mix(seed ^ (trial * 0xD1B54A32D192ED03ull));
    return mix.next();
}

// An ontology version asserting exactly `asserted`: some propositions through
// assertive annotations, others through tautological axioms; one interpreted
// sentence that the theory does not entail is added as a decoy.
inline OntologyVersion version_asserting(const PropositionSet& asserted, const PropositionSpace& space,
                                         SplitMix64& rng, const std::string& id) {
    OntologyVersion v;
    v.id = id;
    v.document = "sampled";
    v.domain = space.domain();
    v.theory.logic = LogicTag::ClassBox;
    v.theory.vocabulary = {"Decoy_a", "Decoy_b"};
    int n = 0;
    for (const auto& p : asserted) {
        const std::string tag = std::to_string(++n);
        if (rng.chance(1, 2)) {
            v.theory.annotations.push_back({"note" + tag, AnnotationKind::Assertive, std::nullopt, "asserts " + p});
            v.interpretation.annotations.emplace("note" + tag, p);
        } else {
            const std::string cls = "C" + tag;
            v.theory.vocabulary.insert(cls);
            Sentence s = Sentence::subclass_of(cls, cls);
            v.theory.axioms.push_back({"ax" + tag, s});
            v.interpretation.sentences.emplace(s, p);
        }
    }
    v.interpretation.sentences.emplace(Sentence::subclass_of("Decoy_a", "Decoy_b"),
                                       space.props()[rng.below(space.size())]);
    return v;
}

} // namespace detail

inline Theorem1Instance sample_theorem1_instance(std::uint64_t seed, std::uint64_t trial, Coverage coverage) {
    SplitMix64 rng(detail::trial_seed(seed, trial));

    const std::size_t n = rng.between(3, 8);
    PropositionSet props;
    for (std::size_t i = 1; i <= n; ++i) props.insert("p" + std::to_string(i));
    std::vector<PropositionSet> conflicts;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
            if (rng.chance(1, 3)) conflicts.push_back({"p" + std::to_string(i), "p" + std::to_string(j)});
    PropositionSpace space("sampled", props, conflicts);

    const auto mcs = maximal_consistent_subsets(props, space);
    std::vector<PropositionSet> chosen;
    for (const auto& m : mcs)
        if (rng.chance(1, 2)) chosen.push_back(m);
    if (chosen.empty()) chosen.push_back(*std::next(mcs.begin(), static_cast<long>(rng.below(mcs.size()))));
    RealDomain domain{"sampled", {}};
    for (std::size_t i = 0; i < chosen.size(); ++i) domain.states.push_back({"s" + std::to_string(i + 1), chosen[i]});

    std::vector<BPC> bpcs;
    const std::size_t k = rng.between(1, 3);
    for (std::size_t b = 1; b <= k; ++b) {
        BPC c{"c" + std::to_string(b), "sampled", {}};
        std::vector<const StateOfAffairs*> covered;
        for (const auto& s : domain.states)
            if (coverage == Coverage::Full || rng.chance(1, 2)) covered.push_back(&s);
        if (covered.empty()) covered.push_back(&domain.states[rng.below(domain.states.size())]);
        for (const auto* s : covered) {
            Valuation val;
            for (const auto& p : props)
                if (rng.chance(1, 2)) val.emplace(p, s->props.contains(p));
            c.states.emplace(s->id, std::move(val));
        }
        bpcs.push_back(std::move(c));
    }

    // Propositions eligible for a correct specification of the profiles.
    PropositionSet asserted;
    for (const auto& p : props) {
        const bool never_false = std::all_of(bpcs.begin(), bpcs.end(), [&](const BPC& c) {
            return consistent_with_sets({p}, c);
        });
        const bool vouched = std::any_of(bpcs.begin(), bpcs.end(), [&](const BPC& c) {
            return valued_true_everywhere(c, p);
        });
        if (never_false && vouched && rng.chance(3, 4)) asserted.insert(p);
    }
    OntologyVersion v = detail::version_asserting(asserted, space, rng, "trial" + std::to_string(trial));
    return {std::move(space), std::move(domain), std::move(bpcs), std::move(v)};
}

struct Theorem1Report {
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    Coverage coverage = Coverage::Full;
    std::vector<std::string> counterexamples;

    std::string to_text() const {
        std::ostringstream os;
        os << "theorem1 trials=" << trials << " seed=" << seed << " coverage=" << to_string(coverage) << '\n';
        os << counterexamples.size() << " counterexamples / " << trials << " trials\n";
        for (const auto& c : counterexamples) os << c << '\n';
        return os.str();
    }
};

// Samples `trials` instances whose premises hold by construction and
// records every instance where the conclusion fails. A sampled instance
// violating a premise is a sampler defect and raises std::logic_error.
inline Theorem1Report verify_theorem1(std::size_t trials, std::uint64_t seed, Coverage coverage) {
    if (trials < 1) throw Error("theorem1 needs at least one trial");
    Theorem1Report report{trials, seed, coverage, {}};
    for (std::size_t t = 0; t < trials; ++t) {
        const Theorem1Instance in = sample_theorem1_instance(seed, t, coverage);
        const Theorem1Check check = check_theorem1_instance(in);
        if (check.outcome == Theorem1Outcome::PremisesFail)
            throw std::logic_error("theorem1 sampler produced an instance violating a premise: " + check.detail);
        if (check.outcome == Theorem1Outcome::Counterexample)
            report.counterexamples.push_back("counterexample trial=" + std::to_string(t) + " " + check.detail);
    }
    return report;
}

} // namespace ontoverse
