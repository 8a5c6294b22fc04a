#pragma once

// Reference implementations used only by tests. They follow the definitions
// literally over std::set values and share no code paths with the library
// (no bit masks, no conflict normalization, no propositional translation).

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ontoverse/logic.hpp"

namespace oracle {

using Set = std::set<std::string>;

inline bool includes(const Set& big, const Set& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline bool consistent(const Set& s, const std::vector<Set>& conflicts) {
    for (const auto& c : conflicts)
        if (includes(s, c)) return false;
    return true;
}

inline std::vector<Set> all_subsets(const Set& universe) {
    std::vector<Set> out{{}};
    for (const auto& p : universe) {
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) {
            Set grown = out[i];
            grown.insert(p);
            out.push_back(std::move(grown));
        }
    }
    return out;
}

inline Set unite(Set a, const Set& b) {
    a.insert(b.begin(), b.end());
    return a;
}

// Consistent P within P-dagger such that no consistent P' has P strictly inside P' within P-dagger.
inline std::set<Set> maximal_consistent_subsets(const Set& p_dagger, const std::vector<Set>& conflicts) {
    const auto subsets = all_subsets(p_dagger);
    std::set<Set> out;
    for (const auto& p : subsets) {
        if (!consistent(p, conflicts)) continue;
        bool maximal = true;
        for (const auto& q : subsets)
            if (q != p && includes(q, p) && consistent(q, conflicts)) maximal = false;
        if (maximal) out.insert(p);
    }
    return out;
}

inline bool weakly_equivalent(const Set& a, const Set& b, const Set& props, const std::vector<Set>& conflicts) {
    for (const auto& extra : all_subsets(props))
        if (consistent(unite(a, extra), conflicts) != consistent(unite(b, extra), conflicts)) return false;
    return true;
}

// Direct truth value; ClassBox axioms are read as constraints on one
// individual's class memberships.
inline bool evaluate(const ontoverse::Sentence& s, const std::map<std::string, bool>& v) {
    using Op = ontoverse::Sentence::Op;
    switch (s.op()) {
    case Op::Atom: return v.at(s.name());
    case Op::True: return true;
    case Op::False: return false;
    case Op::Not: return !evaluate(s.operand(), v);
    case Op::And: return evaluate(s.lhs(), v) && evaluate(s.rhs(), v);
    case Op::Or: return evaluate(s.lhs(), v) || evaluate(s.rhs(), v);
    case Op::Implies: return !evaluate(s.lhs(), v) || evaluate(s.rhs(), v);
    case Op::Iff: return evaluate(s.lhs(), v) == evaluate(s.rhs(), v);
    case Op::SubClassOf: return !v.at(s.first_class()) || v.at(s.second_class());
    case Op::DisjointWith: return !(v.at(s.first_class()) && v.at(s.second_class()));
    }
    return false;
}

inline void leaves(const ontoverse::Sentence& s, Set& out) {
    using Op = ontoverse::Sentence::Op;
    switch (s.op()) {
    case Op::Atom: out.insert(s.name()); return;
    case Op::True:
    case Op::False: return;
    case Op::Not: leaves(s.operand(), out); return;
    case Op::SubClassOf:
    case Op::DisjointWith:
        out.insert(s.first_class());
        out.insert(s.second_class());
        return;
    default:
        leaves(s.lhs(), out);
        leaves(s.rhs(), out);
    }
}

// Every assignment making all premises true makes the conclusion true.
inline bool entails(const std::vector<ontoverse::Sentence>& gamma, const ontoverse::Sentence& phi) {
    Set atoms;
    for (const auto& g : gamma) leaves(g, atoms);
    leaves(phi, atoms);
    const std::vector<std::string> order(atoms.begin(), atoms.end());
    std::map<std::string, bool> v;
    std::function<bool(std::size_t)> all_models = [&](std::size_t i) -> bool {
        if (i == order.size()) {
            for (const auto& g : gamma)
                if (!evaluate(g, v)) return true;
            return evaluate(phi, v);
        }
        for (bool b : {false, true}) {
            v[order[i]] = b;
            if (!all_models(i + 1)) return false;
        }
        return true;
    };
    return all_models(0);
}

} // namespace oracle
