#pragma once

// Finite proposition spaces. Propositions are opaque names; consistency is
// given by conflict sets: a set of propositions is inconsistent iff it
// includes some conflict set. This makes consistency downward closed.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontoverse/error.hpp"
#include "ontoverse/logic.hpp"

namespace ontoverse {

using PropositionId = std::string;
using PropositionSet = std::set<PropositionId>;
using DomainId = std::string;

inline constexpr std::size_t kMaxEnumeratedPropositions = 16;

// Bit i stands for the i-th proposition of a space in sorted order.
using PropositionMask = std::uint32_t;

class PropositionSpace {
public:
    // Conflicts are normalized: duplicates and supersets of other conflicts
    // are dropped, since they never change which sets are consistent.
    PropositionSpace(DomainId domain, PropositionSet props, std::vector<PropositionSet> conflicts = {})
        : domain_(std::move(domain)), props_(props.begin(), props.end()) {
        if (props_.empty()) throw Error("proposition space '" + domain_ + "' has no propositions");
        for (const auto& p : props_)
            if (!is_identifier(p)) throw Error("invalid proposition name '" + p + "'");
        for (const auto& c : conflicts) {
            if (c.size() < 2) throw Error("conflict sets need at least two propositions");
            for (const auto& p : c)
                if (!props.contains(p)) throw Error("conflict mentions proposition outside space: " + p);
        }
        std::sort(conflicts.begin(), conflicts.end(),
                  [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
        for (auto& c : conflicts) {
            const bool redundant = std::any_of(conflicts_.begin(), conflicts_.end(), [&](const PropositionSet& kept) {
                return std::includes(c.begin(), c.end(), kept.begin(), kept.end());
            });
            if (!redundant) conflicts_.push_back(std::move(c));
        }
        std::sort(conflicts_.begin(), conflicts_.end());
        if (props_.size() <= 32) {
            for (const auto& c : conflicts_) conflict_masks_.push_back(to_mask(c));
        }
    }

    const DomainId& domain() const noexcept { return domain_; }
    const std::vector<PropositionId>& props() const noexcept { return props_; }
    const std::vector<PropositionSet>& conflicts() const noexcept { return conflicts_; }
    std::size_t size() const noexcept { return props_.size(); }

    PropositionSet all() const { return {props_.begin(), props_.end()}; }

    bool contains(const PropositionId& p) const { return std::binary_search(props_.begin(), props_.end(), p); }

    void require_within(const PropositionSet& s) const {
        for (const auto& p : s)
            if (!contains(p)) throw Error("proposition outside space: " + p);
    }

    PropositionMask to_mask(const PropositionSet& s) const {
        if (props_.size() > 32) throw CapExceeded("proposition space too large for bit masks");
        PropositionMask m = 0;
        for (const auto& p : s) {
            auto it = std::lower_bound(props_.begin(), props_.end(), p);
            if (it == props_.end() || *it != p) throw Error("proposition outside space: " + p);
            m |= PropositionMask{1} << static_cast<unsigned>(it - props_.begin());
        }
        return m;
    }

    PropositionSet from_mask(PropositionMask m) const {
        PropositionSet s;
        for (std::size_t i = 0; i < props_.size(); ++i)
            if (m & (PropositionMask{1} << i)) s.insert(props_[i]);
        return s;
    }

    bool consistent_mask(PropositionMask m) const noexcept {
        return std::none_of(conflict_masks_.begin(), conflict_masks_.end(),
                            [m](PropositionMask c) { return (c & m) == c; });
    }

    // Conflict sets fully contained in s.
    std::vector<PropositionSet> conflicts_within(const PropositionSet& s) const {
        std::vector<PropositionSet> out;
        for (const auto& c : conflicts_)
            if (std::includes(s.begin(), s.end(), c.begin(), c.end())) out.push_back(c);
        return out;
    }

    friend bool operator==(const PropositionSpace& a, const PropositionSpace& b) {
        return a.domain_ == b.domain_ && a.props_ == b.props_ && a.conflicts_ == b.conflicts_;
    }

private:
    DomainId domain_;
    std::vector<PropositionId> props_;
    std::vector<PropositionSet> conflicts_;
    std::vector<PropositionMask> conflict_masks_;
};

inline bool is_consistent(const PropositionSet& p, const PropositionSpace& space) {
    space.require_within(p);
    return space.conflicts_within(p).empty();
}

inline PropositionSet set_union(const PropositionSet& a, const PropositionSet& b) {
    PropositionSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

namespace detail {

inline void require_enumerable(std::size_t n, std::size_t cap, const char* what) {
    if (n > cap) throw CapExceeded(std::string(what) + " instance too large");
}

inline bool weakly_equivalent_masks(PropositionMask a, PropositionMask b, const PropositionSpace& space) {
    const PropositionMask full = static_cast<PropositionMask>((std::uint64_t{1} << space.size()) - 1);
    // Enumerate every subset of the space as the third set.
    PropositionMask extra = 0;
    do {
        if (space.consistent_mask(a | extra) != space.consistent_mask(b | extra)) return false;
        extra = (extra - full) & full;
    } while (extra != 0);
    return true;
}

} // namespace detail

// For every P3 within the space: P1 u P3 consistent iff P2 u P3 consistent.
inline bool weakly_equivalent_sets(const PropositionSet& p1, const PropositionSet& p2, const PropositionSpace& space) {
    detail::require_enumerable(space.size(), kMaxEnumeratedPropositions, "weak-equivalence");
    return detail::weakly_equivalent_masks(space.to_mask(p1), space.to_mask(p2), space);
}

// Consistent subsets of p_dagger with no consistent proper superset inside p_dagger.
inline std::set<PropositionSet> maximal_consistent_subsets(const PropositionSet& p_dagger,
                                                           const PropositionSpace& space) {
    detail::require_enumerable(p_dagger.size(), kMaxEnumeratedPropositions, "maximal-consistent-subset");
    space.require_within(p_dagger);
    const std::vector<PropositionId> members(p_dagger.begin(), p_dagger.end());
    const std::size_t n = members.size();

    std::vector<PropositionMask> space_masks(n);
    for (std::size_t i = 0; i < n; ++i) space_masks[i] = space.to_mask({members[i]});
    auto lift = [&](std::uint32_t local) {
        PropositionMask m = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (local & (1u << i)) m |= space_masks[i];
        return m;
    };

    std::set<PropositionSet> out;
    const std::uint32_t count = std::uint32_t{1} << n;
    std::vector<bool> consistent(count);
    for (std::uint32_t s = 0; s < count; ++s) consistent[s] = space.consistent_mask(lift(s));
    for (std::uint32_t s = 0; s < count; ++s) {
        if (!consistent[s]) continue;
        bool maximal = true;
        for (std::size_t i = 0; i < n && maximal; ++i)
            if (!(s & (1u << i)) && consistent[s | (1u << i)]) maximal = false;
        if (!maximal) continue;
        PropositionSet chosen;
        for (std::size_t i = 0; i < n; ++i)
            if (s & (1u << i)) chosen.insert(members[i]);
        out.insert(std::move(chosen));
    }
    return out;
}

// All subsets of the space, ordered by size and then lexicographically by
// their sorted member lists.
inline std::vector<PropositionMask> subsets_by_size_then_lex(const PropositionSpace& space) {
    const std::size_t n = space.size();
    detail::require_enumerable(n, kMaxEnumeratedPropositions, "subset enumeration");
    std::vector<PropositionMask> all(std::size_t{1} << n);
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<PropositionMask>(i);
    auto members = [](PropositionMask m) {
        std::vector<int> idx;
        for (int i = 0; m; ++i, m >>= 1)
            if (m & 1u) idx.push_back(i);
        return idx;
    };
    std::sort(all.begin(), all.end(), [&](PropositionMask a, PropositionMask b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        return members(a) < members(b);
    });
    return all;
}

} // namespace ontoverse
