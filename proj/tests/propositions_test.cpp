#include <gtest/gtest.h>

#include "ontoverse/propositions.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace ontoverse;

namespace {

PropositionSpace three() { return PropositionSpace("d", {"p1", "p2", "p3"}, {{"p1", "p2"}}); }
PropositionSpace pair_conflict() { return PropositionSpace("d", {"p1", "p2"}, {{"p1", "p2"}}); }

} // namespace

TEST(Space, NormalizesConflicts) {
    PropositionSpace s("d", {"a", "b", "c"}, {{"a", "b", "c"}, {"a", "b"}, {"a", "b"}});
    ASSERT_EQ(s.conflicts().size(), 1u);
    EXPECT_EQ(s.conflicts().front(), (PropositionSet{"a", "b"}));
}

TEST(Space, RejectsBadConflicts) {
    EXPECT_THROW(PropositionSpace("d", {"a"}, {{"a"}}), Error);
    EXPECT_THROW(PropositionSpace("d", {"a", "b"}, {{"a", "z"}}), Error);
    EXPECT_THROW(PropositionSpace("d", {}), Error);
}

TEST(Consistency, Examples) {
    EXPECT_TRUE(is_consistent({}, three()));
    EXPECT_TRUE(is_consistent({"p1", "p3"}, three()));
    EXPECT_FALSE(is_consistent({"p1", "p2", "p3"}, three()));
    EXPECT_THROW(is_consistent({"p9"}, three()), Error);
}

TEST(Consistency, DownwardClosed) {
    gen::Rng rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const auto sp = gen::space(rng, rng.between(1, 8));
        const auto s = gen::subset(rng, sp.props());
        if (!is_consistent(s, sp)) continue;
        for (const auto& sub : oracle::all_subsets(s)) ASSERT_TRUE(is_consistent(sub, sp));
    }
}

TEST(WeakEquivalence, Examples) {
    EXPECT_TRUE(weakly_equivalent_sets({"p1"}, {"p1"}, three()));
    EXPECT_FALSE(weakly_equivalent_sets({"p1"}, {"p2"}, pair_conflict()));
    EXPECT_TRUE(weakly_equivalent_sets({"p1", "p2"}, {"p2", "p1"}, pair_conflict()));
    // Both inconsistent: every extension stays inconsistent.
    PropositionSpace s("d", {"a", "b", "c", "e"}, {{"a", "b"}, {"c", "e"}});
    EXPECT_TRUE(weakly_equivalent_sets({"a", "b"}, {"c", "e"}, s));
}

TEST(WeakEquivalence, ConsistencyMismatchIsNeverEquivalent) {
    gen::Rng rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const auto sp = gen::space(rng, rng.between(2, 6));
        const auto a = gen::subset(rng, sp.props()), b = gen::subset(rng, sp.props());
        if (is_consistent(a, sp) != is_consistent(b, sp)) ASSERT_FALSE(weakly_equivalent_sets(a, b, sp));
    }
}

TEST(WeakEquivalence, EquivalenceRelationOnSmallSpaces) {
    gen::Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sp = gen::space(rng, rng.between(1, 4));
        const auto sets = oracle::all_subsets(sp.all());
        for (const auto& a : sets) {
            ASSERT_TRUE(weakly_equivalent_sets(a, a, sp));
            for (const auto& b : sets) {
                const bool ab = weakly_equivalent_sets(a, b, sp);
                ASSERT_EQ(ab, weakly_equivalent_sets(b, a, sp));
                if (!ab) continue;
                for (const auto& c : sets)
                    if (weakly_equivalent_sets(b, c, sp)) ASSERT_TRUE(weakly_equivalent_sets(a, c, sp));
            }
        }
    }
}

TEST(WeakEquivalence, Cap) {
    const auto ps = gen::names("p", 17);
    PropositionSpace big("d", {ps.begin(), ps.end()});
    EXPECT_THROW(weakly_equivalent_sets({}, {}, big), CapExceeded);
}

TEST(MaximalConsistent, Examples) {
    EXPECT_EQ(maximal_consistent_subsets({}, three()), (std::set<PropositionSet>{{}}));
    const std::set<PropositionSet> expected{{"p1", "p3"}, {"p2", "p3"}};
    EXPECT_EQ(oracle::maximal_consistent_subsets({"p1", "p2", "p3"}, {{"p1", "p2"}}), expected);
    EXPECT_EQ(maximal_consistent_subsets({"p1", "p2", "p3"}, three()), expected);
    PropositionSpace free("d", {"p1", "p2"});
    EXPECT_EQ(maximal_consistent_subsets({"p1", "p2"}, free), (std::set<PropositionSet>{{"p1", "p2"}}));
}

TEST(MaximalConsistent, MembersAreConsistentAndMaximal) {
    gen::Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const auto sp = gen::space(rng, rng.between(1, 9));
        const auto dagger = gen::subset(rng, sp.props());
        for (const auto& m : maximal_consistent_subsets(dagger, sp)) {
            ASSERT_TRUE(is_consistent(m, sp));
            for (const auto& p : dagger)
                if (!m.contains(p)) ASSERT_FALSE(is_consistent(set_union(m, {p}), sp));
        }
    }
}

TEST(MaximalConsistent, Cap) {
    const auto ps = gen::names("p", 17);
    PropositionSpace big("d", {ps.begin(), ps.end()});
    EXPECT_THROW(maximal_consistent_subsets(big.all(), big), CapExceeded);
}

TEST(SubsetOrder, SizeThenLexicographic) {
    PropositionSpace s("d", {"a", "b", "c"});
    std::vector<PropositionSet> order;
    for (auto m : subsets_by_size_then_lex(s)) order.push_back(s.from_mask(m));
    const std::vector<PropositionSet> expected{{}, {"a"}, {"b"}, {"c"}, {"a", "b"}, {"a", "c"}, {"b", "c"}, {"a", "b", "c"}};
    EXPECT_EQ(order, expected);
}
