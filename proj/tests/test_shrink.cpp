#include <algorithm>
#include <random>

#include "doctest.h"
#include "fmtk/embedding.hpp"
#include "fmtk/equiv.hpp"
#include "fmtk/shrink.hpp"
#include "oracles.hpp"

using namespace fmtk;

namespace {

SigmaTree star(int leaves) {
    std::vector<int> parent(leaves + 1, 0);
    parent[0] = -1;
    return SigmaTree({"a"}, parent, std::vector<int>(leaves + 1, 0));
}

SigmaTree chain(int n) { return SigmaTree::word({"a"}, std::vector<int>(n, 0)); }

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

/// The kept nodes induce exactly the output tree.
bool is_induced(const SigmaTree& big, const SubtreeResult& r) {
    return is_embedding(to_structure(r.tree), to_structure(big), r.origin);
}

}  // namespace

TEST_CASE("tree structure conversion") {
    SigmaTree t({"a", "b"}, {-1, 0, 0, 2}, {0, 1, 0, 1});
    CHECK(from_structure(to_structure(t)) == t);
    Structure one = to_structure(chain(1));
    CHECK(one.size() == 1);
    CHECK(to_structure(chain(2)).tuples(*to_structure(chain(2)).vocab().find_predicate("le")).size() == 3);
    CHECK(join_at(chain(1), 0, chain(1)).size() == 2);
}

TEST_CASE("degree reduction on a star") {
    EquivSession session;
    SigmaTree s = star(10);
    SubtreeResult r = reduce_degree(s, {}, 1, 0, &session);
    CHECK(r.tree.size() < s.size());
    CHECK(r.tree.children(r.tree.root()).size() <= 1);
    CHECK(is_induced(s, r));
    CHECK(ef_game_equivalent(to_structure(s), to_structure(r.tree), 1));

    SubtreeResult kept = reduce_degree(s, {7}, 1, 1, &session);
    CHECK(contains(kept.origin, 7));
    CHECK(ef_game_equivalent(to_structure(s), {7}, to_structure(kept.tree),
                             {static_cast<int>(std::find(kept.origin.begin(), kept.origin.end(), 7) -
                                               kept.origin.begin())},
                             1));
}

TEST_CASE("height reduction on a long chain") {
    EquivSession session;
    SigmaTree s = chain(30);
    SubtreeResult r = reduce_height_no_w(s, 1, {}, &session);
    CHECK(r.tree.size() < 30);
    CHECK(is_induced(s, r));
    CHECK(ef_game_equivalent(to_structure(s), to_structure(r.tree), 1));
    CHECK(reduce_height_no_w(chain(1), 1, {}, &session).tree.size() == 1);
}

TEST_CASE("word shrink") {
    EquivSession session;
    SigmaTree w = chain(20);
    SubtreeResult r = shrink_word(w, 2, {}, &session);
    CHECK(r.tree.size() >= 3);  // L_n =_2 L_n' once both are at least 3
    CHECK(r.tree.size() < 20);
    CHECK(session.m_equivalent(to_structure(w), to_structure(r.tree), 2));
    CHECK(shrink_word(chain(1), 2, {}, &session).tree.size() == 1);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        int n = std::uniform_int_distribution<int>(1, 30)(rng);
        std::vector<int> labels(n);
        for (auto& l : labels) l = std::uniform_int_distribution<int>(0, 1)(rng);
        SigmaTree word = SigmaTree::word({"a", "b"}, labels);
        int m = 1 + i % 2;
        SubtreeResult out = shrink_word(word, m, {}, &session);
        CHECK(out.tree.is_chain());
        CHECK(is_induced(word, out));
        CHECK(session.m_equivalent(to_structure(word), to_structure(out.tree), m));
    }
}

TEST_CASE("root distance reduction") {
    EquivSession session;
    SigmaTree s = chain(40);
    SubtreeResult r = reduce_root_distance(s, 39, 1, &session);
    REQUIRE(contains(r.origin, 39));
    int b = static_cast<int>(std::find(r.origin.begin(), r.origin.end(), 39) - r.origin.begin());
    CHECK(r.tree.depth(b) < 39);
    CHECK(ef_game_equivalent(to_structure(s), {39}, to_structure(r.tree), {b}, 1));
    CHECK(reduce_root_distance(s, 0, 1, &session).tree.size() == 40);
}

TEST_CASE("W distance reduction") {
    EquivSession session;
    SigmaTree s = chain(40);
    SubtreeResult r = reduce_w_distances(s, {0, 39}, 1, 2, &session);
    CHECK(r.tree.size() < 40);
    CHECK(contains(r.origin, 0));
    CHECK(contains(r.origin, 39));
    CHECK(ef_game_equivalent(to_structure(s), to_structure(r.tree), 1));
    CHECK(reduce_w_distances(s, {5}, 1, 1, &session).tree.size() == 40);
}

TEST_CASE("full shrink on random trees") {
    std::mt19937_64 rng(32);
    EquivSession session;
    for (int i = 0; i < 40; ++i) {
        int n = std::uniform_int_distribution<int>(1, 20)(rng);
        int m = i % 3, k = (i / 3) % 3;
        SigmaTree s = oracle::random_tree(n, 1 + i % 2, rng);
        auto w = oracle::random_subset(n, k, rng);
        ShrinkOutcome out = shrink_tree(s, w, m, k, &session);
        CHECK(out.report.ok());
        CHECK(out.report.output_size == out.result.tree.size());
        for (int x : w) CHECK(contains(out.result.origin, x));
        CHECK(is_induced(s, out.result));
        CHECK(ef_game_equivalent(to_structure(s), to_structure(out.result.tree), m));
    }
}

TEST_CASE("shrink is idempotent in size") {
    std::mt19937_64 rng(33);
    EquivSession session;
    for (int i = 0; i < 20; ++i) {
        SigmaTree s = oracle::random_tree(18, 2, rng);
        ShrinkOutcome once = shrink_tree(s, {}, 1, 0, &session);
        ShrinkOutcome twice = shrink_tree(once.result.tree, {}, 1, 0, &session);
        CHECK(twice.result.tree.size() == once.result.tree.size());
    }
}

TEST_CASE("small tree with everything marked is unchanged") {
    SigmaTree s({"a"}, {-1, 0}, {0, 0});
    ShrinkOutcome out = shrink_tree(s, {0, 1}, 1, 2);
    CHECK(out.result.tree == s);
}
