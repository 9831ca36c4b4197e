#include <random>

#include "doctest.h"
#include "fmtk/embedding.hpp"
#include "fmtk/equiv.hpp"
#include "fmtk/error.hpp"
#include "fmtk/generators.hpp"
#include "fmtk/operations.hpp"
#include "fmtk/wqo.hpp"
#include "oracles.hpp"

using namespace fmtk;

TEST_CASE("Dickson pairs") {
    auto p = dickson_pair({{3, 1}, {2, 2}, {1, 3}, {4, 4}});
    REQUIRE(p.has_value());
    CHECK(*p == IndexPair{0, 3});
    CHECK_FALSE(dickson_pair({{1, 2}, {2, 1}}).has_value());
    CHECK(*dickson_pair({{5}, {5}, {5}}) == IndexPair{0, 1});
}

TEST_CASE("marked linear orders") {
    MarkedOrder a{5, {1, 3}};
    CHECK(order_type_tuple(a) == std::vector<long long>{1, 1, 1});
    auto pair = linear_order_embedding_pair({a, a}, 2);
    REQUIRE(pair.has_value());
    CHECK(*pair == IndexPair{0, 1});
    // Marks in the other order cannot be matched.
    CHECK_FALSE(linear_order_embedding_pair({MarkedOrder{3, {0, 2}}, MarkedOrder{3, {2, 0}}}, 2).has_value());
    CHECK(linear_order_embedding_pair({MarkedOrder{2, {0}}, MarkedOrder{4, {1}}}, 1).has_value());
}

TEST_CASE("marked orders against the brute force oracle") {
    std::mt19937_64 rng(51);
    for (int r = 0; r < 30; ++r) {
        int k = r % 3;
        std::vector<MarkedOrder> seq;
        std::vector<Structure> enc;
        for (int i = 0; i < 6; ++i) {
            MarkedOrder o{std::uniform_int_distribution<int>(1, 5)(rng), {}};
            for (int j = 0; j < k; ++j) o.marks.push_back(std::uniform_int_distribution<int>(0, o.size - 1)(rng));
            seq.push_back(o);
            enc.push_back(marked_order_structure(o));
        }
        std::optional<IndexPair> expected;
        for (int j = 1; j < 6 && !expected; ++j)
            for (int i = 0; i < j && !expected; ++i)
                if (oracle::embeds(enc[i], enc[j])) expected = IndexPair{i, j};
        CHECK(linear_order_embedding_pair(seq, k) == expected);
        CHECK(first_embedding_pair(enc) == expected);
    }
}

TEST_CASE("marked expansions") {
    Structure p = make_path(3);
    Structure plain = to_Sk_pred(p, {});
    auto r = *plain.vocab().find_predicate(kMarkPredicate);
    CHECK(plain.tuples(r).empty());
    Structure ordered = to_Sk(p, {3, 0});
    CHECK(ordered.vocab().constant_count() == 2);
    CHECK(ordered.constant(0) == 3);
    Structure forgot = forget_mark_order(ordered);
    CHECK(forgot.vocab().constant_count() == 0);
    CHECK(forgot == to_Sk_pred(p, {0, 3}));
}

TEST_CASE("embedding of set-marked structures lifts to some mark order") {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 40; ++i) {
        Structure a = oracle::random_structure(graph_vocabulary(), 3, 0.4, rng);
        Structure b = oracle::random_structure(graph_vocabulary(), 4, 0.4, rng);
        std::vector<Element> ma{0, 2}, mb = oracle::random_subset(4, 2, rng);
        if (!find_embedding(to_Sk_pred(a, ma), to_Sk_pred(b, mb))) continue;
        bool some = find_embedding(to_Sk(a, ma), to_Sk(b, mb)).has_value() ||
                    find_embedding(to_Sk(a, ma), to_Sk(b, {mb[1], mb[0]})).has_value();
        CHECK(some);
    }
}

TEST_CASE("endpoint-marked paths form an antichain") {
    std::vector<Structure> marked, plain;
    for (int i = 2; i <= 5; ++i) {
        Structure p = make_path(i);
        marked.push_back(to_Sk_pred(p, {0, p.size() - 1}));
        plain.push_back(p);
    }
    CHECK(antichain_certificate(marked).antichain);
    auto cert = antichain_certificate(plain);
    CHECK_FALSE(cert.antichain);
    CHECK(*cert.failing == IndexPair{0, 1});
    CHECK(antichain_certificate({make_path(1)}).antichain);
}

TEST_CASE("generators") {
    CHECK(make_Hn(1).size() == 10);
    CHECK(make_Hn(2).size() == 110);
    CHECK(make_Gn(2).size() == 119);
    CHECK_THROWS_AS(make_Hn(3), GuardExceeded);
    CHECK(make_cycle(3).tuples(0).size() == 6);
    CHECK(is_isomorphic(make_grid({3, 4}), tensor_product(make_linear_order(3), make_linear_order(4))));
    auto shape = recognize_HnGn(make_Gn(1));
    REQUIRE(shape.has_value());
    CHECK(shape->cycle);
    CHECK(shape->n == 1);
    CHECK_FALSE(recognize_HnGn(make_cycle(5)).has_value());
}

TEST_CASE("path and cycle facts") {
    EquivSession session;
    CHECK(session.m_equivalent(make_path(3), make_path(5), 1));
    CHECK(session.m_equivalent(make_path(9), make_path(12), 2));
    CHECK_FALSE(session.m_equivalent(make_path(2), make_path(3), 2));
    for (auto [m, n] : std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {1, 2}})
        CHECK(session.m_equivalent(make_Gn(n), make_Hn(n), m));
    auto comps = path_cycle_components(make_Gn(1));
    int cycles = 0;
    for (const auto& c : comps) cycles += c.cycle;
    CHECK(cycles == 1);
    CHECK_THROWS_AS(path_cycle_components(make_linear_order(3)), InvalidArgument);
}

TEST_CASE("path and cycle shrinkers") {
    Structure p = make_path(40);
    Renumbered one = shrink_path_with_w(p, {17}, 1, 1);
    CHECK(one.structure.size() == 1);
    CHECK(one.origin == std::vector<Element>{17});

    Renumbered ends = shrink_path_with_w(p, {0, 40}, 0, 2);
    CHECK(ends.structure.size() < 41);
    CHECK(is_embedding(ends.structure, p, ends.origin));
    CHECK(ef_game_equivalent(p, {0, 40}, ends.structure, {0, ends.structure.size() - 1}, 0));

    Renumbered shortp = shrink_path_with_w(make_path(2), {0, 2}, 1, 2);
    CHECK(shortp.structure.size() == 3);

    Structure c = make_cycle(6);
    Renumbered cw = shrink_cycle_with_w(c, {2}, 1, 1);
    CHECK(cw.structure.size() == 1);
    Renumbered cn = shrink_cycle_with_w(c, {}, 1, 0);
    CHECK(is_embedding(cn.structure, c, cn.origin));
    for (const auto& comp : path_cycle_components(cn.structure)) CHECK_FALSE(comp.cycle);
}

TEST_CASE("witness for H_n and G_n") {
    Structure g1 = make_Gn(1);
    Renumbered w = witness_HnGn(g1, {0}, 0, 1);
    CHECK(is_embedding(w.structure, g1, w.origin));
    CHECK(std::find(w.origin.begin(), w.origin.end(), 0) != w.origin.end());
    for (const auto& comp : path_cycle_components(w.structure)) CHECK_FALSE(comp.cycle);

    Structure g2 = make_Gn(2);
    Renumbered w2 = witness_HnGn(g2, {5}, 1, 1);
    CHECK(is_embedding(w2.structure, g2, w2.origin));
    CHECK(std::find(w2.origin.begin(), w2.origin.end(), 5) != w2.origin.end());
    CHECK(m_equivalent(g2, w2.structure, 1));
    CHECK(ef_game_equivalent(g2, w2.structure, 1));
}
