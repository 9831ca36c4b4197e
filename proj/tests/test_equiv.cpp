#include <random>

#include "doctest.h"
#include "fmtk/equiv.hpp"
#include "fmtk/generators.hpp"
#include "oracles.hpp"

using namespace fmtk;

namespace {
const Vocabulary kGraph({{"E", 2}});
}

TEST_CASE("rank types agree with the game on random pairs") {
    std::mt19937_64 rng(21);
    EquivSession session;
    for (int r = 0; r < 150; ++r) {
        int m = r % 3;
        Structure a = oracle::random_structure(kGraph, 1 + r % 5, 0.3, rng);
        Structure b = oracle::random_structure(kGraph, 1 + (r / 5) % 5, 0.3, rng);
        CHECK(session.m_equivalent(a, b, m) == ef_game_equivalent(a, b, m));
    }
}

TEST_CASE("rank types of tuples agree with the game") {
    std::mt19937_64 rng(22);
    EquivSession session;
    for (int r = 0; r < 100; ++r) {
        Structure a = oracle::random_structure(kGraph, 3, 0.4, rng);
        Structure b = oracle::random_structure(kGraph, 3, 0.4, rng);
        Tuple ta{r % 3}, tb{(r / 3) % 3};
        CHECK(session.m_equivalent(a, ta, b, tb, 1) == ef_game_equivalent(a, ta, b, tb, 1));
    }
}

TEST_CASE("serial and parallel kernels produce the same type") {
    std::mt19937_64 rng(23);
    for (int r = 0; r < 10; ++r) {
        Structure a = oracle::random_structure(kGraph, 7, 0.3, rng);
        EquivSession s1, s2;
        CHECK(s1.rank_type(a, {}, 2, Execution::Serial).hex() ==
              s2.rank_type(a, {}, 2, Execution::Parallel).hex());
    }
}

TEST_CASE("isomorphic structures share types at every rank") {
    std::mt19937_64 rng(24);
    EquivSession session;
    Structure a = oracle::random_structure(kGraph, 5, 0.4, rng);
    std::vector<int> perm{3, 0, 4, 1, 2};
    std::vector<Tuple> e;
    for (const auto& t : a.tuples(0)) e.push_back({perm[t[0]], perm[t[1]]});
    Structure b(kGraph, 5, {e});
    for (int m = 0; m <= 3; ++m) CHECK(session.m_equivalent(a, b, m));
}

TEST_CASE("known separations") {
    EquivSession session;
    CHECK(session.m_equivalent(make_cycle(4), make_cycle(5), 2));
    CHECK_FALSE(session.m_equivalent(make_path(1), make_path(2), 2));
    CHECK_FALSE(session.m_equivalent(make_linear_order(3), make_linear_order(4), 3));
    CHECK(session.m_equivalent(make_linear_order(7), make_linear_order(9), 3));
    CHECK(session.m_equivalent(make_linear_order(1), make_linear_order(5), 0));
    // Saying "some vertex has at most one neighbour" takes three quantifiers.
    CHECK(session.m_equivalent(make_cycle(9), make_path(9), 2));
    CHECK_FALSE(session.m_equivalent(make_cycle(9), make_path(9), 3));
    CHECK_FALSE(ef_game_equivalent(make_cycle(9), make_path(9), 3));
}

TEST_CASE("realized classes partition by type") {
    EquivSession session;
    std::vector<MarkedItem> items{{make_cycle(4), {}}, {make_path(1), {}}, {make_cycle(6), {}},
                                  {make_path(1), {}}};
    auto classes = realized_classes(items, 2, &session);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == std::vector<int>{0, 2});
    CHECK(classes[1] == std::vector<int>{1, 3});
}
