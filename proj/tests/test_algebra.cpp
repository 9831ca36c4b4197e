#include <random>

#include "doctest.h"
#include "fmtk/algebra.hpp"
#include "fmtk/embedding.hpp"
#include "fmtk/equiv.hpp"
#include "fmtk/generators.hpp"
#include "fmtk/operations.hpp"
#include "oracles.hpp"

using namespace fmtk;

namespace {

Structure vertex() { return Structure(graph_vocabulary(), 1, {{}}); }

ExpressionTree balanced_union(int leaves) {
    if (leaves == 1) return ExpressionTree::leaf(vertex());
    return ExpressionTree::binary(OpKind::Union, balanced_union(leaves / 2), balanced_union(leaves / 2));
}

}  // namespace

TEST_CASE("evaluation basics") {
    CHECK(eval_expression_tree(ExpressionTree::leaf(make_path(2))) == make_path(2));
    ExpressionTree two = ExpressionTree::binary(OpKind::Union, ExpressionTree::leaf(vertex()),
                                                ExpressionTree::leaf(vertex()));
    Structure e = eval_expression_tree(two);
    CHECK(e.size() == 2);
    CHECK(e.tuples(0).empty());
    ExpressionTree bw = ExpressionTree::binary(OpKind::Bowtie, ExpressionTree::leaf(vertex()),
                                               ExpressionTree::leaf(vertex()));
    Structure b = eval_expression_tree(bw);
    CHECK(b.holds(0, {0, 1}));
    CHECK(b.holds(0, {1, 0}));
    CHECK_FALSE(b.holds(0, {0, 0}));
}

TEST_CASE("bowtie is complement of union of complements") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        Structure a = oracle::random_structure(graph_vocabulary(), 1 + i % 3, 0.5, rng);
        Structure b = oracle::random_structure(graph_vocabulary(), 1 + i % 4, 0.5, rng);
        CHECK(bowtie(a, b) == complement(disjoint_union(complement(a), complement(b))));
    }
}

TEST_CASE("complement push-down") {
    Structure a = make_path(1), b = make_path(2);
    ExpressionTree t = ExpressionTree::unary(
        OpKind::Complement, ExpressionTree::binary(OpKind::Union, ExpressionTree::leaf(a), ExpressionTree::leaf(b)));
    ExpressionTree p = push_complement_to_leaves(t);
    REQUIRE(p.node(p.root()).kind == OpKind::Bowtie);
    CHECK(p.node(p.node(p.root()).left).complemented);
    CHECK(p.node(p.node(p.root()).right).complemented);
    CHECK(eval_expression_tree(p) == eval_expression_tree(t));

    ExpressionTree dbl = ExpressionTree::unary(OpKind::Complement,
                                               ExpressionTree::unary(OpKind::Complement, ExpressionTree::leaf(a)));
    ExpressionTree q = push_complement_to_leaves(dbl);
    CHECK(q.nodes().size() == 1);
    CHECK_FALSE(q.node(q.root()).complemented);

    ExpressionTree prod = ExpressionTree::unary(
        OpKind::Complement, ExpressionTree::binary(OpKind::Product, ExpressionTree::leaf(a), ExpressionTree::leaf(b)));
    CHECK_THROWS(push_complement_to_leaves(prod));
}

TEST_CASE("expand bowtie round trip") {
    std::mt19937_64 rng(42);
    ExpressionTree t = ExpressionTree::binary(
        OpKind::Bowtie, ExpressionTree::leaf(oracle::random_structure(graph_vocabulary(), 2, 0.5, rng), true),
        ExpressionTree::binary(OpKind::Union, ExpressionTree::leaf(make_path(1)), ExpressionTree::leaf(vertex())));
    ExpressionTree e = expand_bowtie(t);
    CHECK(e.uses_only({OpKind::Union, OpKind::Complement}));
    CHECK(eval_expression_tree(e) == eval_expression_tree(t));
}

TEST_CASE("height reduction collapses a balanced union") {
    EquivSession session;
    ExpressionTree t = balanced_union(16);
    ExpressionResult r = reduce_expression_height(t, {}, 1, 0, &session);
    CHECK(r.tree.height() < t.height());
    Structure in = eval_expression_tree(t), out = eval_expression_tree(r.tree);
    CHECK(is_embedding(out, in, r.origin));
    CHECK(ef_game_equivalent(in, out, 1));
}

TEST_CASE("identity leaf shrinker leaves the tree alone") {
    ExpressionTree t = ExpressionTree::binary(OpKind::Union, ExpressionTree::leaf(make_path(2)),
                                              ExpressionTree::leaf(make_cycle(3)));
    ExpressionResult r = shrink_leaves(t, {1}, 1, identity_leaf_shrinker());
    CHECK(eval_expression_tree(r.tree) == eval_expression_tree(t));
}

TEST_CASE("algebraic shrink of a single leaf and of a cograph") {
    EquivSession session;
    AlgebraicShrink one = shrink_algebraic(ExpressionTree::leaf(make_path(3)), {}, 1, 0,
                                           identity_leaf_shrinker(), &session);
    CHECK(one.report.ok());
    CHECK(one.output == make_path(3));

    // Complement of eight isolated vertices unioned with a triangle-free part.
    ExpressionTree cograph = ExpressionTree::unary(
        OpKind::Complement, ExpressionTree::binary(OpKind::Union, balanced_union(8), balanced_union(4)));
    AlgebraicShrink s = shrink_algebraic(cograph, {0, 11}, 2, 2, identity_leaf_shrinker(), &session);
    CHECK(s.report.ok());
    CHECK(s.output.size() < 12);
    CHECK(ef_game_equivalent(eval_expression_tree(cograph), s.output, 2));
}

TEST_CASE("words and trees of structures") {
    EquivSession session;
    std::vector<Structure> blocks(20, vertex());
    CompositeShrink w = shrink_word_of_structures(blocks, {}, 2, 0, identity_leaf_shrinker(), &session);
    CHECK(w.ok());
    CHECK(w.output.size() < 20);
    CHECK(session.m_equivalent(word_of_structures(blocks), w.output, 2));

    std::vector<Structure> parts(12, make_path(1));
    std::vector<int> parent{-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    CompositeShrink t = shrink_tree_of_structures(parent, parts, {23}, 1, 1, identity_leaf_shrinker(), &session);
    CHECK(t.ok());
    CHECK(t.output.size() < 24);
    CHECK(std::find(t.origin.begin(), t.origin.end(), 23) != t.origin.end());
}

TEST_CASE("marked word scan") {
    std::vector<MarkedWord> seq{{{make_path(2)}, {0}}, {{make_path(1), make_path(1)}, {}},
                                {{make_path(2), make_path(1)}, {0}}};
    auto pair = wqo_scan_marked_words(seq);
    REQUIRE(pair.has_value());
    CHECK(pair->first == 0);
    CHECK(pair->second == 2);
}
