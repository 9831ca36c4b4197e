#include <random>

#include "doctest.h"
#include "fmtk/embedding.hpp"
#include "fmtk/error.hpp"
#include "fmtk/generators.hpp"
#include "fmtk/operations.hpp"
#include "fmtk/text_io.hpp"
#include "oracles.hpp"

using namespace fmtk;

TEST_CASE("builder rejects bad input") {
    Vocabulary v({{"E", 2}}, {"c"});
    CHECK_THROWS_AS(StructureBuilder(v, 2).add("E", {0, 2}).set_constant("c", 0).build(), InvalidArgument);
    CHECK_THROWS_AS(StructureBuilder(v, 2).add("E", {0}).set_constant("c", 0).build(), InvalidArgument);
    CHECK_THROWS_AS(StructureBuilder(v, 2).add("F", {0, 1}), InvalidArgument);
    CHECK_THROWS(StructureBuilder(v, 2).add("E", {0, 1}).build());  // constant unset
    Structure s = StructureBuilder(v, 2).add("E", {0, 1}).set_constant("c", 1).build();
    CHECK(s.constant(0) == 1);
    CHECK(s.holds(0, {0, 1}));
    CHECK_FALSE(s.holds(0, {1, 0}));
}

TEST_CASE("induced substructure renumbers in increasing order") {
    Structure p = make_path(4);  // 0-1-2-3-4
    std::vector<Element> set{4, 1, 2, 1};
    Renumbered r = induced_substructure(p, set);
    CHECK(r.origin == std::vector<Element>{1, 2, 4});
    CHECK(r.structure.size() == 3);
    CHECK(r.structure.holds(0, {0, 1}));
    CHECK_FALSE(r.structure.holds(0, {1, 2}));
    CHECK_THROWS_AS(induced_substructure(p, std::vector<Element>{}), InvalidArgument);
    CHECK_THROWS_AS(induced_substructure(p, std::vector<Element>{9}), InvalidArgument);
}

TEST_CASE("find_embedding agrees with brute force on random pairs") {
    std::mt19937_64 rng(7);
    Vocabulary v({{"E", 2}});
    for (int r = 0; r < 300; ++r) {
        Structure a = oracle::random_structure(v, 1 + r % 4, 0.4, rng);
        Structure b = oracle::random_structure(v, 1 + (r / 4) % 5, 0.4, rng);
        auto f = find_embedding(a, b);
        CHECK(f.has_value() == oracle::embeds(a, b));
        if (f) CHECK(is_embedding(a, b, *f));
        CHECK(is_isomorphic(a, b) == (a.size() == b.size() && oracle::canonical_code(a) == oracle::canonical_code(b)));
    }
}

TEST_CASE("iso class counts of small digraphs") {
    CHECK(oracle::binary_iso_classes(1).size() == 2);
    CHECK(oracle::binary_iso_classes(2).size() == 2 + 10);
    CHECK(oracle::binary_iso_classes(3).size() == 2 + 10 + 104);
}

TEST_CASE("operations on small graphs") {
    Structure p = make_path(1);  // single edge
    Structure u = disjoint_union(p, p);
    CHECK(u.size() == 4);
    CHECK(u.tuples(0).size() == 4);
    CHECK(u.holds(0, {2, 3}));
    CHECK_FALSE(u.holds(0, {1, 2}));

    Structure c = complement(make_path(2));
    CHECK(c.holds(0, {0, 2}));
    CHECK(c.holds(0, {0, 0}));  // complement of all tuples, loops included
    CHECK_FALSE(c.holds(0, {0, 1}));
    CHECK(complement(c) == make_path(2));

    Structure bw = bowtie(p, p);
    CHECK(bw.holds(0, {0, 2}));
    CHECK(bw.holds(0, {3, 1}));
    CHECK_FALSE(bw.holds(0, {0, 0}));

    Structure x = cartesian_product(p, p);
    Structure t = tensor_product(p, p);
    CHECK(x.size() == 4);
    CHECK(t.size() == 4);
    // Pairs (0,0)-(1,1) adjacent in the tensor product, (0,0)-(0,1) in the Cartesian one.
    CHECK(t.holds(0, {0, 3}));
    CHECK_FALSE(t.holds(0, {0, 1}));
    CHECK(x.holds(0, {0, 1}));
    CHECK_FALSE(x.holds(0, {0, 3}));

    Structure grid = make_grid({3, 4});
    CHECK(grid.size() == 12);
    CHECK(grid.holds(0, {0, 11}));
    CHECK_FALSE(grid.holds(0, {3, 4}));  // (0,3) vs (1,0): incomparable
}

TEST_CASE("word of structures orders blocks") {
    Structure p = make_path(1);
    Structure w = word_of_structures({p, p, p});
    CHECK(w.size() == 6);
    CHECK(block_index({p, p, p}) == std::vector<int>{0, 0, 1, 1, 2, 2});
    auto le = *w.vocab().find_predicate(kBlockOrder);
    CHECK(w.holds(le, {0, 5}));
    CHECK(w.holds(le, {0, 1}));  // same block
    CHECK_FALSE(w.holds(le, {5, 0}));
    CHECK_THROWS_AS(word_of_structures({make_linear_order(2)}), InvalidArgument);
}

TEST_CASE("text format round trip") {
    Vocabulary v({{"E", 2}, {"P", 1}}, {"c"});
    Structure s = StructureBuilder(v, 3).add("E", {0, 1}).add("E", {2, 2}).add("P", {1}).set_constant("c", 2).build();
    auto parsed = parse_structures(format_structure("s", s));
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].name == "s");
    CHECK(parsed[0].structure == s);

    SigmaTree t({"a", "b"}, {-1, 0, 0, 1}, {0, 1, 0, 1});
    auto trees = parse_trees(format_tree("t", t, {3}));
    REQUIRE(trees.size() == 1);
    CHECK(trees[0].tree == t);
    CHECK(trees[0].marks == std::vector<int>{3});
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_structures("structure s\nvocab: E/2\nuniverse: 2\nE: (0,1\n");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse_structures("structure s\nvocab: E/2\n"), ParseError);
    CHECK_THROWS_AS(parse_structures("structure s\nvocab: E/2\nuniverse: 2\nE: (0,5)\n"), ParseError);
    CHECK_THROWS_AS(parse_trees("tree t\nalphabet: a\nnode 0 label b root\n"), ParseError);
}

TEST_CASE("expression parser") {
    std::map<std::string, Structure> leaves{{"p", make_path(1)}, {"q", make_path(2)}};
    ExpressionTree t = parse_expression("(! (u p (bw q p)))", leaves);
    CHECK(t.leaves().size() == 3);
    CHECK(eval_expression_tree(t).size() == 7);
    CHECK_THROWS_AS(parse_expression("(u p)", leaves), ParseError);
    CHECK_THROWS_AS(parse_expression("(z p q)", leaves), ParseError);
    CHECK_THROWS_AS(parse_expression("r", leaves), ParseError);
}
