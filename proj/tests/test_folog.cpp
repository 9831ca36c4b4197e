#include <random>

#include "doctest.h"
#include "fmtk/error.hpp"
#include "fmtk/formula.hpp"
#include "fmtk/generators.hpp"
#include "oracles.hpp"

using namespace fmtk;

namespace {
const Vocabulary kGraph({{"E", 2}});
}

TEST_CASE("parse and print round trip") {
    for (const char* text : {
             "forall x. exists y. E(x, y)",
             "exists x. E(x, x) | !(x = x)",
             "forall x. forall y. E(x, y) -> E(y, x)",
             "true & !false",
             "exists x. (E(x, x) & exists y. !(x = y))",
         }) {
        Formula f = parse(text, &kGraph);
        CHECK(parse(to_string(f), &kGraph) == f);
    }
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse("E(x", &kGraph), ParseError);
    CHECK_THROWS_AS(parse("E(x, y, z)", &kGraph), ParseError);
    CHECK_THROWS_AS(parse("F(x)", &kGraph), ParseError);
    CHECK_THROWS_AS(parse("forall . E(x, x)", &kGraph), ParseError);
    CHECK_THROWS_AS(parse("E(x, x) &", &kGraph), ParseError);
}

TEST_CASE("syntactic measures") {
    Formula f = parse("forall x. (exists y. E(x, y)) & exists z. forall w. E(z, w)", &kGraph);
    CHECK(quantifier_rank(f) == 3);
    CHECK(is_sentence(f));
    Formula g = parse("E(x, y) & exists y. E(y, z)", &kGraph);
    CHECK(free_variables(g) == std::set<std::string>{"x", "y", "z"});
    CHECK(is_quantifier_free(parse("E(x, y) | x = y", &kGraph)));
}

TEST_CASE("evaluation agrees with the reference evaluator") {
    std::mt19937_64 rng(11);
    for (int r = 0; r < 400; ++r) {
        Structure a = oracle::random_structure(kGraph, 1 + r % 5, 0.4, rng);
        Formula f = oracle::random_sentence(kGraph, r % 4, rng);
        bool ref = oracle::eval(a, f);
        CHECK(evaluate(a, f) == ref);
        CHECK(CompiledFormula(f, kGraph).evaluate(a) == ref);
    }
}

TEST_CASE("evaluation errors") {
    Structure a = make_path(2);
    CHECK_THROWS_AS(evaluate(a, parse("E(x, x)", &kGraph)), InvalidArgument);
    CHECK_THROWS(evaluate(a, parse("P(x)")));
}

TEST_CASE("simplify preserves truth") {
    std::mt19937_64 rng(12);
    for (int r = 0; r < 300; ++r) {
        Structure a = oracle::random_structure(kGraph, 1 + r % 4, 0.5, rng);
        Formula f = oracle::random_sentence(kGraph, 2, rng);
        Formula s = simplify(f);
        CHECK(oracle::eval(a, s) == oracle::eval(a, f));
        CHECK(simplify(s) == s);
    }
    CHECK(simplify(parse("!!(x = x)")) == Formula::make_true());
    CHECK(simplify(parse("E(x, y) & E(x, y)", &kGraph)) == parse("E(x, y)", &kGraph));
}

TEST_CASE("relativization to the substructure spanned by a tuple") {
    // phi: every element has a successor. On the path 0-1-2 with x1 = 0 only:
    // the induced one-point structure has no edges, so phi fails there.
    Formula phi = parse("forall x. exists y. E(x, y)", &kGraph);
    Formula rel = relativize(phi, {"x1", "x2"});
    CHECK(is_quantifier_free(rel));
    Structure p = make_path(2);
    CHECK_FALSE(evaluate(p, rel, {{"x1", 0}, {"x2", 0}}));
    CHECK(evaluate(p, rel, {{"x1", 0}, {"x2", 1}}));
    CHECK_THROWS_AS(relativize(parse("E(x, x)", &kGraph), {"x1"}), InvalidArgument);
    CHECK_THROWS_AS(relativize(phi, {"a", "b", "c", "d"}, {}, 10), GuardExceeded);
}

TEST_CASE("size bound and prefix assembly") {
    Formula at_most_2 = size_bound_sentence(2);
    CHECK(oracle::eval(make_path(1), at_most_2));
    CHECK_FALSE(oracle::eval(make_path(2), at_most_2));
    PrefixSentence s = assemble_prefix(1, 2, parse("E(x1, y1) | x1 = y2", &kGraph));
    CHECK(s.existential == std::vector<std::string>{"x1"});
    CHECK(s.universal == std::vector<std::string>{"y1", "y2"});
    CHECK(quantifier_rank(to_formula(s)) == 3);
    CHECK_THROWS_AS(assemble_prefix(1, 0, parse("exists z. E(z, z)", &kGraph)), InvalidArgument);
}
