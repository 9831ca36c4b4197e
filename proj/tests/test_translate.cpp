#include <random>

#include "doctest.h"
#include "fmtk/embedding.hpp"
#include "fmtk/error.hpp"
#include "fmtk/formula.hpp"
#include "fmtk/generators.hpp"
#include "fmtk/translate.hpp"
#include "oracles.hpp"

using namespace fmtk;

namespace {

const Vocabulary kGraph({{"E", 2}});

Structure two_loops() { return StructureBuilder(kGraph, 2).add("E", {0, 0}).add("E", {0, 1}).add("E", {1, 1}).build(); }

}  // namespace

TEST_CASE("cores of the two-element example") {
    Formula phi = parse("exists x. forall y. E(x, y)", &kGraph);
    for (auto exec : {Execution::Serial, Execution::Parallel}) {
        auto cores = find_cores(two_loops(), phi, 1, class_membership("all"), exec);
        CHECK(std::find(cores.begin(), cores.end(), std::vector<Element>{0}) != cores.end());
        CHECK(std::find(cores.begin(), cores.end(), std::vector<Element>{1}) != cores.end());
    }
    // Only vertex 0 carries a loop here, so {1} induces a loop-free point.
    Structure a = StructureBuilder(kGraph, 2).add("E", {0, 0}).add("E", {0, 1}).build();
    CHECK(find_cores(a, phi, 1, class_membership("all")) == std::vector<std::vector<Element>>{{0}});
    CHECK(find_cores(a, phi, 0, class_membership("all")).empty());
    CHECK_THROWS_AS(find_cores(make_path(12), phi, 1, class_membership("all")), GuardExceeded);
}

TEST_CASE("serial and parallel cores agree on random graphs") {
    std::mt19937_64 rng(61);
    Formula phi = parse("forall x. exists y. E(x, y) | E(y, x)", &kGraph);
    for (int i = 0; i < 20; ++i) {
        Structure a = oracle::random_structure(kGraph, 6, 0.3, rng);
        CHECK(find_cores(a, phi, 2, class_membership("all"), Execution::Serial) ==
              find_cores(a, phi, 2, class_membership("all"), Execution::Parallel));
    }
}

TEST_CASE("preservation checks") {
    ClassSample sample = all_structures_sample(kGraph, 2);
    CHECK(psc_check(parse("forall x. !E(x, x)", &kGraph), 0, sample).holds);
    PscResult r = psc_check(parse("exists x. forall y. E(x, y)", &kGraph), 0, sample);
    CHECK_FALSE(r.holds);
    CHECK(r.failing.has_value());
    CHECK(psc_check(parse("exists x. E(x, x)", &kGraph), 1, sample).holds);
}

TEST_CASE("translation shape") {
    PrefixSentence s = translate_to_exists_forall(parse("forall x. !E(x, x)", &kGraph), 0, 1);
    CHECK(s.existential.empty());
    CHECK(s.universal == std::vector<std::string>{"y1"});
    CHECK(is_quantifier_free(s.matrix));
}

TEST_CASE("linear orders with a minimum") {
    Formula phi = parse("exists x. forall y. le(x, y)");
    const int m = quantifier_rank(phi);
    const int k = 1;
    const int p = std::max(1 << m, k);
    Formula t = to_formula(translate_to_exists_forall(phi, k, p));
    ClassSample sample = linear_order_sample(7);
    for (const auto& a : sample.structures) CHECK(oracle::eval(a, t) == oracle::eval(a, phi));
}

TEST_CASE("core formula matches the cores") {
    Formula phi = parse("exists x. forall y. E(x, y)", &kGraph);
    Formula cf = core_formula(phi, 1, 2);
    Structure a = two_loops();
    auto cores = find_cores(a, phi, 1, class_membership("all"));
    for (int e = 0; e < a.size(); ++e) {
        std::map<std::string, int> env{{"x1", e}};
        bool is_core = std::find(cores.begin(), cores.end(), std::vector<Element>{e}) != cores.end();
        CHECK(oracle::eval(a, cf, env) == is_core);
    }
}

TEST_CASE("automatic p on cycles") {
    AutoTranslation t = translate_auto(parse("forall x. forall y. E(x, y) -> E(y, x)", &kGraph), 0,
                                       cycle_sample(3, 8), 16);
    REQUIRE(t.sentence.has_value());
    CHECK(t.disagreements.empty());
}

TEST_CASE("atomic diagrams detect embeddings") {
    auto classes = oracle::binary_iso_classes(3);
    for (std::size_t i = 0; i < classes.size(); i += 3) {
        Formula diag = atomic_diagram_sentence(classes[i]);
        for (std::size_t j = 0; j < classes.size(); j += 2)
            CHECK(oracle::eval(classes[j], diag) == oracle::embeds(classes[i], classes[j]));
    }
    CHECK_THROWS_AS(atomic_diagram_sentence(StructureBuilder(Vocabulary({{"E", 2}}, {"c"}), 1).set_constant("c", 0).build()),
                    InvalidArgument);
}

TEST_CASE("universal sentences from minimal models") {
    ClassSample graphs{"all", oracle::binary_iso_classes(3), class_membership("all"), true};
    MinimalModels edgeless = forall_star_from_minimal_models([](const Structure& a) { return a.tuples(0).empty(); }, graphs);
    CHECK(edgeless.disagreements.empty());
    CHECK(edgeless.minimal.size() == 3);  // a loop, a one-way edge, a two-way edge

    MinimalModels everything = forall_star_from_minimal_models(class_membership("all"), graphs);
    CHECK(everything.sentence == Formula::make_true());

    auto loop_free = [](const Structure& a) {
        for (const auto& t : a.tuples(0))
            if (t[0] == t[1]) return false;
        return true;
    };
    MinimalModels nl = forall_star_from_minimal_models(loop_free, graphs);
    REQUIRE(nl.minimal.size() == 1);
    CHECK(nl.minimal[0].size() == 1);
    for (const auto& g : graphs.structures)
        CHECK(oracle::eval(g, nl.sentence) == oracle::eval(g, parse("!(exists x. E(x, x))", &kGraph)));

    ClassSample open{"cycles", cycle_sample(3, 5).structures, class_membership("cycles"), false};
    CHECK_THROWS_AS(forall_star_from_minimal_models(class_membership("cycles"), open), InvalidArgument);
}
