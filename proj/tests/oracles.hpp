#pragma once

// Reference implementations used only by tests. None of them calls into the library's
// search, evaluation or equivalence code.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "fmtk/formula.hpp"
#include "fmtk/sigma_tree.hpp"
#include "fmtk/structure.hpp"

namespace oracle {

using fmtk::Formula;
using fmtk::Structure;

/// Tries every injection A -> B.
bool embeds(const Structure& a, const Structure& b);

/// Recursive Tarskian evaluation straight off the AST.
bool eval(const Structure& a, const Formula& f, std::map<std::string, int>& env);
inline bool eval(const Structure& a, const Formula& f) {
    std::map<std::string, int> env;
    return eval(a, f, env);
}

/// Lexicographically least relation code over all vertex permutations.
std::vector<char> canonical_code(const Structure& a);

/// One representative per isomorphism class of {E/2}-structures with 1..max_size
/// elements, found by canonical codes.
std::vector<Structure> binary_iso_classes(int max_size);

Structure random_structure(const fmtk::Vocabulary& v, int n, double density, std::mt19937_64& rng);

/// Random sentence of quantifier rank at most `rank` over the vocabulary's predicates.
Formula random_sentence(const fmtk::Vocabulary& v, int rank, std::mt19937_64& rng);

/// Random formula with free variables drawn from `free`, quantifier rank <= rank.
Formula random_formula(const fmtk::Vocabulary& v, int rank, std::vector<std::string> scope,
                       std::mt19937_64& rng, int depth = 0);

fmtk::SigmaTree random_tree(int size, int letters, std::mt19937_64& rng);

/// Distinct random elements of 0..n-1.
std::vector<int> random_subset(int n, int count, std::mt19937_64& rng);

}  // namespace oracle
