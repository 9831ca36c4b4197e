#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmtk/formula.hpp"
#include "fmtk/parallel.hpp"
#include "fmtk/structure.hpp"

namespace fmtk {

/// Decides membership of a structure in some class.
using Membership = std::function<bool(const Structure&)>;

/// Finite stand-in for a class S: listed structures plus a membership test for
/// arbitrary structures (used on induced substructures).
struct ClassSample {
    std::string name;
    std::vector<Structure> structures;
    Membership member;
    /// Every induced substructure of a listed structure that passes `member` is listed
    /// (up to isomorphism).
    bool closed_under_substructures = false;
};

/// Bundled membership tests: "all", "cycles", "paths", "linorders", "words", "trees",
/// "hngn". Throws InvalidArgument for other names.
Membership class_membership(std::string_view name);
bool is_cycle_graph(const Structure& a);
bool is_path_graph(const Structure& a);
bool is_linear_order(const Structure& a);

ClassSample cycle_sample(int min_size, int max_size);
ClassSample path_sample(int max_length);
ClassSample linear_order_sample(int max_size);
/// All structures over `vocab` (no constants) with 1..max_size elements, one per
/// isomorphism class. Closed under induced substructures.
ClassSample all_structures_sample(const Vocabulary& vocab, int max_size);

/// Exhaustive subset enumeration is limited to structures of at most this size.
inline constexpr int kCoreGuard = 12;

/// All subsets of at most k elements (ordered by size, then lexicographically) that are
/// cores of A: every induced substructure containing the subset that lies in S (per
/// `in_s`) also lies in C (per `in_c`).
std::vector<std::vector<Element>> find_cores(const Structure& a, const Membership& in_c, int k,
                                             const Membership& in_s,
                                             Execution exec = Execution::Parallel);
std::vector<std::vector<Element>> find_cores(const Structure& a, const Formula& phi, int k,
                                             const Membership& in_s,
                                             Execution exec = Execution::Parallel);

struct CoreCertificate {
    int structure = 0;  // index into the sample
    std::vector<Element> core;
    std::vector<std::string> transcript;
};

struct PscResult {
    bool holds = true;
    std::vector<CoreCertificate> certificates;  // one per model of phi in the sample
    std::optional<int> failing;                 // first model without a core
};

/// Whether every model of phi in the sample has a core of size at most k.
PscResult psc_check(const Formula& phi, int k, const ClassSample& sample,
                    Execution exec = Execution::Parallel);

/// exists^k x forall^p y (xi_{k+p} -> phi) relativized to x y.
PrefixSentence translate_to_exists_forall(const Formula& phi, int k, int p,
                                          const std::vector<std::string>& constants = {});

/// forall^p y (xi_{k+p} -> phi) relativized to x y, with free variables x1..xk.
Formula core_formula(const Formula& phi, int k, int p,
                     const std::vector<std::string>& constants = {});

/// Indices of sample structures on which the two sentences disagree.
std::vector<int> sample_disagreements(const Formula& a, const Formula& b, const ClassSample& sample);

struct AutoTranslation {
    std::optional<PrefixSentence> sentence;  // set when some p agreed on the sample
    int p = 0;                               // last p tried
    std::vector<int> tried;
    std::vector<int> disagreements;          // for the last p tried
};

/// Tries p = 1, 2, 4, ... up to p_cap until the translation agrees with phi on the
/// sample.
AutoTranslation translate_auto(const Formula& phi, int k, const ClassSample& sample, int p_cap);

/// exists z1..zn: every atomic and negated atomic fact of A, plus distinctness.
Formula atomic_diagram_sentence(const Structure& a);

inline constexpr int kMinimalModelGuard = 64;

struct MinimalModels {
    Formula sentence;
    std::vector<Structure> minimal;  // embedding-minimal non-members, one per iso class
    std::vector<int> disagreements;  // sample indices where sentence and class differ
};

/// Universal sentence for a class closed under substructures: the negated disjunction
/// of the diagrams of the minimal sample structures outside the class.
MinimalModels forall_star_from_minimal_models(const Membership& in_class,
                                              const ClassSample& sample);

}  // namespace fmtk
