#pragma once

#include <string>
#include <vector>

#include "fmtk/equiv.hpp"
#include "fmtk/sigma_tree.hpp"

namespace fmtk {

// Shrinking of Sigma-trees and words to small m-equivalent subtrees that keep a marked
// node set W. Every operation returns the subtree together with the origin map into
// its input. Equivalence classes are those realized in the input; no global class
// bound is computed, loops run to their structural fixpoints.

struct PhaseLog {
    std::string name;
    int size_before = 0;
    int size_after = 0;
    int steps = 0;
};

struct ShrinkReport {
    int input_size = 0;
    int output_size = 0;
    std::vector<PhaseLog> phases;
    bool contains_w = false;
    bool is_subtree = false;
    bool equivalent = false;

    bool ok() const { return contains_w && is_subtree && equivalent; }
};

/// Keeps, below every node, at most m+k children per class of child subtree; children
/// whose subtree meets W are preferred, then smaller subtrees, then smaller indices.
SubtreeResult reduce_degree(const SigmaTree& s, const std::vector<int>& w, int m, int k,
                            EquivSession* session = nullptr);

/// Splices s_{>=a} to s_{>=b} whenever a < b and both subtrees are m-equivalent, until
/// no root-to-leaf path repeats a class. Nodes in `keep` are never removed (the class
/// of a subtree is refined by how many of them it contains).
SubtreeResult reduce_height_no_w(const SigmaTree& s, int m, const std::vector<int>& keep = {},
                                 EquivSession* session = nullptr);

/// Chain case of reduce_height_no_w: an m-equivalent subword. `keep` positions survive.
SubtreeResult shrink_word(const SigmaTree& w, int m, const std::vector<int>& keep = {},
                          EquivSession* session = nullptr);

/// Shortens the root-to-b path through the path-decomposition word, keeping (t, b)
/// m-equivalent to (s, b).
SubtreeResult reduce_root_distance(const SigmaTree& s, int b, int m,
                                   EquivSession* session = nullptr);

/// Shortens paths between W-consecutive nodes until no reduction step applies.
SubtreeResult reduce_w_distances(const SigmaTree& s, const std::vector<int>& w, int m, int k,
                                 EquivSession* session = nullptr);

struct ShrinkOutcome {
    SubtreeResult result;
    ShrinkReport report;
};

/// Full pipeline: W-distances (with the root added to W), height reduction of the
/// W-free hanging subtrees, then degree reduction. Verifies the outcome.
ShrinkOutcome shrink_tree(const SigmaTree& s, const std::vector<int>& w, int m, int k,
                          EquivSession* session = nullptr);

/// Verdicts for `result` as a shrink of `s` keeping `w`.
ShrinkReport verify_shrink(const SigmaTree& s, const SubtreeResult& result,
                           const std::vector<int>& w, int m, EquivSession* session = nullptr);

/// Composition of origin maps: positions in `inner` refer to nodes of `outer.tree`.
SubtreeResult compose(const SubtreeResult& outer, const SubtreeResult& inner);

}  // namespace fmtk
