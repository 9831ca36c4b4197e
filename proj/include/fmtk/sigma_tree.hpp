#pragma once

#include <string>
#include <vector>

#include "fmtk/structure.hpp"

namespace fmtk {

/// Finite tree (as a poset with a unique minimum) whose nodes carry letters of a
/// finite alphabet. Nodes are 0..size-1; parent(root) == -1.
class SigmaTree {
public:
    SigmaTree(std::vector<std::string> alphabet, std::vector<int> parent, std::vector<int> label);

    /// Chain 0 < 1 < ... < n-1 with the given letters.
    static SigmaTree word(std::vector<std::string> alphabet, std::vector<int> labels);

    int size() const { return static_cast<int>(parent_.size()); }
    int root() const { return root_; }
    int parent(int v) const { return parent_.at(v); }
    int label(int v) const { return label_.at(v); }
    const std::vector<int>& children(int v) const { return children_.at(v); }
    int depth(int v) const { return depth_.at(v); }
    int height() const;
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<int>& parents() const { return parent_; }
    const std::vector<int>& labels() const { return label_; }

    /// a <= b in the tree order (a is an ancestor of b or equal to it).
    bool is_ancestor(int a, int b) const;
    bool is_chain() const;
    /// Nodes of the subtree rooted at v, in preorder.
    std::vector<int> subtree_nodes(int v) const;
    /// Number of edges on the path between a and b.
    int distance(int a, int b) const;
    /// Root-to-v path, root first.
    std::vector<int> path_from_root(int v) const;

    bool operator==(const SigmaTree& other) const {
        return alphabet_ == other.alphabet_ && parent_ == other.parent_ && label_ == other.label_;
    }

private:
    std::vector<std::string> alphabet_;
    std::vector<int> parent_;
    std::vector<int> label_;
    std::vector<std::vector<int>> children_;
    std::vector<int> depth_;
    int root_ = 0;
};

/// `tree` plus `origin[i]`: the node of the source tree that node i came from.
struct SubtreeResult {
    SigmaTree tree;
    std::vector<int> origin;
};

/// Subtree on the kept nodes: each kept node's parent becomes its nearest kept proper
/// ancestor. Kept nodes are renumbered in increasing order. Throws InvalidArgument
/// unless exactly one kept node has no kept ancestor.
SubtreeResult induced_subtree(const SigmaTree& s, std::vector<int> kept);

/// Predicate name carrying letter `a`.
std::string letter_predicate(const std::string& letter);

/// Encoding over {le} u {Q_a : a in alphabet}; le is the reflexive ancestor order.
Structure to_structure(const SigmaTree& t);
/// Inverse of to_structure; the alphabet is read from the Q_ predicates.
SigmaTree from_structure(const Structure& s);

/// s joined with t below e: t's root becomes a child of e. t's nodes are appended
/// after s's nodes in their original order.
SigmaTree join_at(const SigmaTree& s, int e, const SigmaTree& t);
/// Joins each tree of the forest below e, left to right.
SigmaTree join_at(const SigmaTree& s, int e, const std::vector<SigmaTree>& forest);

}  // namespace fmtk
