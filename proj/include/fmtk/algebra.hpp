#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fmtk/equiv.hpp"
#include "fmtk/shrink.hpp"
#include "fmtk/structure.hpp"

namespace fmtk {

enum class OpKind { Leaf, Union, Complement, Product, Tensor, Bowtie };

/// Short name used in the s-expression format: u, !, x, t, bw.
const char* op_symbol(OpKind k);

/// Operation tree with structure leaves. Leaves may be flagged as complemented, which
/// is how push_complement_to_leaves represents !B at a leaf. Nodes live in an arena;
/// children always precede their parent and the root is the last node.
class ExpressionTree {
public:
    struct Node {
        OpKind kind = OpKind::Leaf;
        int left = -1;
        int right = -1;
        int leaf = -1;  // index into leaves()
        bool complemented = false;
    };

    static ExpressionTree leaf(Structure s, bool complemented = false);
    static ExpressionTree unary(OpKind kind, const ExpressionTree& child);
    static ExpressionTree binary(OpKind kind, const ExpressionTree& l, const ExpressionTree& r);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Structure>& leaves() const { return leaves_; }
    int root() const { return static_cast<int>(nodes_.size()) - 1; }
    const Node& node(int i) const { return nodes_.at(i); }
    int height() const;
    /// Whether only the listed operations occur.
    bool uses_only(std::initializer_list<OpKind> ops) const;

    /// The subtree rooted at node i, as a standalone tree.
    ExpressionTree subtree(int i) const;
    /// Same shape with the leaf structures replaced (one per entry of leaves()).
    ExpressionTree with_leaves(std::vector<Structure> leaves) const;
    /// Leaf node ids from left to right; this is also the element layout of the
    /// evaluation for trees over {u, !, bw}.
    std::vector<int> leaf_order() const;

    std::string to_string(const std::vector<std::string>& leaf_names = {}) const;

private:
    int append(const ExpressionTree& other);
    std::vector<Node> nodes_;
    std::vector<Structure> leaves_;
};

/// Source of an element of eval(t): a leaf node and an element of its structure.
struct Provenance {
    int node;
    Element element;
};

Structure eval_expression_tree(const ExpressionTree& t);

/// Evaluation with per-element provenance; only for trees without x and t nodes.
std::pair<Structure, std::vector<Provenance>> eval_with_provenance(const ExpressionTree& t);

/// Rewrites a tree over {u, !} into an equivalent tree over {u, bw} with complemented
/// leaves. Element numbering of the evaluation is unchanged.
ExpressionTree push_complement_to_leaves(const ExpressionTree& t);

/// Replaces every bw node by !((!A) u (!B)) and every complemented leaf by a !
/// node, giving a tree over {u, !} with plain leaves.
ExpressionTree expand_bowtie(const ExpressionTree& t);

struct ExpressionResult {
    ExpressionTree tree;
    /// origin[i]: element of the input evaluation that element i came from.
    std::vector<Element> origin;
};

/// Height reduction on a {u, bw} tree: g(a) = (class of the evaluation at a, number
/// of leaves below a holding W elements); subtrees are spliced while a root-to-leaf
/// path repeats a g-value.
ExpressionResult reduce_expression_height(const ExpressionTree& t, const std::vector<Element>& w,
                                          int m, int k, EquivSession* session = nullptr);

/// (structure, marks, m) -> m-equivalent induced substructure containing the marks.
using LeafShrinker =
    std::function<Renumbered(const Structure&, const std::vector<Element>&, int)>;

LeafShrinker identity_leaf_shrinker();
/// Shrinker for leaves that encode Sigma-trees or words (vocabulary le, Q_*).
LeafShrinker sigma_tree_leaf_shrinker(int k);

/// Replaces each leaf by its shrink; W elements are routed to the leaves holding them.
ExpressionResult shrink_leaves(const ExpressionTree& t, const std::vector<Element>& w, int m,
                               const LeafShrinker& shrinker);

struct AlgebraReport {
    int input_size = 0;
    int output_size = 0;
    int height_before = 0;
    int height_after = 0;
    bool in_class = false;  // the {u,!} certificate evaluates to the output
    bool contains_w = false;
    bool is_substructure = false;
    bool equivalent = false;

    bool ok() const { return in_class && contains_w && is_substructure && equivalent; }
};

struct AlgebraicShrink {
    Structure output;
    std::vector<Element> origin;
    ExpressionTree certificate;
    AlgebraReport report;
};

/// Push-down, height reduction, leaf shrinking and certificate for a {u, !} tree.
AlgebraicShrink shrink_algebraic(const ExpressionTree& t, const std::vector<Element>& w, int m,
                                 int k, const LeafShrinker& shrinker,
                                 EquivSession* session = nullptr);

struct CompositeShrink {
    Structure output;
    std::vector<Element> origin;
    /// Surviving block indices and their shrunk parts.
    std::vector<int> blocks;
    std::vector<Structure> parts;
    std::vector<int> shape;  // parent map over surviving blocks (tree case)
    bool contains_w = false;
    bool is_substructure = false;
    bool equivalent = false;

    bool ok() const { return contains_w && is_substructure && equivalent; }
};

/// Shrinks word_of_structures(parts): each block through `shrinker`, then the block
/// sequence as a word over block classes, keeping blocks that hold W.
CompositeShrink shrink_word_of_structures(const std::vector<Structure>& parts,
                                          const std::vector<Element>& w, int m, int k,
                                          const LeafShrinker& shrinker,
                                          EquivSession* session = nullptr);

CompositeShrink shrink_tree_of_structures(const std::vector<int>& parent,
                                          const std::vector<Structure>& parts,
                                          const std::vector<Element>& w, int m, int k,
                                          const LeafShrinker& shrinker,
                                          EquivSession* session = nullptr);

struct MarkedWord {
    std::vector<Structure> parts;
    std::vector<Element> marks;  // elements of word_of_structures(parts)
};

/// First (i, j), i < j, with the i-th marked word embedding into the j-th (smallest j,
/// then smallest i). Words are compared as word structures with a unary mark predicate.
std::optional<std::pair<int, int>> wqo_scan_marked_words(const std::vector<MarkedWord>& seq);

}  // namespace fmtk
