#include "fmtk/algebra.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "fmtk/embedding.hpp"
#include "fmtk/error.hpp"
#include "fmtk/operations.hpp"
#include "fmtk/wqo.hpp"

namespace fmtk {

const char* op_symbol(OpKind k) {
    switch (k) {
        case OpKind::Leaf: return "leaf";
        case OpKind::Union: return "u";
        case OpKind::Complement: return "!";
        case OpKind::Product: return "x";
        case OpKind::Tensor: return "t";
        case OpKind::Bowtie: return "bw";
    }
    return "?";
}

ExpressionTree ExpressionTree::leaf(Structure s, bool complemented) {
    if (s.vocab().constant_count() != 0)
        throw InvalidArgument("expression tree leaves must be constant-free");
    ExpressionTree t;
    t.nodes_.push_back(Node{OpKind::Leaf, -1, -1, 0, complemented});
    t.leaves_.push_back(std::move(s));
    return t;
}

int ExpressionTree::append(const ExpressionTree& other) {
    if (!leaves_.empty() && !(leaves_.front().vocab() == other.leaves_.front().vocab()))
        throw InvalidArgument("expression tree leaves must share one vocabulary");
    const int node_shift = static_cast<int>(nodes_.size());
    const int leaf_shift = static_cast<int>(leaves_.size());
    for (Node n : other.nodes_) {
        if (n.left >= 0) n.left += node_shift;
        if (n.right >= 0) n.right += node_shift;
        if (n.leaf >= 0) n.leaf += leaf_shift;
        nodes_.push_back(n);
    }
    leaves_.insert(leaves_.end(), other.leaves_.begin(), other.leaves_.end());
    return static_cast<int>(nodes_.size()) - 1;
}

ExpressionTree ExpressionTree::unary(OpKind kind, const ExpressionTree& child) {
    if (kind != OpKind::Complement) throw InvalidArgument("only ! is unary");
    ExpressionTree t;
    int c = t.append(child);
    t.nodes_.push_back(Node{kind, c, -1, -1, false});
    return t;
}

ExpressionTree ExpressionTree::binary(OpKind kind, const ExpressionTree& l, const ExpressionTree& r) {
    if (kind == OpKind::Leaf || kind == OpKind::Complement)
        throw InvalidArgument(std::string(op_symbol(kind)) + " is not binary");
    ExpressionTree t;
    int a = t.append(l);
    int b = t.append(r);
    t.nodes_.push_back(Node{kind, a, b, -1, false});
    return t;
}

int ExpressionTree::height() const {
    std::vector<int> h(nodes_.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (n.left >= 0) h[i] = std::max(h[i], h[n.left] + 1);
        if (n.right >= 0) h[i] = std::max(h[i], h[n.right] + 1);
    }
    return h.back();
}

bool ExpressionTree::uses_only(std::initializer_list<OpKind> ops) const {
    for (const Node& n : nodes_)
        if (n.kind != OpKind::Leaf && std::find(ops.begin(), ops.end(), n.kind) == ops.end())
            return false;
    return true;
}

ExpressionTree ExpressionTree::subtree(int i) const {
    const Node& n = node(i);
    switch (n.kind) {
        case OpKind::Leaf: return leaf(leaves_[n.leaf], n.complemented);
        case OpKind::Complement: return unary(n.kind, subtree(n.left));
        default: return binary(n.kind, subtree(n.left), subtree(n.right));
    }
}

ExpressionTree ExpressionTree::with_leaves(std::vector<Structure> leaves) const {
    if (leaves.size() != leaves_.size()) throw InvalidArgument("leaf count mismatch");
    ExpressionTree t = *this;
    t.leaves_ = std::move(leaves);
    return t;
}

std::vector<int> ExpressionTree::leaf_order() const {
    std::vector<int> out;
    std::vector<int> stack{root()};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        const Node& n = nodes_[i];
        if (n.kind == OpKind::Leaf) {
            out.push_back(i);
            continue;
        }
        if (n.right >= 0) stack.push_back(n.right);
        stack.push_back(n.left);
    }
    return out;
}

std::string ExpressionTree::to_string(const std::vector<std::string>& leaf_names) const {
    auto name = [&](int leaf) {
        return leaf < static_cast<int>(leaf_names.size()) ? leaf_names[leaf]
                                                          : "s" + std::to_string(leaf);
    };
    auto rec = [&](auto&& self, int i) -> std::string {
        const Node& n = nodes_[i];
        if (n.kind == OpKind::Leaf)
            return n.complemented ? "(! " + name(n.leaf) + ")" : name(n.leaf);
        std::string out = "(" + std::string(op_symbol(n.kind)) + " " + self(self, n.left);
        if (n.right >= 0) out += " " + self(self, n.right);
        return out + ")";
    };
    return rec(rec, root());
}

Structure eval_expression_tree(const ExpressionTree& t) {
    std::vector<std::optional<Structure>> val(t.nodes().size());
    for (std::size_t i = 0; i < t.nodes().size(); ++i) {
        const auto& n = t.nodes()[i];
        switch (n.kind) {
            case OpKind::Leaf: {
                const Structure& s = t.leaves()[n.leaf];
                val[i] = n.complemented ? complement(s) : s;
                break;
            }
            case OpKind::Complement: val[i] = complement(*val[n.left]); break;
            case OpKind::Union: val[i] = disjoint_union(*val[n.left], *val[n.right]); break;
            case OpKind::Product: val[i] = cartesian_product(*val[n.left], *val[n.right]); break;
            case OpKind::Tensor: val[i] = tensor_product(*val[n.left], *val[n.right]); break;
            case OpKind::Bowtie: val[i] = bowtie(*val[n.left], *val[n.right]); break;
        }
        // Children are never read again once their parent is built.
        if (n.left >= 0) val[n.left].reset();
        if (n.right >= 0) val[n.right].reset();
    }
    return *val.back();
}

namespace {

void require_layout_ops(const ExpressionTree& t) {
    if (!t.uses_only({OpKind::Union, OpKind::Complement, OpKind::Bowtie}))
        throw InvalidArgument("operation not allowed here: tree uses x or t");
}

/// Offset of every leaf node's first element in the evaluation.
std::map<int, int> leaf_offsets(const ExpressionTree& t) {
    std::map<int, int> off;
    int next = 0;
    for (int id : t.leaf_order()) {
        off[id] = next;
        next += t.leaves()[t.node(id).leaf].size();
    }
    return off;
}

}  // namespace

std::pair<Structure, std::vector<Provenance>> eval_with_provenance(const ExpressionTree& t) {
    require_layout_ops(t);
    std::vector<Provenance> prov;
    for (int id : t.leaf_order())
        for (Element e = 0; e < t.leaves()[t.node(id).leaf].size(); ++e) prov.push_back({id, e});
    return {eval_expression_tree(t), std::move(prov)};
}

ExpressionTree push_complement_to_leaves(const ExpressionTree& t) {
    require_layout_ops(t);
    auto rec = [&](auto&& self, int i, bool neg) -> ExpressionTree {
        const auto& n = t.node(i);
        switch (n.kind) {
            case OpKind::Leaf:
                return ExpressionTree::leaf(t.leaves()[n.leaf], n.complemented != neg);
            case OpKind::Complement: return self(self, n.left, !neg);
            case OpKind::Union:
                return ExpressionTree::binary(neg ? OpKind::Bowtie : OpKind::Union,
                                              self(self, n.left, neg), self(self, n.right, neg));
            case OpKind::Bowtie:
                return ExpressionTree::binary(neg ? OpKind::Union : OpKind::Bowtie,
                                              self(self, n.left, neg), self(self, n.right, neg));
            default: throw InvalidArgument("cannot push ! through x or t");
        }
    };
    return rec(rec, t.root(), false);
}

ExpressionTree expand_bowtie(const ExpressionTree& t) {
    require_layout_ops(t);
    auto rec = [&](auto&& self, int i) -> ExpressionTree {
        const auto& n = t.node(i);
        switch (n.kind) {
            case OpKind::Leaf: {
                ExpressionTree plain = ExpressionTree::leaf(t.leaves()[n.leaf]);
                return n.complemented ? ExpressionTree::unary(OpKind::Complement, plain) : plain;
            }
            case OpKind::Complement:
                return ExpressionTree::unary(OpKind::Complement, self(self, n.left));
            case OpKind::Union:
                return ExpressionTree::binary(OpKind::Union, self(self, n.left), self(self, n.right));
            default: {
                auto l = ExpressionTree::unary(OpKind::Complement, self(self, n.left));
                auto r = ExpressionTree::unary(OpKind::Complement, self(self, n.right));
                return ExpressionTree::unary(OpKind::Complement,
                                             ExpressionTree::binary(OpKind::Union, l, r));
            }
        }
    };
    return rec(rec, t.root());
}

namespace {

/// Rebuilds the tree below `root` following the (possibly spliced) child links.
ExpressionTree rebuild(const ExpressionTree& t, const std::vector<int>& left,
                       const std::vector<int>& right, int root) {
    const auto& n = t.node(root);
    switch (n.kind) {
        case OpKind::Leaf: return ExpressionTree::leaf(t.leaves()[n.leaf], n.complemented);
        case OpKind::Complement:
            return ExpressionTree::unary(n.kind, rebuild(t, left, right, left[root]));
        default:
            return ExpressionTree::binary(n.kind, rebuild(t, left, right, left[root]),
                                          rebuild(t, left, right, right[root]));
    }
}

std::vector<int> w_leaf_nodes(const ExpressionTree& t, const std::vector<Element>& w, int k) {
    if (k >= 0 && static_cast<int>(w.size()) > k) throw InvalidArgument("need |W| <= k");
    auto [value, prov] = eval_with_provenance(t);
    std::vector<int> out;
    for (Element x : w) {
        if (x < 0 || x >= value.size()) throw InvalidArgument("W element out of range");
        out.push_back(prov[x].node);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// origin map from `after`'s evaluation into `before`'s, for trees whose leaves are a
/// left-to-right subsequence of the original leaf nodes listed in `kept_leaves`.
std::vector<Element> layout_origin(const ExpressionTree& before,
                                   const std::vector<int>& kept_leaves) {
    auto off = leaf_offsets(before);
    std::vector<Element> origin;
    for (int id : kept_leaves)
        for (Element e = 0; e < before.leaves()[before.node(id).leaf].size(); ++e)
            origin.push_back(off[id] + e);
    return origin;
}

}  // namespace

ExpressionResult reduce_expression_height(const ExpressionTree& t, const std::vector<Element>& w,
                                          int m, int k, EquivSession* session) {
    if (!t.uses_only({OpKind::Union, OpKind::Bowtie}))
        throw InvalidArgument("height reduction needs a tree over {u, bw}");
    EquivSession local;
    EquivSession& sess = session ? *session : local;
    const int n = static_cast<int>(t.nodes().size());
    auto w_leaves = w_leaf_nodes(t, w, k);

    // g(a) = (class of the evaluation at a, number of W-leaves below a). Splicing keeps
    // every surviving node's g-value, so it is computed once.
    std::vector<int> w_count(n, 0);
    for (int id : w_leaves) w_count[id] = 1;
    std::vector<std::pair<int, int>> g(n);
    std::map<int, int> class_of_type;
    std::vector<RankType> types;
    for (int i = 0; i < n; ++i) {
        const auto& nd = t.node(i);
        if (nd.left >= 0) w_count[i] += w_count[nd.left];
        if (nd.right >= 0) w_count[i] += w_count[nd.right];
        RankType ty = sess.rank_type(eval_expression_tree(t.subtree(i)), {}, m);
        int cls = -1;
        for (std::size_t c = 0; c < types.size(); ++c)
            if (types[c] == ty) cls = static_cast<int>(c);
        if (cls < 0) {
            cls = static_cast<int>(types.size());
            types.push_back(ty);
        }
        g[i] = {cls, w_count[i]};
    }

    std::vector<int> left(n), right(n), parent(n, -1);
    for (int i = 0; i < n; ++i) {
        left[i] = t.node(i).left;
        right[i] = t.node(i).right;
        if (left[i] >= 0) parent[left[i]] = i;
        if (right[i] >= 0) parent[right[i]] = i;
    }
    int root = t.root();
    for (;;) {
        // Deepest b with an ancestor a, g(a) = g(b); the shallowest such a.
        int best_a = -1, best_b = -1, best_depth = -1;
        std::vector<int> path;
        auto dfs = [&](auto&& self, int v) -> void {
            int depth = static_cast<int>(path.size());
            for (int d = 0; d < depth; ++d)
                if (g[path[d]] == g[v]) {
                    if (depth > best_depth) {
                        best_depth = depth;
                        best_b = v;
                        best_a = path[d];
                    }
                    break;
                }
            path.push_back(v);
            if (left[v] >= 0) self(self, left[v]);
            if (right[v] >= 0) self(self, right[v]);
            path.pop_back();
        };
        dfs(dfs, root);
        if (best_b < 0) break;
        int c = parent[best_a];
        if (c < 0) {
            root = best_b;
        } else {
            (left[c] == best_a ? left[c] : right[c]) = best_b;
        }
        parent[best_b] = c;
    }

    ExpressionTree out = rebuild(t, left, right, root);
    std::vector<int> kept_leaves;
    auto collect = [&](auto&& self, int v) -> void {
        if (t.node(v).kind == OpKind::Leaf) {
            kept_leaves.push_back(v);
            return;
        }
        self(self, left[v]);
        if (right[v] >= 0) self(self, right[v]);
    };
    collect(collect, root);
    return ExpressionResult{std::move(out), layout_origin(t, kept_leaves)};
}

LeafShrinker identity_leaf_shrinker() {
    return [](const Structure& s, const std::vector<Element>&, int) {
        std::vector<Element> all(s.size());
        for (int i = 0; i < s.size(); ++i) all[i] = i;
        return induced_substructure(s, all);
    };
}

LeafShrinker sigma_tree_leaf_shrinker(int k) {
    return [k](const Structure& s, const std::vector<Element>& marks, int m) {
        SigmaTree tree = from_structure(s);
        ShrinkOutcome out = shrink_tree(tree, marks, m, k);
        if (!out.report.ok()) throw VerificationFailure("leaf shrink did not verify");
        return induced_substructure(s, out.result.origin);
    };
}

ExpressionResult shrink_leaves(const ExpressionTree& t, const std::vector<Element>& w, int m,
                               const LeafShrinker& shrinker) {
    auto [value, prov] = eval_with_provenance(t);
    std::map<int, std::vector<Element>> share;
    for (Element x : w) {
        if (x < 0 || x >= value.size()) throw InvalidArgument("W element out of range");
        share[prov[x].node].push_back(prov[x].element);
    }
    auto off = leaf_offsets(t);
    std::vector<Structure> leaves = t.leaves();
    std::vector<Element> origin;
    for (int id : t.leaf_order()) {
        const int li = t.node(id).leaf;
        Renumbered r = shrinker(t.leaves()[li], share[id], m);
        for (Element x : share[id])
            if (std::find(r.origin.begin(), r.origin.end(), x) == r.origin.end())
                throw VerificationFailure("leaf shrinker dropped a W element");
        for (Element e : r.origin) origin.push_back(off[id] + e);
        leaves[li] = r.structure;
    }
    return ExpressionResult{t.with_leaves(std::move(leaves)), std::move(origin)};
}

namespace {

std::vector<Element> compose_origin(const std::vector<Element>& outer,
                                    const std::vector<Element>& inner) {
    std::vector<Element> out;
    out.reserve(inner.size());
    for (Element x : inner) out.push_back(outer[x]);
    return out;
}

std::vector<Element> pull_back(const std::vector<Element>& origin, const std::vector<Element>& w) {
    std::vector<Element> out;
    for (Element x : w) {
        auto it = std::find(origin.begin(), origin.end(), x);
        if (it == origin.end()) throw VerificationFailure("a W element was removed");
        out.push_back(static_cast<Element>(it - origin.begin()));
    }
    return out;
}

bool contains_all(const std::vector<Element>& origin, const std::vector<Element>& w) {
    return std::all_of(w.begin(), w.end(), [&](Element x) {
        return std::find(origin.begin(), origin.end(), x) != origin.end();
    });
}

}  // namespace

AlgebraicShrink shrink_algebraic(const ExpressionTree& t, const std::vector<Element>& w, int m,
                                 int k, const LeafShrinker& shrinker, EquivSession* session) {
    EquivSession local;
    EquivSession& sess = session ? *session : local;
    const Structure input = eval_expression_tree(t);

    ExpressionTree pushed = push_complement_to_leaves(t);
    if (!(eval_expression_tree(pushed) == input))
        throw VerificationFailure("complement push-down changed the evaluation");
    ExpressionResult short_tree = reduce_expression_height(pushed, w, m, k, &sess);
    ExpressionResult shrunk =
        shrink_leaves(short_tree.tree, pull_back(short_tree.origin, w), m, shrinker);

    AlgebraicShrink out{eval_expression_tree(shrunk.tree),
                        compose_origin(short_tree.origin, shrunk.origin),
                        expand_bowtie(shrunk.tree), {}};
    auto& r = out.report;
    r.input_size = input.size();
    r.output_size = out.output.size();
    r.height_before = t.height();
    r.height_after = out.certificate.height();
    r.in_class = out.certificate.uses_only({OpKind::Union, OpKind::Complement}) &&
                 eval_expression_tree(out.certificate) == out.output;
    r.contains_w = contains_all(out.origin, w);
    r.is_substructure = is_embedding(out.output, input, out.origin);
    r.equivalent = sess.m_equivalent(out.output, input, m);
    return out;
}

namespace {

struct BlockStage {
    std::vector<Renumbered> shrunk;
    std::vector<int> letters;
    std::vector<std::string> alphabet;
    std::vector<int> w_blocks;
    std::vector<int> offsets;
};

BlockStage shrink_blocks(const std::vector<Structure>& parts, const std::vector<Element>& w, int m,
                         int k, const LeafShrinker& shrinker, EquivSession& sess) {
    if (k >= 0 && static_cast<int>(w.size()) > k) throw InvalidArgument("need |W| <= k");
    BlockStage st;
    const auto block = block_index(parts);
    int next = 0;
    for (const auto& p : parts) {
        st.offsets.push_back(next);
        next += p.size();
    }
    std::vector<std::vector<Element>> share(parts.size());
    for (Element x : w) {
        if (x < 0 || x >= next) throw InvalidArgument("W element out of range");
        share[block[x]].push_back(x - st.offsets[block[x]]);
    }
    std::vector<MarkedItem> items;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        st.shrunk.push_back(shrinker(parts[i], share[i], m));
        items.push_back({st.shrunk.back().structure, {}});
        if (!share[i].empty()) st.w_blocks.push_back(static_cast<int>(i));
    }
    auto classes = realized_classes(items, m, &sess);
    st.letters.assign(parts.size(), 0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        st.alphabet.push_back("d" + std::to_string(c));
        for (int i : classes[c]) st.letters[i] = static_cast<int>(c);
    }
    return st;
}

void finish_composite(CompositeShrink& out, const Structure& input, const BlockStage& st,
                      const std::vector<int>& kept, const std::vector<Element>& w, int m,
                      EquivSession& sess) {
    out.blocks = kept;
    for (int b : kept) {
        out.parts.push_back(st.shrunk[b].structure);
        for (Element e : st.shrunk[b].origin) out.origin.push_back(st.offsets[b] + e);
    }
    out.contains_w = contains_all(out.origin, w);
    out.is_substructure = is_embedding(out.output, input, out.origin);
    out.equivalent = sess.m_equivalent(out.output, input, m);
}

}  // namespace

CompositeShrink shrink_word_of_structures(const std::vector<Structure>& parts,
                                          const std::vector<Element>& w, int m, int k,
                                          const LeafShrinker& shrinker, EquivSession* session) {
    EquivSession local;
    EquivSession& sess = session ? *session : local;
    const Structure input = word_of_structures(parts);
    BlockStage st = shrink_blocks(parts, w, m, k, shrinker, sess);
    SubtreeResult word =
        shrink_word(SigmaTree::word(st.alphabet, st.letters), m, st.w_blocks, &sess);

    std::vector<Structure> kept_parts;
    for (int b : word.origin) kept_parts.push_back(st.shrunk[b].structure);
    CompositeShrink out{word_of_structures(kept_parts), {}, {}, {}, word.tree.parents(),
                        false, false, false};
    finish_composite(out, input, st, word.origin, w, m, sess);
    return out;
}

CompositeShrink shrink_tree_of_structures(const std::vector<int>& parent,
                                          const std::vector<Structure>& parts,
                                          const std::vector<Element>& w, int m, int k,
                                          const LeafShrinker& shrinker, EquivSession* session) {
    EquivSession local;
    EquivSession& sess = session ? *session : local;
    const Structure input = tree_of_structures(parent, parts);
    BlockStage st = shrink_blocks(parts, w, m, k, shrinker, sess);
    ShrinkOutcome shape =
        shrink_tree(SigmaTree(st.alphabet, parent, st.letters), st.w_blocks, m, k, &sess);
    const auto& kept = shape.result.origin;

    std::vector<Structure> kept_parts;
    for (int b : kept) kept_parts.push_back(st.shrunk[b].structure);
    CompositeShrink out{tree_of_structures(shape.result.tree.parents(), kept_parts),
                        {}, {}, {}, shape.result.tree.parents(), false, false, false};
    finish_composite(out, input, st, kept, w, m, sess);
    return out;
}

std::optional<std::pair<int, int>> wqo_scan_marked_words(const std::vector<MarkedWord>& seq) {
    std::vector<Structure> encoded;
    for (const auto& mw : seq) encoded.push_back(to_Sk_pred(word_of_structures(mw.parts), mw.marks));
    return first_embedding_pair(encoded);
}

}  // namespace fmtk
