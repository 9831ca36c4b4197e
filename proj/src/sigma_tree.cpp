#include "fmtk/sigma_tree.hpp"

#include <algorithm>

#include "fmtk/error.hpp"
#include "fmtk/operations.hpp"

namespace fmtk {

SigmaTree::SigmaTree(std::vector<std::string> alphabet, std::vector<int> parent,
                     std::vector<int> label)
    : alphabet_(std::move(alphabet)), parent_(std::move(parent)), label_(std::move(label)) {
    const int n = size();
    if (n == 0) throw InvalidArgument("trees must be nonempty");
    if (alphabet_.empty()) throw InvalidArgument("empty alphabet");
    if (static_cast<int>(label_.size()) != n) throw InvalidArgument("one label per node required");
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        for (std::size_t j = i + 1; j < alphabet_.size(); ++j)
            if (alphabet_[i] == alphabet_[j]) throw InvalidArgument("duplicate letter " + alphabet_[i]);
    children_.assign(n, {});
    int roots = 0;
    for (int v = 0; v < n; ++v) {
        if (label_[v] < 0 || label_[v] >= static_cast<int>(alphabet_.size()))
            throw InvalidArgument("label out of range");
        if (parent_[v] == -1) {
            ++roots;
            root_ = v;
        } else if (parent_[v] < 0 || parent_[v] >= n || parent_[v] == v) {
            throw InvalidArgument("parent out of range");
        } else {
            children_[parent_[v]].push_back(v);
        }
    }
    if (roots != 1) throw InvalidArgument("a tree needs exactly one root");
    depth_.assign(n, -1);
    depth_[root_] = 0;
    std::vector<int> stack{root_};
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int c : children_[v]) {
            depth_[c] = depth_[v] + 1;
            stack.push_back(c);
        }
    }
    if (seen != n) throw InvalidArgument("parent map contains a cycle");
}

SigmaTree SigmaTree::word(std::vector<std::string> alphabet, std::vector<int> labels) {
    std::vector<int> parent(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) parent[i] = static_cast<int>(i) - 1;
    return SigmaTree(std::move(alphabet), std::move(parent), std::move(labels));
}

int SigmaTree::height() const { return *std::max_element(depth_.begin(), depth_.end()); }

bool SigmaTree::is_ancestor(int a, int b) const {
    while (depth_[b] > depth_[a]) b = parent_[b];
    return a == b;
}

bool SigmaTree::is_chain() const {
    for (const auto& c : children_)
        if (c.size() > 1) return false;
    return true;
}

std::vector<int> SigmaTree::subtree_nodes(int v) const {
    std::vector<int> out;
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        out.push_back(x);
        for (auto it = children_[x].rbegin(); it != children_[x].rend(); ++it) stack.push_back(*it);
    }
    return out;
}

int SigmaTree::distance(int a, int b) const {
    int d = 0;
    while (a != b) {
        if (depth_[a] >= depth_[b]) a = parent_[a];
        else b = parent_[b];
        ++d;
    }
    return d;
}

std::vector<int> SigmaTree::path_from_root(int v) const {
    std::vector<int> path;
    for (int x = v; x != -1; x = parent_[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

SubtreeResult induced_subtree(const SigmaTree& s, std::vector<int> kept) {
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) throw InvalidArgument("subtree of an empty node set");
    std::vector<int> index(s.size(), -1);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (kept[i] < 0 || kept[i] >= s.size()) throw InvalidArgument("node out of range");
        index[kept[i]] = static_cast<int>(i);
    }
    std::vector<int> parent(kept.size(), -1), label(kept.size());
    int roots = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        int p = s.parent(kept[i]);
        while (p != -1 && index[p] < 0) p = s.parent(p);
        parent[i] = p == -1 ? -1 : index[p];
        if (parent[i] == -1) ++roots;
        label[i] = s.label(kept[i]);
    }
    if (roots != 1) throw InvalidArgument("kept nodes do not have a unique minimum");
    return {SigmaTree(s.alphabet(), std::move(parent), std::move(label)), std::move(kept)};
}

std::string letter_predicate(const std::string& letter) { return "Q_" + letter; }

Structure to_structure(const SigmaTree& t) {
    std::vector<PredicateSymbol> preds{{kBlockOrder, 2}};
    for (const auto& a : t.alphabet()) preds.push_back({letter_predicate(a), 1});
    Vocabulary vocab(std::move(preds));
    std::vector<std::vector<Tuple>> rels(vocab.predicate_count());
    for (int v = 0; v < t.size(); ++v) {
        for (int a = v; a != -1; a = t.parent(a)) rels[0].push_back({a, v});
        rels[1 + t.label(v)].push_back({v});
    }
    return Structure(std::move(vocab), t.size(), std::move(rels));
}

SigmaTree from_structure(const Structure& s) {
    const auto& v = s.vocab();
    auto le = v.find_predicate(kBlockOrder);
    if (!le || v.arity(*le) != 2) throw InvalidArgument("tree structure needs le/2");
    std::vector<std::string> alphabet;
    std::vector<int> pred_of_letter;
    for (int p = 0; p < v.predicate_count(); ++p) {
        const auto& name = v.predicates()[p].name;
        if (p == *le) continue;
        if (name.rfind("Q_", 0) != 0 || v.arity(p) != 1)
            throw InvalidArgument("unexpected predicate " + name + " in tree structure");
        alphabet.push_back(name.substr(2));
        pred_of_letter.push_back(p);
    }
    const int n = s.size();
    std::vector<int> label(n, -1);
    for (std::size_t a = 0; a < pred_of_letter.size(); ++a)
        for (const auto& t : s.tuples(pred_of_letter[a])) {
            if (label[t[0]] != -1) throw InvalidArgument("node carries two letters");
            label[t[0]] = static_cast<int>(a);
        }
    std::vector<int> ancestors(n, 0);
    for (const auto& t : s.tuples(*le)) ++ancestors[t[1]];
    std::vector<int> parent(n, -1);
    for (int x = 0; x < n; ++x) {
        if (label[x] == -1) throw InvalidArgument("node without a letter");
        if (!s.holds(*le, {x, x})) throw InvalidArgument("le must be reflexive");
    }
    for (const auto& t : s.tuples(*le)) {
        int a = t[0], b = t[1];
        if (a == b) continue;
        if (ancestors[a] == ancestors[b] - 1) parent[b] = a;
    }
    SigmaTree tree(std::move(alphabet), std::move(parent), std::move(label));
    // Reject orders that are not tree orders.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (s.holds(*le, {a, b}) != tree.is_ancestor(a, b))
                throw InvalidArgument("le is not a tree order");
    return tree;
}

SigmaTree join_at(const SigmaTree& s, int e, const SigmaTree& t) {
    if (e < 0 || e >= s.size()) throw InvalidArgument("join point out of range");
    if (s.alphabet() != t.alphabet()) throw InvalidArgument("join of trees over different alphabets");
    std::vector<int> parent = s.parents();
    std::vector<int> label = s.labels();
    for (int v = 0; v < t.size(); ++v) {
        parent.push_back(t.parent(v) == -1 ? e : t.parent(v) + s.size());
        label.push_back(t.label(v));
    }
    return SigmaTree(s.alphabet(), std::move(parent), std::move(label));
}

SigmaTree join_at(const SigmaTree& s, int e, const std::vector<SigmaTree>& forest) {
    SigmaTree out = s;
    for (const auto& t : forest) out = join_at(out, e, t);
    return out;
}

}  // namespace fmtk
