#include "fmtk/shrink.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "fmtk/embedding.hpp"
#include "fmtk/error.hpp"

namespace fmtk {

namespace {

SubtreeResult identity(const SigmaTree& s) {
    std::vector<int> origin(s.size());
    std::iota(origin.begin(), origin.end(), 0);
    return {s, std::move(origin)};
}

std::vector<int> validated_marks(const SigmaTree& s, const std::vector<int>& w, int k) {
    std::vector<int> out = w;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (int v : out)
        if (v < 0 || v >= s.size()) throw InvalidArgument("marked node out of range");
    if (k >= 0 && static_cast<int>(out.size()) > k)
        throw InvalidArgument("more than k marked nodes");
    return out;
}

// Positions in `r.tree` of the source nodes `nodes` (all must survive).
std::vector<int> pull_back(const SubtreeResult& r, const std::vector<int>& nodes) {
    std::map<int, int> where;
    for (std::size_t i = 0; i < r.origin.size(); ++i) where[r.origin[i]] = static_cast<int>(i);
    std::vector<int> out;
    for (int v : nodes) {
        auto it = where.find(v);
        if (it == where.end()) throw VerificationFailure("a marked node was removed");
        out.push_back(it->second);
    }
    return out;
}

// Rank-m type id of the subtree rooted at v, optionally with v distinguished.
int subtree_class(const SigmaTree& s, int v, int m, EquivSession& session, bool mark_root = false) {
    auto sub = induced_subtree(s, s.subtree_nodes(v));
    Structure st = to_structure(sub.tree);
    Tuple t;
    if (mark_root) t.push_back(sub.tree.root());
    return session.rank_type(st, t, m).id();
}

// Marks every node whose subtree contains a node of `w`.
std::vector<char> covering(const SigmaTree& s, const std::vector<int>& w) {
    std::vector<char> cover(s.size(), 0);
    for (int x : w)
        for (int v = x; v != -1 && !cover[v]; v = s.parent(v)) cover[v] = 1;
    return cover;
}

std::vector<int> complement_nodes(int n, const std::vector<char>& removed) {
    std::vector<int> kept;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) kept.push_back(v);
    return kept;
}

}  // namespace

SubtreeResult compose(const SubtreeResult& outer, const SubtreeResult& inner) {
    std::vector<int> origin(inner.origin.size());
    for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = outer.origin.at(inner.origin[i]);
    return {inner.tree, std::move(origin)};
}

SubtreeResult reduce_degree(const SigmaTree& s, const std::vector<int>& w, int m, int k,
                            EquivSession* session) {
    EquivSession local;
    EquivSession& es = session ? *session : local;
    auto marks = validated_marks(s, w, k);
    const int n = s.size();
    auto cover = covering(s, marks);
    std::vector<int> size(n, 1);
    for (int v = 0; v < n; ++v)
        for (int a = s.parent(v); a != -1; a = s.parent(a)) ++size[a];

    std::vector<char> removed(n, 0);
    const std::size_t quota = static_cast<std::size_t>(m + k);
    for (int a = 0; a < n; ++a) {
        if (s.children(a).size() <= quota) continue;
        std::map<int, std::vector<int>> by_class;
        for (int c : s.children(a)) by_class[subtree_class(s, c, m, es)].push_back(c);
        for (auto& [cls, group] : by_class) {
            if (group.size() <= quota) continue;
            std::sort(group.begin(), group.end(), [&](int x, int y) {
                if (cover[x] != cover[y]) return cover[x] > cover[y];
                if (size[x] != size[y]) return size[x] < size[y];
                return x < y;
            });
            for (std::size_t i = quota; i < group.size(); ++i)
                for (int v : s.subtree_nodes(group[i])) removed[v] = 1;
        }
    }
    return induced_subtree(s, complement_nodes(n, removed));
}

SubtreeResult reduce_height_no_w(const SigmaTree& s, int m, const std::vector<int>& keep,
                                 EquivSession* session) {
    EquivSession local;
    EquivSession& es = session ? *session : local;
    const int n = s.size();
    auto protect = validated_marks(s, keep, -1);
    std::vector<int> inside(n, 0);
    for (int x : protect)
        for (int v = x; v != -1; v = s.parent(v)) ++inside[v];
    std::vector<std::pair<int, int>> g(n);
    for (int v = 0; v < n; ++v) g[v] = {subtree_class(s, v, m, es), inside[v]};

    // Splicing keeps every surviving node's subtree class, so g is computed once.
    std::vector<int> par = s.parents();
    std::vector<char> alive(n, 1);
    int root = s.root();
    while (true) {
        std::vector<std::vector<int>> kids(n);
        for (int v = 0; v < n; ++v)
            if (alive[v] && par[v] != -1) kids[par[v]].push_back(v);
        std::vector<int> depth(n, -1), order;
        std::vector<int> stack{root};
        depth[root] = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int c : kids[v]) {
                depth[c] = depth[v] + 1;
                stack.push_back(c);
            }
        }
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            if (depth[x] != depth[y]) return depth[x] > depth[y];
            return x < y;
        });
        int found_a = -1, found_b = -1;
        for (int b : order) {
            std::vector<int> path;
            for (int v = par[b]; v != -1; v = par[v]) path.push_back(v);
            for (auto it = path.rbegin(); it != path.rend(); ++it)
                if (g[*it] == g[b]) {
                    found_a = *it;
                    break;
                }
            if (found_a != -1) {
                found_b = b;
                break;
            }
        }
        if (found_a == -1) break;
        // Remove s_{>=a} minus s_{>=b}.
        std::vector<int> stack2{found_a};
        while (!stack2.empty()) {
            int v = stack2.back();
            stack2.pop_back();
            if (v == found_b) continue;
            alive[v] = 0;
            for (int c : kids[v]) stack2.push_back(c);
        }
        par[found_b] = par[found_a];
        if (found_a == root) root = found_b;
    }
    std::vector<char> removed(n);
    for (int v = 0; v < n; ++v) removed[v] = !alive[v];
    return induced_subtree(s, complement_nodes(n, removed));
}

SubtreeResult shrink_word(const SigmaTree& w, int m, const std::vector<int>& keep,
                          EquivSession* session) {
    if (!w.is_chain()) throw InvalidArgument("shrink_word expects a word");
    EquivSession local;
    EquivSession& es = session ? *session : local;
    auto protect = validated_marks(w, keep, -1);
    std::vector<int> positions = w.path_from_root(w.subtree_nodes(w.root()).back());
    const int n = static_cast<int>(positions.size());
    std::vector<char> is_kept(w.size(), 0);
    for (int x : protect) is_kept[x] = 1;

    std::vector<std::pair<int, int>> g(n);
    int count = 0;
    for (int i = n - 1; i >= 0; --i) {
        count += is_kept[positions[i]];
        g[i] = {subtree_class(w, positions[i], m, es), count};
    }
    // g is invariant under splicing, so the loop works on the sequence of g-values.
    std::vector<int> seq(n);
    std::iota(seq.begin(), seq.end(), 0);
    while (true) {
        int cut_a = -1, cut_b = -1;
        for (int b = static_cast<int>(seq.size()) - 1; b > 0 && cut_a == -1; --b)
            for (int a = 0; a < b; ++a)
                if (g[seq[a]] == g[seq[b]]) {
                    cut_a = a;
                    cut_b = b;
                    break;
                }
        if (cut_a == -1) break;
        seq.erase(seq.begin() + cut_a, seq.begin() + cut_b);
    }
    std::vector<int> kept;
    for (int i : seq) kept.push_back(positions[i]);
    return induced_subtree(w, kept);
}

SubtreeResult reduce_root_distance(const SigmaTree& s, int b, int m, EquivSession* session) {
    if (b < 0 || b >= s.size()) throw InvalidArgument("node out of range");
    if (b == s.root()) return identity(s);
    EquivSession local;
    EquivSession& es = session ? *session : local;

    auto path = s.path_from_root(b);
    const int n = static_cast<int>(path.size()) - 1;
    std::vector<int> path_index(s.size(), -1);
    for (int i = 0; i <= n; ++i) path_index[path[i]] = i;
    std::vector<std::vector<int>> zone(n + 1);
    for (int v = 0; v < s.size(); ++v) {
        int x = v;
        while (path_index[x] < 0) x = s.parent(x);
        zone[path_index[x]].push_back(v);
    }

    // Letter i: marked class of (z_i, c_i) paired with the endpoint flag.
    std::map<std::pair<int, int>, int> letter_of;
    std::vector<int> labels(n + 1);
    for (int i = 0; i <= n; ++i) {
        auto z = induced_subtree(s, zone[i]);
        Structure st = to_structure(z.tree);
        int cls = es.rank_type(st, {z.tree.root()}, m).id();
        int flag = i == 0 ? 1 : (i == n ? 2 : 0);
        auto key = std::make_pair(cls, flag);
        auto it = letter_of.find(key);
        if (it == letter_of.end()) it = letter_of.emplace(key, static_cast<int>(letter_of.size())).first;
        labels[i] = it->second;
    }
    std::vector<std::string> alphabet;
    for (std::size_t i = 0; i < letter_of.size(); ++i) alphabet.push_back("L" + std::to_string(i));
    auto word = SigmaTree::word(std::move(alphabet), std::move(labels));
    auto sub = shrink_word(word, m, {0, n}, &es);

    std::vector<int> kept;
    for (int i : sub.origin) kept.insert(kept.end(), zone[i].begin(), zone[i].end());
    return induced_subtree(s, kept);
}

SubtreeResult reduce_w_distances(const SigmaTree& s, const std::vector<int>& w, int m, int k,
                                 EquivSession* session) {
    EquivSession local;
    EquivSession& es = session ? *session : local;
    auto marks = validated_marks(s, w, k);
    SubtreeResult current = identity(s);

    bool changed = true;
    while (changed) {
        changed = false;
        const SigmaTree& t = current.tree;
        auto wt = pull_back(current, marks);
        std::vector<char> in_w(t.size(), 0);
        for (int x : wt) in_w[x] = 1;
        Structure whole = to_structure(t);

        for (int b : wt) {
            int a = t.parent(b);
            while (a != -1 && !in_w[a]) a = t.parent(a);
            if (a == -1) continue;
            // Path a = c_0 < ... < c_n = b and the zone index of every node below a.
            auto full = t.path_from_root(b);
            std::vector<int> c(full.begin() + t.depth(a), full.end());
            const int n = static_cast<int>(c.size()) - 1;
            std::vector<int> path_index(t.size(), -1);
            for (int i = 0; i <= n; ++i) path_index[c[i]] = i;
            std::set<int> gaps{0, n};
            for (int x : wt) {
                if (!t.is_ancestor(a, x)) continue;
                int y = x;
                while (path_index[y] < 0) y = t.parent(y);
                gaps.insert(path_index[y]);
            }
            std::vector<int> idx(gaps.begin(), gaps.end());
            for (std::size_t g = 0; g + 1 < idx.size() && !changed; ++g) {
                int i0 = idx[g], j0 = idx[g + 1];
                if (j0 - i0 < 3) continue;
                int ci = c[i0 + 1], cj = c[j0 - 1], cjp = c[j0];
                std::vector<int> znodes;
                for (int v : t.subtree_nodes(ci))
                    if (!t.is_ancestor(cjp, v)) znodes.push_back(v);
                auto z = induced_subtree(t, znodes);
                int local_cj = pull_back(z, {cj}).front();
                auto y = reduce_root_distance(z.tree, local_cj, m, &es);
                if (y.tree.size() == z.tree.size()) continue;
                std::vector<char> removed(t.size(), 0);
                for (int v : znodes) removed[v] = 1;
                for (int v : y.origin) removed[z.origin[v]] = 0;
                auto candidate = induced_subtree(t, complement_nodes(t.size(), removed));
                if (!es.m_equivalent(to_structure(candidate.tree), whole, m)) continue;
                current = compose(current, candidate);
                changed = true;
            }
            if (changed) break;
        }
    }
    return current;
}

ShrinkReport verify_shrink(const SigmaTree& s, const SubtreeResult& result,
                           const std::vector<int>& w, int m, EquivSession* session) {
    EquivSession local;
    EquivSession& es = session ? *session : local;
    ShrinkReport r;
    r.input_size = s.size();
    r.output_size = result.tree.size();
    std::set<int> image(result.origin.begin(), result.origin.end());
    r.contains_w = std::all_of(w.begin(), w.end(), [&](int x) { return image.count(x) > 0; });
    Structure a = to_structure(result.tree);
    Structure b = to_structure(s);
    r.is_subtree = result.tree.alphabet() == s.alphabet() && is_embedding(a, b, result.origin);
    r.equivalent = es.m_equivalent(a, b, m);
    return r;
}

ShrinkOutcome shrink_tree(const SigmaTree& s, const std::vector<int>& w, int m, int k,
                          EquivSession* session) {
    EquivSession local;
    EquivSession& es = session ? *session : local;
    auto marks = validated_marks(s, w, k);
    std::vector<PhaseLog> phases;

    // Phase 1: distances between consecutive nodes of W plus the root.
    auto w1 = marks;
    if (std::find(w1.begin(), w1.end(), s.root()) == w1.end()) w1.push_back(s.root());
    auto r1 = reduce_w_distances(s, w1, m, k + 1, &es);
    phases.push_back({"w-distances", s.size(), r1.tree.size(), s.size() - r1.tree.size()});

    // Phase 2: height of the subtrees hanging off the root-to-W paths.
    const SigmaTree& t1 = r1.tree;
    auto w_t1 = pull_back(r1, marks);
    SubtreeResult r2 = identity(t1);
    if (w_t1.empty()) {
        r2 = reduce_height_no_w(t1, m, {}, &es);
    } else {
        auto spine = covering(t1, w_t1);
        std::vector<char> removed(t1.size(), 0);
        for (int v = 0; v < t1.size(); ++v) {
            if (spine[v] || !spine[t1.parent(v)]) continue;
            auto hang = induced_subtree(t1, t1.subtree_nodes(v));
            auto red = reduce_height_no_w(hang.tree, m, {}, &es);
            for (int x : hang.origin) removed[x] = 1;
            for (int x : red.origin) removed[hang.origin[x]] = 0;
        }
        r2 = induced_subtree(t1, complement_nodes(t1.size(), removed));
    }
    phases.push_back({"height", t1.size(), r2.tree.size(), t1.size() - r2.tree.size()});
    auto after2 = compose(r1, r2);

    // Phase 3: degree.
    auto w_t2 = pull_back(after2, marks);
    auto r3 = reduce_degree(after2.tree, w_t2, m, k, &es);
    phases.push_back({"degree", after2.tree.size(), r3.tree.size(), after2.tree.size() - r3.tree.size()});
    auto result = compose(after2, r3);

    ShrinkReport report = verify_shrink(s, result, marks, m, &es);
    report.phases = std::move(phases);
    return {std::move(result), std::move(report)};
}

}  // namespace fmtk
