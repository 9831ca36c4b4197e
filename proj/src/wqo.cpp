#include "fmtk/wqo.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "fmtk/embedding.hpp"
#include "fmtk/error.hpp"
#include "fmtk/generators.hpp"

namespace fmtk {

namespace {

bool dominated(const std::vector<long long>& a, const std::vector<long long>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

std::vector<int> distinct_sorted(const std::vector<int>& marks) {
    std::vector<int> d = marks;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

}  // namespace

std::optional<IndexPair> dickson_pair(const std::vector<std::vector<long long>>& tuples) {
    for (std::size_t j = 1; j < tuples.size(); ++j) {
        if (tuples[j].size() != tuples[0].size())
            throw InvalidArgument("dickson_pair: tuples of different dimension");
        for (std::size_t i = 0; i < j; ++i)
            if (dominated(tuples[i], tuples[j]))
                return IndexPair{static_cast<int>(i), static_cast<int>(j)};
    }
    return std::nullopt;
}

std::vector<int> mark_pattern(const MarkedOrder& o) {
    std::vector<int> d = distinct_sorted(o.marks);
    std::vector<int> p;
    p.reserve(o.marks.size());
    for (int x : o.marks)
        p.push_back(static_cast<int>(std::lower_bound(d.begin(), d.end(), x) - d.begin()));
    return p;
}

std::vector<long long> order_type_tuple(const MarkedOrder& o) {
    std::vector<int> d = distinct_sorted(o.marks);
    std::vector<long long> t;
    int prev = -1;
    for (int x : d) {
        t.push_back(x - prev - 1);
        prev = x;
    }
    t.push_back(o.size - prev - 1);
    return t;
}

Structure marked_order_structure(const MarkedOrder& o) {
    for (int x : o.marks)
        if (x < 0 || x >= o.size) throw InvalidArgument("mark outside the linear order");
    return to_Sk(make_linear_order(o.size), o.marks);
}

std::optional<IndexPair> linear_order_embedding_pair(const std::vector<MarkedOrder>& seq, int k) {
    for (const auto& o : seq)
        if (static_cast<int>(o.marks.size()) != k)
            throw InvalidArgument("every marked order needs exactly k marks");
    std::map<std::vector<int>, std::vector<int>> groups;
    std::vector<std::vector<long long>> types;
    std::vector<std::vector<int>> patterns;
    for (const auto& o : seq) {
        types.push_back(order_type_tuple(o));
        patterns.push_back(mark_pattern(o));
    }
    for (int j = 0; j < static_cast<int>(seq.size()); ++j) {
        auto& members = groups[patterns[j]];
        for (int i : members) {
            if (!dominated(types[i], types[j])) continue;
            if (!find_embedding(marked_order_structure(seq[i]), marked_order_structure(seq[j])))
                throw VerificationFailure("order-type pair (" + std::to_string(i) + ", " +
                                          std::to_string(j) + ") does not embed");
            return IndexPair{i, j};
        }
        members.push_back(j);
    }
    return std::nullopt;
}

std::optional<IndexPair> first_embedding_pair(const std::vector<Structure>& seq) {
    const int n = static_cast<int>(seq.size());
    for (int j = 1; j < n; ++j) {
        std::vector<char> hit(j, 0);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < j; ++i) hit[i] = find_embedding(seq[i], seq[j]).has_value();
        for (int i = 0; i < j; ++i)
            if (hit[i]) return IndexPair{i, j};
    }
    return std::nullopt;
}

Structure to_Sk(const Structure& a, const std::vector<Element>& marks) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < marks.size(); ++i) {
        if (marks[i] < 0 || marks[i] >= a.size()) throw InvalidArgument("mark out of range");
        names.push_back("c" + std::to_string(a.vocab().constant_count() + i + 1));
    }
    std::vector<std::vector<Tuple>> rels;
    for (int p = 0; p < a.vocab().predicate_count(); ++p) rels.push_back(a.tuples(p));
    std::vector<Element> consts = a.constants();
    consts.insert(consts.end(), marks.begin(), marks.end());
    return Structure(a.vocab().with_constants(names), a.size(), std::move(rels), std::move(consts));
}

Structure to_Sk_pred(const Structure& a, const std::vector<Element>& marks) {
    std::vector<std::vector<Tuple>> rels;
    for (int p = 0; p < a.vocab().predicate_count(); ++p) rels.push_back(a.tuples(p));
    std::vector<Tuple> r;
    for (Element x : marks) {
        if (x < 0 || x >= a.size()) throw InvalidArgument("mark out of range");
        r.push_back({x});
    }
    rels.push_back(std::move(r));
    return Structure(a.vocab().with_predicate(kMarkPredicate, 1), a.size(), std::move(rels),
                     a.constants());
}

Structure forget_mark_order(const Structure& a_k) {
    std::vector<std::vector<Tuple>> rels;
    const Vocabulary& v = a_k.vocab();
    for (int p = 0; p < v.predicate_count(); ++p) rels.push_back(a_k.tuples(p));
    std::vector<Tuple> r;
    for (Element x : a_k.constants()) r.push_back({x});
    rels.push_back(std::move(r));
    Vocabulary plain(v.predicates());
    return Structure(plain.with_predicate(kMarkPredicate, 1), a_k.size(), std::move(rels));
}

AntichainCertificate antichain_certificate(const std::vector<Structure>& items) {
    const int n = static_cast<int>(items.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && find_embedding(items[i], items[j]))
                return AntichainCertificate{false, IndexPair{i, j}};
    return AntichainCertificate{};
}

std::vector<GraphComponent> path_cycle_components(const Structure& g) {
    auto e = g.vocab().find_predicate("E");
    if (!e || g.vocab().arity(*e) != 2) throw InvalidArgument("graph needs a binary predicate E");
    const int n = g.size();
    std::vector<std::vector<int>> adj(n);
    for (const auto& t : g.tuples(*e)) {
        if (t[0] == t[1]) throw InvalidArgument("graph has a loop");
        if (!g.holds(*e, {t[1], t[0]})) throw InvalidArgument("E is not symmetric");
        adj[t[0]].push_back(t[1]);
    }
    for (const auto& a : adj)
        if (a.size() > 2) throw InvalidArgument("vertex of degree above 2");

    std::vector<char> seen(n, 0);
    std::vector<GraphComponent> out;
    auto walk = [&](int start) {
        GraphComponent c;
        int prev = -1, cur = start;
        while (cur != -1 && !seen[cur]) {
            seen[cur] = 1;
            c.order.push_back(cur);
            int next = -1;
            for (int y : adj[cur])
                if (y != prev && !seen[y]) {
                    next = y;
                    break;
                }
            prev = cur;
            cur = next;
        }
        return c;
    };
    for (int v = 0; v < n; ++v)
        if (!seen[v] && adj[v].size() <= 1) out.push_back(walk(v));
    for (int v = 0; v < n; ++v)
        if (!seen[v]) {
            GraphComponent c = walk(v);
            c.cycle = true;
            out.push_back(std::move(c));
        }
    std::sort(out.begin(), out.end(), [](const GraphComponent& a, const GraphComponent& b) {
        return *std::min_element(a.order.begin(), a.order.end()) <
               *std::min_element(b.order.begin(), b.order.end());
    });
    return out;
}

namespace {

long long pow3_capped(int e) { return e > 38 ? (1LL << 62) : pow3(e); }

void check_marks(const Structure& s, const std::vector<Element>& w, int k) {
    if (k < 0 || static_cast<int>(w.size()) > k) throw InvalidArgument("need |W| <= k");
    for (Element x : w)
        if (x < 0 || x >= s.size()) throw InvalidArgument("W element out of range");
}

Renumbered compose(const Renumbered& inner, const std::vector<Element>& outer_origin) {
    std::vector<Element> origin;
    for (Element x : inner.origin) origin.push_back(outer_origin[x]);
    return Renumbered{inner.structure, std::move(origin)};
}

/// Kept vertices along a path given as a vertex order.
std::vector<Element> path_kept(const std::vector<Element>& order, const std::vector<char>& in_w,
                               int m, int k) {
    std::vector<int> pos;
    for (int i = 0; i < static_cast<int>(order.size()); ++i)
        if (in_w[order[i]]) pos.push_back(i);
    std::vector<Element> kept;
    if (pos.empty()) {
        long long len = std::min<long long>(static_cast<long long>(order.size()) - 1,
                                            pow3_capped(m + k + 2));
        kept.assign(order.begin(), order.begin() + len + 1);
        return kept;
    }
    const long long gap = pow3_capped(m + 1);
    std::size_t g = 0;
    while (g < pos.size()) {
        std::size_t h = g;
        while (h + 1 < pos.size() && pos[h + 1] - pos[h] <= gap) ++h;
        for (int i = pos[g]; i <= pos[h]; ++i) kept.push_back(order[i]);
        g = h + 1;
    }
    return kept;
}

}  // namespace

Renumbered shrink_path_with_w(const Structure& p, const std::vector<Element>& w, int m, int k) {
    check_marks(p, w, k);
    auto comps = path_cycle_components(p);
    if (comps.size() != 1 || comps[0].cycle) throw InvalidArgument("input is not a path");
    std::vector<char> in_w(p.size(), 0);
    for (Element x : w) in_w[x] = 1;
    auto kept = path_kept(comps[0].order, in_w, m, k);
    return induced_substructure(p, kept);
}

Renumbered shrink_cycle_with_w(const Structure& c, const std::vector<Element>& w, int m, int k) {
    check_marks(c, w, k);
    if (k >= c.size()) throw InvalidArgument("need k < |C|");
    auto comps = path_cycle_components(c);
    if (comps.size() != 1 || !comps[0].cycle) throw InvalidArgument("input is not a cycle");
    std::vector<char> in_w(c.size(), 0);
    for (Element x : w) in_w[x] = 1;
    int drop = 0;
    while (in_w[drop]) ++drop;
    std::vector<Element> rest;
    for (int v = 0; v < c.size(); ++v)
        if (v != drop) rest.push_back(v);
    Renumbered path = induced_substructure(c, rest);
    std::vector<Element> local_w;
    for (Element x : w) local_w.push_back(x < drop ? x : x - 1);
    return compose(shrink_path_with_w(path.structure, local_w, m, k), path.origin);
}

std::optional<HnGnShape> recognize_HnGn(const Structure& a) {
    std::vector<GraphComponent> comps;
    try {
        comps = path_cycle_components(a);
    } catch (const InvalidArgument&) {
        return std::nullopt;
    }
    std::map<long long, int> by_length;
    int cycles = 0;
    long long cycle_size = 0;
    for (const auto& c : comps) {
        if (c.cycle) {
            ++cycles;
            cycle_size = static_cast<long long>(c.order.size());
        } else {
            ++by_length[static_cast<long long>(c.order.size()) - 1];
        }
    }
    const int n = by_length.count(0) ? by_length[0] : 0;
    if (n < 1 || n > 38 || cycles > 1) return std::nullopt;
    if (static_cast<long long>(by_length.size()) != pow3(n) + 1 || by_length.rbegin()->first != pow3(n))
        return std::nullopt;
    for (const auto& [len, count] : by_length)
        if (count != n) return std::nullopt;
    if (cycles == 1 && cycle_size != pow3(n)) return std::nullopt;
    return HnGnShape{n, cycles == 1};
}

Renumbered witness_HnGn(const Structure& a, const std::vector<Element>& w, int m, int k) {
    check_marks(a, w, k);
    auto shape = recognize_HnGn(a);
    if (!shape) throw InvalidArgument("structure is not an H_n or G_n");
    const int n = shape->n;
    auto comps = path_cycle_components(a);
    std::map<long long, std::vector<int>> by_length;
    int cycle = -1;
    for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
        if (comps[i].cycle)
            cycle = i;
        else
            by_length[static_cast<long long>(comps[i].order.size()) - 1].push_back(i);
    }

    std::vector<Element> all(a.size());
    for (int i = 0; i < a.size(); ++i) all[i] = i;
    const Renumbered unchanged = induced_substructure(a, all);
    const int l = m + k + 2;
    if ((cycle == -1 && n <= l) || (cycle != -1 && n < m)) return unchanged;
    const int t = std::min(n, l);
    const long long limit = pow3(t);

    std::vector<char> in_w(a.size(), 0);
    for (Element x : w) in_w[x] = 1;
    auto has_w = [&](const GraphComponent& c) {
        return std::any_of(c.order.begin(), c.order.end(), [&](Element x) { return in_w[x]; });
    };

    // Pieces that must appear: W-paths short enough to keep whole, and the cut-down
    // segments of the cycle and of long W-paths.
    std::map<long long, int> forced;
    std::vector<Element> kept;
    auto add_pieces = [&](const std::vector<Element>& piece_nodes) {
        Renumbered sub = induced_substructure(a, piece_nodes);
        for (const auto& pc : path_cycle_components(sub.structure))
            ++forced[static_cast<long long>(pc.order.size()) - 1];
        kept.insert(kept.end(), piece_nodes.begin(), piece_nodes.end());
    };
    for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
        const auto& c = comps[i];
        if (!has_w(c)) continue;
        if (c.cycle) {
            Renumbered local = induced_substructure(a, c.order);
            std::vector<Element> lw;
            for (int j = 0; j < static_cast<int>(local.origin.size()); ++j)
                if (in_w[local.origin[j]]) lw.push_back(j);
            Renumbered cut = compose(shrink_cycle_with_w(local.structure, lw, m, k), local.origin);
            add_pieces(cut.origin);
        } else if (static_cast<long long>(c.order.size()) - 1 <= limit) {
            ++forced[static_cast<long long>(c.order.size()) - 1];
            kept.insert(kept.end(), c.order.begin(), c.order.end());
        } else {
            add_pieces(path_kept(c.order, in_w, m, k));
        }
    }
    for (const auto& [len, count] : forced)
        if (len > limit || count > t) return unchanged;
    for (long long len = 0; len <= limit; ++len) {
        int need = t - forced[len];
        for (int id : by_length[len]) {
            if (need == 0) break;
            if (has_w(comps[id])) continue;
            kept.insert(kept.end(), comps[id].order.begin(), comps[id].order.end());
            --need;
        }
        if (need > 0) return unchanged;
    }
    return induced_substructure(a, kept);
}

}  // namespace fmtk
