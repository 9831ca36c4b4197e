#include "fmtk/embedding.hpp"

#include <algorithm>
#include <cstdlib>

#include "fmtk/error.hpp"

namespace fmtk {

namespace {

// Atomic facts an element satisfies on its own: every predicate on the constant tuple
// (e, e, ..., e), plus which constants denote it.
std::vector<char> self_type(const Structure& s, Element e) {
    std::vector<char> out;
    const auto& v = s.vocab();
    for (int p = 0; p < v.predicate_count(); ++p) {
        Tuple t(v.arity(p), e);
        out.push_back(s.holds(p, t) ? 1 : 0);
    }
    for (Element c : s.constants()) out.push_back(c == e ? 1 : 0);
    return out;
}

std::vector<int> degrees(const Structure& s) {
    std::vector<int> deg(s.size(), 0);
    for (int p = 0; p < s.vocab().predicate_count(); ++p)
        for (const auto& t : s.tuples(p))
            for (Element e : t) ++deg[e];
    return deg;
}

class Search {
public:
    Search(const Structure& a, const Structure& b) : a_(a), b_(b) {
        map_.assign(a.size(), -1);
        used_.assign(b.size(), 0);
        auto da = degrees(a), db = degrees(b);
        std::vector<std::vector<char>> ta(a.size()), tb(b.size());
        for (Element x = 0; x < a.size(); ++x) ta[x] = self_type(a, x);
        for (Element y = 0; y < b.size(); ++y) tb[y] = self_type(b, y);

        order_ = variable_order(da);
        candidates_.resize(a.size());
        for (Element x = 0; x < a.size(); ++x) {
            for (Element y = 0; y < b.size(); ++y)
                if (ta[x] == tb[y]) candidates_[x].push_back(y);
            std::stable_sort(candidates_[x].begin(), candidates_[x].end(), [&](Element l, Element r) {
                return std::abs(db[l] - da[x]) < std::abs(db[r] - da[x]);
            });
        }
    }

    std::optional<ElementMap> run() {
        if (a_.size() > b_.size()) return std::nullopt;
        // Constants are forced.
        for (int c = 0; c < a_.vocab().constant_count(); ++c) {
            Element x = a_.constant(c), y = b_.constant(c);
            if (map_[x] == -1) {
                if (used_[y]) return std::nullopt;
                map_[x] = y;
                used_[y] = 1;
            } else if (map_[x] != y) {
                return std::nullopt;
            }
        }
        assigned_.clear();
        for (Element x = 0; x < a_.size(); ++x)
            if (map_[x] != -1) {
                assigned_.push_back(x);
                if (!consistent(x)) return std::nullopt;
            }
        if (extend(0)) return map_;
        return std::nullopt;
    }

private:
    // Constants first, then repeatedly the element most connected to those already chosen.
    std::vector<Element> variable_order(const std::vector<int>& deg) const {
        int n = a_.size();
        std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
        for (int p = 0; p < a_.vocab().predicate_count(); ++p)
            for (const auto& t : a_.tuples(p))
                for (Element u : t)
                    for (Element w : t)
                        if (u != w) adj[u][w] = 1;
        std::vector<char> placed(n, 0);
        std::vector<int> links(n, 0);
        std::vector<Element> order;
        for (Element c : a_.constants()) placed[c] = 1;
        for (Element x = 0; x < n; ++x)
            if (placed[x])
                for (Element y = 0; y < n; ++y) links[y] += adj[x][y];
        auto free_count = std::count(placed.begin(), placed.end(), 0);
        for (long step = 0; step < free_count; ++step) {
            Element best = -1;
            for (Element x = 0; x < n; ++x) {
                if (placed[x]) continue;
                if (best == -1 || links[x] > links[best] ||
                    (links[x] == links[best] && deg[x] > deg[best]))
                    best = x;
            }
            placed[best] = 2;
            order.push_back(best);
            for (Element y = 0; y < n; ++y) links[y] += adj[best][y];
        }
        return order;
    }

    bool extend(std::size_t depth) {
        if (depth == order_.size()) return true;
        Element x = order_[depth];
        for (Element y : candidates_[x]) {
            if (used_[y]) continue;
            map_[x] = y;
            used_[y] = 1;
            assigned_.push_back(x);
            if (consistent(x) && extend(depth + 1)) return true;
            assigned_.pop_back();
            used_[y] = 0;
            map_[x] = -1;
        }
        return false;
    }

    // Compares every tuple over the assigned elements that mentions x.
    bool consistent(Element x) {
        const auto& v = a_.vocab();
        for (int p = 0; p < v.predicate_count(); ++p) {
            int r = v.arity(p);
            Tuple ta(r), tb(r);
            for (int first = 0; first < r; ++first)
                if (!check_tuples(p, r, first, 0, x, ta, tb)) return false;
        }
        return true;
    }

    // Positions before `first` avoid x, position `first` is x, later positions are free.
    bool check_tuples(int p, int r, int first, int pos, Element x, Tuple& ta, Tuple& tb) {
        if (pos == r) return a_.holds(p, ta) == b_.holds(p, tb);
        if (pos == first) {
            ta[pos] = x;
            tb[pos] = map_[x];
            return check_tuples(p, r, first, pos + 1, x, ta, tb);
        }
        for (Element e : assigned_) {
            if (pos < first && e == x) continue;
            ta[pos] = e;
            tb[pos] = map_[e];
            if (!check_tuples(p, r, first, pos + 1, x, ta, tb)) return false;
        }
        return true;
    }

    const Structure& a_;
    const Structure& b_;
    ElementMap map_;
    std::vector<char> used_;
    std::vector<Element> order_;
    std::vector<Element> assigned_;
    std::vector<std::vector<Element>> candidates_;
};

}  // namespace

std::optional<ElementMap> find_embedding(const Structure& a, const Structure& b) {
    if (!(a.vocab() == b.vocab())) throw InvalidArgument("embedding across different vocabularies");
    return Search(a, b).run();
}

bool is_embedding(const Structure& a, const Structure& b, const ElementMap& map) {
    if (!(a.vocab() == b.vocab())) return false;
    if (static_cast<int>(map.size()) != a.size()) return false;
    std::vector<char> hit(b.size(), 0);
    for (Element y : map) {
        if (y < 0 || y >= b.size() || hit[y]) return false;
        hit[y] = 1;
    }
    for (int c = 0; c < a.vocab().constant_count(); ++c)
        if (map[a.constant(c)] != b.constant(c)) return false;
    const auto& v = a.vocab();
    for (int p = 0; p < v.predicate_count(); ++p) {
        int r = v.arity(p);
        Tuple ta(r, 0), tb(r);
        while (true) {
            for (int i = 0; i < r; ++i) tb[i] = map[ta[i]];
            if (a.holds(p, ta) != b.holds(p, tb)) return false;
            int i = r - 1;
            while (i >= 0 && ++ta[i] == a.size()) ta[i--] = 0;
            if (i < 0) break;
        }
    }
    return true;
}

bool is_isomorphic(const Structure& a, const Structure& b) {
    if (!(a.vocab() == b.vocab()) || a.size() != b.size()) return false;
    for (int p = 0; p < a.vocab().predicate_count(); ++p)
        if (a.tuples(p).size() != b.tuples(p).size()) return false;
    return find_embedding(a, b).has_value();
}

}  // namespace fmtk
