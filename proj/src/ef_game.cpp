// Brute-force Ehrenfeucht-Fraisse game. Deliberately independent of the rank-type code.

#include "fmtk/equiv.hpp"
#include "fmtk/error.hpp"

namespace fmtk {

namespace {

class Game {
public:
    Game(const Structure& a, const Structure& b) : a_(a), b_(b) {}

    bool duplicator_wins(Tuple& pa, Tuple& pb, int rounds) {
        if (!partial_iso(pa, pb)) return false;
        if (rounds == 0) return true;
        for (int side = 0; side < 2; ++side) {
            const Structure& spoiler_in = side == 0 ? a_ : b_;
            const Structure& reply_in = side == 0 ? b_ : a_;
            Tuple& ps = side == 0 ? pa : pb;
            Tuple& pr = side == 0 ? pb : pa;
            for (Element x = 0; x < spoiler_in.size(); ++x) {
                ps.push_back(x);
                bool answered = false;
                for (Element y = 0; y < reply_in.size() && !answered; ++y) {
                    pr.push_back(y);
                    answered = duplicator_wins(pa, pb, rounds - 1);
                    pr.pop_back();
                }
                ps.pop_back();
                if (!answered) return false;
            }
        }
        return true;
    }

private:
    // The map pa[i] -> pb[i], extended by the constants, is a partial isomorphism.
    bool partial_iso(const Tuple& pa, const Tuple& pb) const {
        Tuple ea = pa, eb = pb;
        for (Element c : a_.constants()) ea.push_back(c);
        for (Element c : b_.constants()) eb.push_back(c);
        const std::size_t n = ea.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if ((ea[i] == ea[j]) != (eb[i] == eb[j])) return false;
        const auto& v = a_.vocab();
        for (int p = 0; p < v.predicate_count(); ++p) {
            int r = v.arity(p);
            if (n == 0) break;
            std::vector<std::size_t> idx(r, 0);
            Tuple ta(r), tb(r);
            while (true) {
                for (int i = 0; i < r; ++i) {
                    ta[i] = ea[idx[i]];
                    tb[i] = eb[idx[i]];
                }
                if (a_.holds(p, ta) != b_.holds(p, tb)) return false;
                int i = r - 1;
                while (i >= 0 && ++idx[i] == n) idx[i--] = 0;
                if (i < 0) break;
            }
        }
        return true;
    }

    const Structure& a_;
    const Structure& b_;
};

}  // namespace

bool ef_game_equivalent(const Structure& a, const Structure& b, int m) {
    return ef_game_equivalent(a, {}, b, {}, m);
}

bool ef_game_equivalent(const Structure& a, const Tuple& ta, const Structure& b, const Tuple& tb,
                        int m) {
    if (!(a.vocab() == b.vocab())) throw InvalidArgument("game across vocabularies");
    if (ta.size() != tb.size()) return false;
    Tuple pa = ta, pb = tb;
    return Game(a, b).duplicator_wins(pa, pb, m);
}

}  // namespace fmtk
