#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

namespace oracle {

using fmtk::FormulaKind;
using fmtk::Term;

namespace {

/// Every tuple in 0..n-1 of length r.
std::vector<std::vector<int>> all_tuples(int n, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(r, 0);
    for (;;) {
        out.push_back(t);
        int i = r - 1;
        while (i >= 0 && ++t[i] == n) t[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

bool map_ok(const Structure& a, const Structure& b, const std::vector<int>& f) {
    for (int p = 0; p < a.vocab().predicate_count(); ++p)
        for (const auto& t : all_tuples(a.size(), a.vocab().arity(p))) {
            std::vector<int> img;
            for (int x : t) img.push_back(f[x]);
            if (a.holds(p, t) != b.holds(p, img)) return false;
        }
    for (int c = 0; c < a.vocab().constant_count(); ++c)
        if (f[a.constant(c)] != b.constant(c)) return false;
    return true;
}

}  // namespace

bool embeds(const Structure& a, const Structure& b) {
    if (a.size() > b.size()) return false;
    std::vector<int> f(a.size(), -1);
    std::vector<char> used(b.size(), 0);
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == a.size()) return map_ok(a, b, f);
        for (int y = 0; y < b.size(); ++y) {
            if (used[y]) continue;
            used[y] = 1;
            f[i] = y;
            if (self(self, i + 1)) return true;
            used[y] = 0;
        }
        return false;
    };
    return rec(rec, 0);
}

namespace {

int value(const Structure& a, const Term& t, const std::map<std::string, int>& env) {
    if (t.is_var()) return env.at(t.name);
    return a.constant(*a.vocab().find_constant(t.name));
}

}  // namespace

bool eval(const Structure& a, const Formula& f, std::map<std::string, int>& env) {
    switch (f.kind()) {
        case FormulaKind::True: return true;
        case FormulaKind::False: return false;
        case FormulaKind::Atom: {
            std::vector<int> args;
            for (const auto& t : f.terms()) args.push_back(value(a, t, env));
            return a.holds(*a.vocab().find_predicate(f.predicate()), args);
        }
        case FormulaKind::Equals:
            return value(a, f.terms()[0], env) == value(a, f.terms()[1], env);
        case FormulaKind::Not: return !eval(a, f.child(), env);
        case FormulaKind::And:
            for (const auto& c : f.children())
                if (!eval(a, c, env)) return false;
            return true;
        case FormulaKind::Or:
            for (const auto& c : f.children())
                if (eval(a, c, env)) return true;
            return false;
        case FormulaKind::Implies: return !eval(a, f.child(0), env) || eval(a, f.child(1), env);
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            const bool exists = f.kind() == FormulaKind::Exists;
            auto saved = env.find(f.variable()) != env.end()
                             ? std::optional<int>(env[f.variable()])
                             : std::nullopt;
            bool result = !exists;
            for (int x = 0; x < a.size(); ++x) {
                env[f.variable()] = x;
                if (eval(a, f.child(), env) == exists) {
                    result = exists;
                    break;
                }
            }
            if (saved)
                env[f.variable()] = *saved;
            else
                env.erase(f.variable());
            return result;
        }
    }
    return false;
}

std::vector<char> canonical_code(const Structure& a) {
    std::vector<int> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<char> best;
    do {
        std::vector<char> code;
        for (int p = 0; p < a.vocab().predicate_count(); ++p)
            for (const auto& t : all_tuples(a.size(), a.vocab().arity(p))) {
                std::vector<int> img;
                for (int x : t) img.push_back(perm[x]);
                code.push_back(a.holds(p, img) ? 1 : 0);
            }
        if (best.empty() || code < best) best = code;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<Structure> binary_iso_classes(int max_size) {
    fmtk::Vocabulary v({{"E", 2}});
    std::vector<Structure> out;
    for (int n = 1; n <= max_size; ++n) {
        std::set<std::vector<char>> seen;
        const int cells = n * n;
        for (long mask = 0; mask < (1L << cells); ++mask) {
            std::vector<std::vector<fmtk::Tuple>> rels(1);
            for (int c = 0; c < cells; ++c)
                if (mask >> c & 1) rels[0].push_back({c / n, c % n});
            Structure s(v, n, rels);
            if (seen.insert(canonical_code(s)).second) out.push_back(s);
        }
    }
    return out;
}

Structure random_structure(const fmtk::Vocabulary& v, int n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    std::vector<std::vector<fmtk::Tuple>> rels(v.predicate_count());
    for (int p = 0; p < v.predicate_count(); ++p)
        for (const auto& t : all_tuples(n, v.arity(p)))
            if (coin(rng)) rels[p].push_back(t);
    return Structure(v, n, rels);
}

Formula random_formula(const fmtk::Vocabulary& v, int rank, std::vector<std::string> scope,
                       std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    auto var = [&] {
        std::uniform_int_distribution<std::size_t> d(0, scope.size() - 1);
        return Term::var(scope[d(rng)]);
    };
    int choice = pick(rng);
    if (depth > 4) choice = 0;
    if (scope.empty() || choice >= 7) {
        if (rank > 0 && (scope.empty() || choice >= 7)) {
            std::string x = "v" + std::to_string(scope.size());
            scope.push_back(x);
            Formula body = random_formula(v, rank - 1, scope, rng, depth + 1);
            return choice % 2 ? Formula::exists(x, body) : Formula::forall(x, body);
        }
        if (scope.empty()) return choice % 2 ? Formula::make_true() : Formula::make_false();
    }
    switch (choice) {
        case 0:
        case 1:
        case 2: {
            std::uniform_int_distribution<int> pp(0, v.predicate_count() - 1);
            int p = pp(rng);
            std::vector<Term> args;
            for (int i = 0; i < v.arity(p); ++i) args.push_back(var());
            return Formula::atom(v.predicates()[p].name, args);
        }
        case 3: return Formula::equals(var(), var());
        case 4: return Formula::negate(random_formula(v, rank, scope, rng, depth + 1));
        case 5:
            return Formula::conj({random_formula(v, rank, scope, rng, depth + 1),
                                  random_formula(v, rank, scope, rng, depth + 1)});
        default:
            return Formula::disj({random_formula(v, rank, scope, rng, depth + 1),
                                  random_formula(v, rank, scope, rng, depth + 1)});
    }
}

Formula random_sentence(const fmtk::Vocabulary& v, int rank, std::mt19937_64& rng) {
    return random_formula(v, rank, {}, rng);
}

fmtk::SigmaTree random_tree(int size, int letters, std::mt19937_64& rng) {
    std::vector<std::string> alphabet;
    for (int i = 0; i < letters; ++i) alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<int> parent(size, -1), label(size);
    std::uniform_int_distribution<int> letter(0, letters - 1);
    for (int v = 0; v < size; ++v) {
        label[v] = letter(rng);
        if (v > 0) parent[v] = std::uniform_int_distribution<int>(0, v - 1)(rng);
    }
    return fmtk::SigmaTree(alphabet, parent, label);
}

std::vector<int> random_subset(int n, int count, std::mt19937_64& rng) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(count, n));
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace oracle
