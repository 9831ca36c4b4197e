#include "fmtk/formula.hpp"

#include <algorithm>
#include <functional>

#include "fmtk/error.hpp"

namespace fmtk {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(FormulaKind kind, std::string name, std::vector<Term> terms,
                      std::vector<Formula> children) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    std::size_t h = mix(0, static_cast<std::size_t>(kind));
    h = mix(h, std::hash<std::string>{}(name));
    for (const auto& t : terms) {
        h = mix(h, static_cast<std::size_t>(t.kind));
        h = mix(h, std::hash<std::string>{}(t.name));
    }
    for (const auto& c : children) h = mix(h, c.hash());
    n->name = std::move(name);
    n->terms = std::move(terms);
    n->children = std::move(children);
    n->hash = h;
    return Formula(std::move(n));
}

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (hash() != other.hash()) return false;
    return compare(*this, other) == 0;
}

Formula Formula::make_true() {
    static const Formula t = make(FormulaKind::True, "", {}, {});
    return t;
}

Formula Formula::make_false() {
    static const Formula f = make(FormulaKind::False, "", {}, {});
    return f;
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
    if (args.empty()) throw InvalidArgument("atom " + predicate + " needs arguments");
    return make(FormulaKind::Atom, std::move(predicate), std::move(args), {});
}

Formula Formula::equals(Term lhs, Term rhs) {
    return make(FormulaKind::Equals, "", {std::move(lhs), std::move(rhs)}, {});
}

Formula Formula::negate(Formula f) { return make(FormulaKind::Not, "", {}, {std::move(f)}); }

Formula Formula::conj(std::vector<Formula> parts) {
    if (parts.empty()) return make_true();
    if (parts.size() == 1) return parts.front();
    return make(FormulaKind::And, "", {}, std::move(parts));
}

Formula Formula::disj(std::vector<Formula> parts) {
    if (parts.empty()) return make_false();
    if (parts.size() == 1) return parts.front();
    return make(FormulaKind::Or, "", {}, std::move(parts));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
    return make(FormulaKind::Implies, "", {}, {std::move(lhs), std::move(rhs)});
}

Formula Formula::exists(std::string var, Formula body) {
    return make(FormulaKind::Exists, std::move(var), {}, {std::move(body)});
}

Formula Formula::forall(std::string var, Formula body) {
    return make(FormulaKind::Forall, std::move(var), {}, {std::move(body)});
}

int compare(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    if (int c = a.predicate().compare(b.predicate()); c != 0) return c < 0 ? -1 : 1;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (ta[i] < tb[i]) return -1;
        if (tb[i] < ta[i]) return 1;
    }
    const auto& ca = a.children();
    const auto& cb = b.children();
    if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
    for (std::size_t i = 0; i < ca.size(); ++i)
        if (int c = compare(ca[i], cb[i]); c != 0) return c;
    return 0;
}

int quantifier_rank(const Formula& f) {
    int best = 0;
    for (const auto& c : f.children()) best = std::max(best, quantifier_rank(c));
    return f.is_quantifier() ? best + 1 : best;
}

namespace {

void collect_free(const Formula& f, std::multiset<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::Equals:
            for (const auto& t : f.terms())
                if (t.is_var() && !bound.count(t.name)) out.insert(t.name);
            return;
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            auto it = bound.insert(f.variable());
            collect_free(f.child(), bound, out);
            bound.erase(it);
            return;
        }
        default:
            for (const auto& c : f.children()) collect_free(c, bound, out);
    }
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
    std::multiset<std::string> bound;
    std::set<std::string> out;
    collect_free(f, bound, out);
    return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

bool is_quantifier_free(const Formula& f) { return quantifier_rank(f) == 0; }

std::size_t formula_size(const Formula& f) {
    std::size_t n = 1;
    for (const auto& c : f.children()) n += formula_size(c);
    return n;
}

namespace {

void print(const Formula& f, std::string& out);

void print_term(const Term& t, std::string& out) { out += t.name; }

void print_operand(const Formula& c, bool parens, std::string& out) {
    if (parens) out += '(';
    print(c, out);
    if (parens) out += ')';
}

void print(const Formula& f, std::string& out) {
    switch (f.kind()) {
        case FormulaKind::True: out += "true"; return;
        case FormulaKind::False: out += "false"; return;
        case FormulaKind::Atom:
            out += f.predicate();
            out += '(';
            for (std::size_t i = 0; i < f.terms().size(); ++i) {
                if (i) out += ", ";
                print_term(f.terms()[i], out);
            }
            out += ')';
            return;
        case FormulaKind::Equals:
            print_term(f.terms()[0], out);
            out += " = ";
            print_term(f.terms()[1], out);
            return;
        case FormulaKind::Not: {
            const auto& c = f.child();
            bool bare = c.kind() == FormulaKind::Atom || c.kind() == FormulaKind::True ||
                        c.kind() == FormulaKind::False || c.kind() == FormulaKind::Not;
            out += '!';
            print_operand(c, !bare, out);
            return;
        }
        case FormulaKind::And:
        case FormulaKind::Or: {
            bool is_and = f.kind() == FormulaKind::And;
            for (std::size_t i = 0; i < f.children().size(); ++i) {
                if (i) out += is_and ? " & " : " | ";
                const auto& c = f.children()[i];
                bool parens = c.is_quantifier() || c.kind() == FormulaKind::Implies ||
                              c.kind() == FormulaKind::Or ||
                              (is_and && c.kind() == FormulaKind::And);
                print_operand(c, parens, out);
            }
            return;
        }
        case FormulaKind::Implies: {
            const auto& l = f.child(0);
            const auto& r = f.child(1);
            print_operand(l, l.is_quantifier() || l.kind() == FormulaKind::Implies, out);
            out += " -> ";
            print_operand(r, r.is_quantifier(), out);
            return;
        }
        case FormulaKind::Exists:
        case FormulaKind::Forall:
            out += f.kind() == FormulaKind::Exists ? "exists " : "forall ";
            out += f.variable();
            out += ". ";
            print(f.child(), out);
            return;
    }
}

}  // namespace

std::string to_string(const Formula& f) {
    std::string out;
    print(f, out);
    return out;
}

namespace {

Formula simplify_node(FormulaKind kind, std::vector<Formula> kids) {
    bool is_and = kind == FormulaKind::And;
    std::vector<Formula> flat;
    for (auto& c : kids) {
        if (c.kind() == kind) {
            flat.insert(flat.end(), c.children().begin(), c.children().end());
            continue;
        }
        if (c.kind() == (is_and ? FormulaKind::True : FormulaKind::False)) continue;
        if (c.kind() == (is_and ? FormulaKind::False : FormulaKind::True)) return c;
        flat.push_back(std::move(c));
    }
    std::sort(flat.begin(), flat.end(), FormulaLess{});
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    return is_and ? Formula::conj(std::move(flat)) : Formula::disj(std::move(flat));
}

}  // namespace

Formula simplify(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::True:
        case FormulaKind::False:
        case FormulaKind::Atom:
            return f;
        case FormulaKind::Equals: {
            const auto& t = f.terms();
            if (t[0] == t[1]) return Formula::make_true();
            if (t[1] < t[0]) return Formula::equals(t[1], t[0]);
            return f;
        }
        case FormulaKind::Not: {
            Formula c = simplify(f.child());
            if (c.kind() == FormulaKind::True) return Formula::make_false();
            if (c.kind() == FormulaKind::False) return Formula::make_true();
            if (c.kind() == FormulaKind::Not) return c.child();
            return Formula::negate(std::move(c));
        }
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> kids;
            for (const auto& c : f.children()) kids.push_back(simplify(c));
            return simplify_node(f.kind(), std::move(kids));
        }
        case FormulaKind::Implies: {
            Formula l = simplify(f.child(0));
            Formula r = simplify(f.child(1));
            if (l.kind() == FormulaKind::False || r.kind() == FormulaKind::True)
                return Formula::make_true();
            if (l.kind() == FormulaKind::True) return r;
            return Formula::implies(std::move(l), std::move(r));
        }
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            Formula b = simplify(f.child());
            if (b.kind() == FormulaKind::True || b.kind() == FormulaKind::False) return b;
            return f.kind() == FormulaKind::Exists ? Formula::exists(f.variable(), std::move(b))
                                                   : Formula::forall(f.variable(), std::move(b));
        }
    }
    return f;
}

Formula size_bound_sentence(int n) {
    if (n < 1) throw InvalidArgument("size bound must be at least 1");
    std::vector<Formula> eqs;
    for (int i = 1; i <= n; ++i)
        eqs.push_back(Formula::equals(Term::var("y"), Term::var("x" + std::to_string(i))));
    Formula body = Formula::forall("y", Formula::disj(std::move(eqs)));
    for (int i = n; i >= 1; --i) body = Formula::exists("x" + std::to_string(i), std::move(body));
    return body;
}

PrefixSentence assemble_prefix(std::vector<std::string> existential,
                               std::vector<std::string> universal, Formula matrix) {
    if (!is_quantifier_free(matrix)) throw InvalidArgument("prefix matrix must be quantifier-free");
    std::set<std::string> names(existential.begin(), existential.end());
    for (const auto& u : universal)
        if (names.count(u)) throw InvalidArgument("prefix variable lists overlap: " + u);
    names.insert(universal.begin(), universal.end());
    if (names.size() != existential.size() + universal.size())
        throw InvalidArgument("prefix variables must be distinct");
    return {std::move(existential), std::move(universal), std::move(matrix)};
}

PrefixSentence assemble_prefix(int k, int p, Formula matrix) {
    if (k < 0 || p < 0) throw InvalidArgument("negative quantifier count");
    std::vector<std::string> ex, un;
    for (int i = 1; i <= k; ++i) ex.push_back("x" + std::to_string(i));
    for (int i = 1; i <= p; ++i) un.push_back("y" + std::to_string(i));
    return assemble_prefix(std::move(ex), std::move(un), std::move(matrix));
}

Formula to_formula(const PrefixSentence& s) {
    Formula f = s.matrix;
    for (auto it = s.universal.rbegin(); it != s.universal.rend(); ++it) f = Formula::forall(*it, f);
    for (auto it = s.existential.rbegin(); it != s.existential.rend(); ++it)
        f = Formula::exists(*it, f);
    return f;
}

}  // namespace fmtk
