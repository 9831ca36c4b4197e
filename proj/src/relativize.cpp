#include <algorithm>
#include <map>

#include "fmtk/error.hpp"
#include "fmtk/formula.hpp"

namespace fmtk {

namespace {

// Shallow simplification: operands are already simplified.
Formula negation(Formula c) {
    if (c.kind() == FormulaKind::True) return Formula::make_false();
    if (c.kind() == FormulaKind::False) return Formula::make_true();
    if (c.kind() == FormulaKind::Not) return c.child();
    return Formula::negate(std::move(c));
}

Formula junction(bool is_and, std::vector<Formula> kids) {
    FormulaKind self = is_and ? FormulaKind::And : FormulaKind::Or;
    FormulaKind unit = is_and ? FormulaKind::True : FormulaKind::False;
    FormulaKind zero = is_and ? FormulaKind::False : FormulaKind::True;
    std::vector<Formula> flat;
    for (auto& c : kids) {
        if (c.kind() == zero) return c;
        if (c.kind() == unit) continue;
        if (c.kind() == self) flat.insert(flat.end(), c.children().begin(), c.children().end());
        else flat.push_back(std::move(c));
    }
    std::sort(flat.begin(), flat.end(), FormulaLess{});
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    return is_and ? Formula::conj(std::move(flat)) : Formula::disj(std::move(flat));
}

class Relativizer {
public:
    Relativizer(std::vector<Term> domain, std::size_t budget)
        : domain_(std::move(domain)), budget_(budget) {}

    Formula run(const Formula& f) { return rel(f); }

private:
    Term subst(const Term& t) const {
        if (!t.is_var()) return t;
        auto it = env_.find(t.name);
        if (it == env_.end() || it->second.empty())
            throw InvalidArgument("relativize expects a sentence; free variable " + t.name);
        return it->second.back();
    }

    Formula rel(const Formula& f) {
        if (++produced_ > budget_) throw GuardExceeded("relativization exceeded its expansion budget");
        switch (f.kind()) {
            case FormulaKind::True:
            case FormulaKind::False:
                return f;
            case FormulaKind::Atom: {
                std::vector<Term> args;
                for (const auto& t : f.terms()) args.push_back(subst(t));
                return Formula::atom(f.predicate(), std::move(args));
            }
            case FormulaKind::Equals:
                return simplify(Formula::equals(subst(f.terms()[0]), subst(f.terms()[1])));
            case FormulaKind::Not:
                return negation(rel(f.child()));
            case FormulaKind::And:
            case FormulaKind::Or: {
                std::vector<Formula> kids;
                for (const auto& c : f.children()) kids.push_back(rel(c));
                return junction(f.kind() == FormulaKind::And, std::move(kids));
            }
            case FormulaKind::Implies: {
                Formula l = negation(rel(f.child(0)));
                return junction(false, {std::move(l), rel(f.child(1))});
            }
            case FormulaKind::Exists:
            case FormulaKind::Forall: {
                // forall x. b is handled as !(exists x. !b), expanded directly into a conjunction.
                bool ex = f.kind() == FormulaKind::Exists;
                std::vector<Formula> kids;
                for (const auto& t : domain_) {
                    env_[f.variable()].push_back(t);
                    Formula k = rel(f.child());
                    env_[f.variable()].pop_back();
                    if (ex && k.kind() == FormulaKind::True) return k;
                    if (!ex && k.kind() == FormulaKind::False) return k;
                    kids.push_back(std::move(k));
                }
                return junction(!ex, std::move(kids));
            }
        }
        return f;
    }

    std::vector<Term> domain_;
    std::size_t budget_;
    std::size_t produced_ = 0;
    std::map<std::string, std::vector<Term>> env_;
};

}  // namespace

Formula relativize(const Formula& f, const std::vector<std::string>& xs,
                   const std::vector<std::string>& constants, std::size_t budget) {
    if (!is_sentence(f)) throw InvalidArgument("relativize expects a sentence");
    std::vector<Term> domain;
    for (const auto& x : xs) {
        Term t = Term::var(x);
        if (std::find(domain.begin(), domain.end(), t) == domain.end()) domain.push_back(t);
    }
    for (const auto& c : constants) domain.push_back(Term::constant(c));
    if (domain.empty()) throw InvalidArgument("relativize needs at least one variable or constant");
    return Relativizer(std::move(domain), budget).run(f);
}

}  // namespace fmtk
