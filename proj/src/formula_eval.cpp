#include <map>

#include "fmtk/error.hpp"
#include "fmtk/formula.hpp"

namespace fmtk {

// Compiled node. Implications are rewritten to disjunctions; variables are slots in a
// flat environment and constant arguments are stored as -(index + 1).
struct CompiledFormula::Op {
    enum class Kind { True, False, Atom, Eq, Not, And, Or, Exists, Forall };
    Op(Kind k) : kind(k) {}

    Kind kind;
    int predicate = -1;
    int slot = -1;
    std::vector<int> args;
    std::vector<int> kids;
};

namespace {

using Op = CompiledFormula::Op;

class Compiler {
public:
    Compiler(const Vocabulary& vocab, std::vector<Op>& ops, int& slots)
        : vocab_(vocab), ops_(ops), slots_(slots) {}

    void bind_free(const std::string& name) { scope_[name].push_back(slots_++); }

    int compile(const Formula& f, bool negated = false) {
        switch (f.kind()) {
            case FormulaKind::True:
                return emit({negated ? Op::Kind::False : Op::Kind::True});
            case FormulaKind::False:
                return emit({negated ? Op::Kind::True : Op::Kind::False});
            case FormulaKind::Atom: {
                auto p = vocab_.find_predicate(f.predicate());
                if (!p) throw InvalidArgument("unknown predicate " + f.predicate());
                if (vocab_.arity(*p) != static_cast<int>(f.terms().size()))
                    throw InvalidArgument("arity mismatch for " + f.predicate());
                Op op{Op::Kind::Atom};
                op.predicate = *p;
                for (const auto& t : f.terms()) op.args.push_back(arg(t));
                return wrap(emit(std::move(op)), negated);
            }
            case FormulaKind::Equals: {
                Op op{Op::Kind::Eq};
                op.args = {arg(f.terms()[0]), arg(f.terms()[1])};
                return wrap(emit(std::move(op)), negated);
            }
            case FormulaKind::Not:
                return compile(f.child(), !negated);
            case FormulaKind::And:
            case FormulaKind::Or: {
                bool is_and = (f.kind() == FormulaKind::And) != negated;
                Op op{is_and ? Op::Kind::And : Op::Kind::Or};
                for (const auto& c : f.children()) op.kids.push_back(compile(c, negated));
                return emit(std::move(op));
            }
            case FormulaKind::Implies: {
                // a -> b  ==  !a | b ;  !(a -> b)  ==  a & !b
                Op op{negated ? Op::Kind::And : Op::Kind::Or};
                op.kids = {compile(f.child(0), !negated), compile(f.child(1), negated)};
                return emit(std::move(op));
            }
            case FormulaKind::Exists:
            case FormulaKind::Forall: {
                bool ex = (f.kind() == FormulaKind::Exists) != negated;
                int slot = slots_++;
                scope_[f.variable()].push_back(slot);
                int body = compile(f.child(), negated);
                scope_[f.variable()].pop_back();
                Op op{ex ? Op::Kind::Exists : Op::Kind::Forall};
                op.slot = slot;
                op.kids = {body};
                return emit(std::move(op));
            }
        }
        throw InvalidArgument("unknown formula kind");
    }

private:
    int emit(Op op) {
        ops_.push_back(std::move(op));
        return static_cast<int>(ops_.size()) - 1;
    }

    int wrap(int idx, bool negated) {
        if (!negated) return idx;
        Op op{Op::Kind::Not};
        op.kids = {idx};
        return emit(std::move(op));
    }

    int arg(const Term& t) {
        if (t.is_var()) {
            auto it = scope_.find(t.name);
            if (it == scope_.end() || it->second.empty())
                throw InvalidArgument("unassigned free variable " + t.name);
            return it->second.back();
        }
        auto c = vocab_.find_constant(t.name);
        if (!c) throw InvalidArgument("unknown constant " + t.name);
        return -(*c + 1);
    }

    const Vocabulary& vocab_;
    std::vector<Op>& ops_;
    int& slots_;
    std::map<std::string, std::vector<int>> scope_;
};

bool run(const std::vector<Op>& ops, int idx, const Structure& a, std::vector<Element>& env) {
    const Op& op = ops[idx];
    auto value = [&](int arg) { return arg >= 0 ? env[arg] : a.constant(-arg - 1); };
    switch (op.kind) {
        case Op::Kind::True: return true;
        case Op::Kind::False: return false;
        case Op::Kind::Atom: {
            Element buf[8];
            std::vector<Element> big;
            Element* t = buf;
            if (op.args.size() > 8) {
                big.resize(op.args.size());
                t = big.data();
            }
            for (std::size_t i = 0; i < op.args.size(); ++i) t[i] = value(op.args[i]);
            return a.holds(op.predicate, std::span<const Element>(t, op.args.size()));
        }
        case Op::Kind::Eq: return value(op.args[0]) == value(op.args[1]);
        case Op::Kind::Not: return !run(ops, op.kids[0], a, env);
        case Op::Kind::And:
            for (int k : op.kids)
                if (!run(ops, k, a, env)) return false;
            return true;
        case Op::Kind::Or:
            for (int k : op.kids)
                if (run(ops, k, a, env)) return true;
            return false;
        case Op::Kind::Exists:
            for (Element e = 0; e < a.size(); ++e) {
                env[op.slot] = e;
                if (run(ops, op.kids[0], a, env)) return true;
            }
            return false;
        case Op::Kind::Forall:
            for (Element e = 0; e < a.size(); ++e) {
                env[op.slot] = e;
                if (!run(ops, op.kids[0], a, env)) return false;
            }
            return true;
    }
    return false;
}

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, const Vocabulary& vocab,
                                 const std::vector<std::string>& free_order) {
    Compiler c(vocab, ops_, slots_);
    for (const auto& name : free_order) c.bind_free(name);
    free_count_ = static_cast<int>(free_order.size());
    root_ = c.compile(f);
}

CompiledFormula::~CompiledFormula() = default;
CompiledFormula::CompiledFormula(CompiledFormula&&) noexcept = default;
CompiledFormula& CompiledFormula::operator=(CompiledFormula&&) noexcept = default;

bool CompiledFormula::evaluate(const Structure& a, std::span<const Element> free_values) const {
    if (static_cast<int>(free_values.size()) != free_count_)
        throw InvalidArgument("wrong number of free-variable values");
    std::vector<Element> env(slots_, 0);
    for (int i = 0; i < free_count_; ++i) {
        if (free_values[i] < 0 || free_values[i] >= a.size())
            throw InvalidArgument("assigned element out of range");
        env[i] = free_values[i];
    }
    return run(ops_, root_, a, env);
}

bool evaluate(const Structure& a, const Formula& f, const Assignment& assignment) {
    std::vector<std::string> names;
    std::vector<Element> values;
    for (const auto& name : free_variables(f)) {
        auto it = assignment.find(name);
        if (it == assignment.end()) throw InvalidArgument("unassigned free variable " + name);
        names.push_back(name);
        values.push_back(it->second);
    }
    return CompiledFormula(f, a.vocab(), names).evaluate(a, values);
}

}  // namespace fmtk
