#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fmtk/structure.hpp"

namespace fmtk {

struct Term {
    enum class Kind { Var, Const };
    Kind kind = Kind::Var;
    std::string name;

    static Term var(std::string n) { return {Kind::Var, std::move(n)}; }
    static Term constant(std::string n) { return {Kind::Const, std::move(n)}; }
    bool is_var() const { return kind == Kind::Var; }

    auto operator<=>(const Term&) const = default;
};

enum class FormulaKind { True, False, Atom, Equals, Not, And, Or, Implies, Exists, Forall };

/// Immutable first-order formula. Cheap to copy (shared nodes). And/Or are n-ary with
/// at least two children when built through `conj`/`disj`.
class Formula {
public:
    FormulaKind kind() const { return node_->kind; }
    /// Predicate name (Atom).
    const std::string& predicate() const { return node_->name; }
    /// Bound variable (Exists/Forall).
    const std::string& variable() const { return node_->name; }
    /// Arguments of an Atom, or the two sides of an Equals.
    const std::vector<Term>& terms() const { return node_->terms; }
    const std::vector<Formula>& children() const { return node_->children; }
    const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }
    std::size_t hash() const { return node_->hash; }

    bool is_quantifier() const {
        return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall;
    }

    bool operator==(const Formula& other) const;

    // Builders.
    static Formula make_true();
    static Formula make_false();
    static Formula atom(std::string predicate, std::vector<Term> args);
    static Formula equals(Term lhs, Term rhs);
    static Formula negate(Formula f);
    /// Conjunction; a single operand is returned unchanged and zero operands give true.
    static Formula conj(std::vector<Formula> parts);
    static Formula disj(std::vector<Formula> parts);
    static Formula implies(Formula lhs, Formula rhs);
    static Formula exists(std::string var, Formula body);
    static Formula forall(std::string var, Formula body);

private:
    struct Node {
        FormulaKind kind;
        std::string name;
        std::vector<Term> terms;
        std::vector<Formula> children;
        std::size_t hash = 0;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(FormulaKind kind, std::string name, std::vector<Term> terms,
                        std::vector<Formula> children);

    std::shared_ptr<const Node> node_;
};

/// Total structural order used for canonical sorting of operands.
int compare(const Formula& a, const Formula& b);

struct FormulaLess {
    bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

int quantifier_rank(const Formula& f);
std::set<std::string> free_variables(const Formula& f);
bool is_sentence(const Formula& f);
bool is_quantifier_free(const Formula& f);
/// Number of AST nodes.
std::size_t formula_size(const Formula& f);

/// Text form accepted by `parse`.
std::string to_string(const Formula& f);

/// Parses the textual grammar. With a vocabulary, predicates and arities are checked
/// and free identifiers naming a vocabulary constant become constant terms.
/// Throws ParseError.
Formula parse(std::string_view text, const Vocabulary* vocab = nullptr);

using Assignment = std::map<std::string, Element>;

/// Tarskian truth of f in A under `assignment`. Throws InvalidArgument on an unassigned
/// free variable or a symbol missing from A's vocabulary.
bool evaluate(const Structure& a, const Formula& f, const Assignment& assignment = {});

/// Formula compiled against a vocabulary for repeated evaluation. Free variables are
/// supplied positionally in the order given at compile time.
class CompiledFormula {
public:
    CompiledFormula(const Formula& f, const Vocabulary& vocab,
                    const std::vector<std::string>& free_order = {});
    ~CompiledFormula();
    CompiledFormula(CompiledFormula&&) noexcept;
    CompiledFormula& operator=(CompiledFormula&&) noexcept;

    bool evaluate(const Structure& a, std::span<const Element> free_values = {}) const;

    struct Op;

private:
    std::vector<Op> ops_;
    int root_ = 0;
    int slots_ = 0;
    int free_count_ = 0;
};

/// Default expansion budget for `relativize` (AST nodes produced).
inline constexpr std::size_t kRelativizeBudget = 4'000'000;

/// Quantifier-free formula over `xs` that holds at (A, a) iff the substructure of A
/// induced by the values of `xs` and the constants satisfies the sentence f.
/// Quantifiers are expanded into disjunctions/conjunctions over xs and `constants`,
/// simplifying along the way. Throws InvalidArgument for a non-sentence and
/// GuardExceeded past `budget`.
Formula relativize(const Formula& f, const std::vector<std::string>& xs,
                   const std::vector<std::string>& constants = {},
                   std::size_t budget = kRelativizeBudget);

/// exists x1..xn forall y (y = x1 | ... | y = xn): "at most n elements".
Formula size_bound_sentence(int n);

struct PrefixSentence {
    std::vector<std::string> existential;
    std::vector<std::string> universal;
    Formula matrix;
};

/// Prefix with variables x1..xk, y1..yp. Throws InvalidArgument if the matrix has
/// quantifiers.
PrefixSentence assemble_prefix(int k, int p, Formula matrix);
PrefixSentence assemble_prefix(std::vector<std::string> existential,
                               std::vector<std::string> universal, Formula matrix);
Formula to_formula(const PrefixSentence& s);

/// Light simplification: flattening, constant folding, x = x, double negation,
/// canonical ordering and deduplication of And/Or operands.
Formula simplify(const Formula& f);

}  // namespace fmtk

template <>
struct std::hash<fmtk::Formula> {
    std::size_t operator()(const fmtk::Formula& f) const noexcept { return f.hash(); }
};
