#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fmtk {

using Element = int;
using Tuple = std::vector<Element>;

struct PredicateSymbol {
    std::string name;
    int arity = 1;

    bool operator==(const PredicateSymbol&) const = default;
};

/// A finite relational signature: predicate symbols with positive arities and
/// constant symbols. Names are unique across both kinds. Order is significant and
/// stable; predicates and constants are addressed by index.
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::vector<PredicateSymbol> predicates, std::vector<std::string> constants = {});

    const std::vector<PredicateSymbol>& predicates() const { return predicates_; }
    const std::vector<std::string>& constants() const { return constants_; }

    int predicate_count() const { return static_cast<int>(predicates_.size()); }
    int constant_count() const { return static_cast<int>(constants_.size()); }
    int arity(int predicate) const { return predicates_.at(predicate).arity; }

    std::optional<int> find_predicate(std::string_view name) const;
    std::optional<int> find_constant(std::string_view name) const;
    bool has_name(std::string_view name) const;

    Vocabulary with_predicate(std::string name, int arity) const;
    Vocabulary with_predicate_first(std::string name, int arity) const;
    Vocabulary with_constants(const std::vector<std::string>& names) const;

    /// Compact textual signature, e.g. "E/2,Qa/1;c1,c2".
    std::string signature() const;

    bool operator==(const Vocabulary&) const = default;

private:
    std::vector<PredicateSymbol> predicates_;
    std::vector<std::string> constants_;
};

/// Interpretation of one predicate symbol. Tuples are kept sorted and unique;
/// membership is answered from a dense bit table when the tuple space is small
/// and by binary search otherwise.
class Relation {
public:
    Relation(int arity, int universe, std::vector<Tuple> tuples);

    int arity() const { return arity_; }
    const std::vector<Tuple>& tuples() const { return tuples_; }
    bool contains(std::span<const Element> args) const;

private:
    int arity_;
    int universe_;
    std::vector<Tuple> tuples_;
    std::vector<std::uint64_t> dense_;
    bool use_dense_ = false;
};

/// A finite structure over a relational vocabulary. Elements are 0..size-1.
/// Immutable after construction; copies share the same uid (they are equal).
class Structure {
public:
    Structure(Vocabulary vocab, int size, std::vector<std::vector<Tuple>> relations,
              std::vector<Element> constants = {});

    const Vocabulary& vocab() const { return vocab_; }
    int size() const { return size_; }

    bool holds(int predicate, std::span<const Element> args) const {
        return relations_[predicate].contains(args);
    }
    bool holds(int predicate, std::initializer_list<Element> args) const {
        return relations_[predicate].contains(std::span<const Element>(args.begin(), args.size()));
    }
    const std::vector<Tuple>& tuples(int predicate) const { return relations_[predicate].tuples(); }

    Element constant(int index) const { return constants_.at(index); }
    const std::vector<Element>& constants() const { return constants_; }

    /// Identity used as a memoization key by rank-type caches.
    std::uint64_t uid() const { return uid_; }

    /// Structural equality (same vocabulary, size, relations, constants).
    bool operator==(const Structure& other) const;

private:
    Vocabulary vocab_;
    int size_;
    std::vector<Relation> relations_;
    std::vector<Element> constants_;
    std::uint64_t uid_;
};

/// Incremental construction of a Structure by predicate / constant name.
class StructureBuilder {
public:
    StructureBuilder(Vocabulary vocab, int size);

    StructureBuilder& add(std::string_view predicate, Tuple tuple);
    StructureBuilder& add(int predicate, Tuple tuple);
    StructureBuilder& set_constant(std::string_view name, Element element);

    Structure build() const;

    const Vocabulary& vocab() const { return vocab_; }
    int size() const { return size_; }

private:
    Vocabulary vocab_;
    int size_;
    std::vector<std::vector<Tuple>> relations_;
    std::vector<std::optional<Element>> constants_;
};

/// Result of re-indexing elements: `structure` plus `origin[i]`, the element of the
/// source structure that new element i came from.
struct Renumbered {
    Structure structure;
    std::vector<Element> origin;
};

/// Substructure induced by `subset` (deduplicated, renumbered in increasing order).
/// Throws InvalidArgument for an empty subset, out-of-range elements, or a subset that
/// misses a constant interpretation.
Renumbered induced_substructure(const Structure& a, std::span<const Element> subset);

}  // namespace fmtk
