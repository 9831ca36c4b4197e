#include "fmtk/structure.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "fmtk/error.hpp"

namespace fmtk {

namespace {

std::atomic<std::uint64_t> next_uid{1};

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;

// Returns n^arity, or kDenseLimit + 1 once it exceeds the limit.
std::uint64_t tuple_space(int n, int arity) {
    std::uint64_t total = 1;
    for (int i = 0; i < arity; ++i) {
        total *= static_cast<std::uint64_t>(n);
        if (total > kDenseLimit) return kDenseLimit + 1;
    }
    return total;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<PredicateSymbol> predicates, std::vector<std::string> constants)
    : predicates_(std::move(predicates)), constants_(std::move(constants)) {
    std::set<std::string> seen;
    for (const auto& p : predicates_) {
        if (p.arity < 1) throw InvalidArgument("predicate " + p.name + " must have positive arity");
        if (p.name.empty()) throw InvalidArgument("empty predicate name");
        if (!seen.insert(p.name).second) throw InvalidArgument("duplicate symbol " + p.name);
    }
    for (const auto& c : constants_) {
        if (c.empty()) throw InvalidArgument("empty constant name");
        if (!seen.insert(c).second) throw InvalidArgument("duplicate symbol " + c);
    }
}

std::optional<int> Vocabulary::find_predicate(std::string_view name) const {
    for (std::size_t i = 0; i < predicates_.size(); ++i)
        if (predicates_[i].name == name) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> Vocabulary::find_constant(std::string_view name) const {
    for (std::size_t i = 0; i < constants_.size(); ++i)
        if (constants_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

bool Vocabulary::has_name(std::string_view name) const {
    return find_predicate(name).has_value() || find_constant(name).has_value();
}

Vocabulary Vocabulary::with_predicate(std::string name, int arity) const {
    auto preds = predicates_;
    preds.push_back({std::move(name), arity});
    return Vocabulary(std::move(preds), constants_);
}

Vocabulary Vocabulary::with_predicate_first(std::string name, int arity) const {
    std::vector<PredicateSymbol> preds;
    preds.push_back({std::move(name), arity});
    preds.insert(preds.end(), predicates_.begin(), predicates_.end());
    return Vocabulary(std::move(preds), constants_);
}

Vocabulary Vocabulary::with_constants(const std::vector<std::string>& names) const {
    auto consts = constants_;
    consts.insert(consts.end(), names.begin(), names.end());
    return Vocabulary(predicates_, std::move(consts));
}

std::string Vocabulary::signature() const {
    std::string out;
    for (std::size_t i = 0; i < predicates_.size(); ++i) {
        if (i) out += ',';
        out += predicates_[i].name + "/" + std::to_string(predicates_[i].arity);
    }
    if (!constants_.empty()) {
        out += ';';
        for (std::size_t i = 0; i < constants_.size(); ++i) {
            if (i) out += ',';
            out += constants_[i];
        }
    }
    return out;
}

Relation::Relation(int arity, int universe, std::vector<Tuple> tuples)
    : arity_(arity), universe_(universe), tuples_(std::move(tuples)) {
    for (const auto& t : tuples_) {
        if (static_cast<int>(t.size()) != arity_)
            throw InvalidArgument("tuple has wrong arity");
        for (Element e : t)
            if (e < 0 || e >= universe_) throw InvalidArgument("tuple component out of range");
    }
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());

    std::uint64_t space = tuple_space(universe_, arity_);
    if (space <= kDenseLimit) {
        use_dense_ = true;
        dense_.assign((space + 63) / 64, 0);
        for (const auto& t : tuples_) {
            std::uint64_t idx = 0;
            for (Element e : t) idx = idx * universe_ + e;
            dense_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
        }
    }
}

bool Relation::contains(std::span<const Element> args) const {
    if (use_dense_) {
        std::uint64_t idx = 0;
        for (Element e : args) idx = idx * universe_ + e;
        return (dense_[idx >> 6] >> (idx & 63)) & 1;
    }
    return std::binary_search(tuples_.begin(), tuples_.end(), args,
                              [](const auto& a, const auto& b) {
                                  return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                                                      b.end());
                              });
}

Structure::Structure(Vocabulary vocab, int size, std::vector<std::vector<Tuple>> relations,
                     std::vector<Element> constants)
    : vocab_(std::move(vocab)), size_(size), constants_(std::move(constants)),
      uid_(next_uid.fetch_add(1, std::memory_order_relaxed)) {
    if (size_ < 1) throw InvalidArgument("structures must be nonempty");
    if (static_cast<int>(relations.size()) != vocab_.predicate_count())
        throw InvalidArgument("relation count does not match vocabulary");
    if (static_cast<int>(constants_.size()) != vocab_.constant_count())
        throw InvalidArgument("every constant must be interpreted");
    for (Element c : constants_)
        if (c < 0 || c >= size_) throw InvalidArgument("constant interpretation out of range");
    relations_.reserve(relations.size());
    for (int p = 0; p < vocab_.predicate_count(); ++p)
        relations_.emplace_back(vocab_.arity(p), size_, std::move(relations[p]));
}

bool Structure::operator==(const Structure& other) const {
    if (uid_ == other.uid_) return true;
    if (!(vocab_ == other.vocab_) || size_ != other.size_ || constants_ != other.constants_)
        return false;
    for (std::size_t p = 0; p < relations_.size(); ++p)
        if (relations_[p].tuples() != other.relations_[p].tuples()) return false;
    return true;
}

StructureBuilder::StructureBuilder(Vocabulary vocab, int size)
    : vocab_(std::move(vocab)), size_(size), relations_(vocab_.predicate_count()),
      constants_(vocab_.constant_count()) {}

StructureBuilder& StructureBuilder::add(std::string_view predicate, Tuple tuple) {
    auto p = vocab_.find_predicate(predicate);
    if (!p) throw InvalidArgument("unknown predicate " + std::string(predicate));
    return add(*p, std::move(tuple));
}

StructureBuilder& StructureBuilder::add(int predicate, Tuple tuple) {
    if (predicate < 0 || predicate >= vocab_.predicate_count())
        throw InvalidArgument("predicate index out of range");
    if (static_cast<int>(tuple.size()) != vocab_.arity(predicate))
        throw InvalidArgument("arity mismatch for " + vocab_.predicates()[predicate].name);
    relations_[predicate].push_back(std::move(tuple));
    return *this;
}

StructureBuilder& StructureBuilder::set_constant(std::string_view name, Element element) {
    auto c = vocab_.find_constant(name);
    if (!c) throw InvalidArgument("unknown constant " + std::string(name));
    constants_[*c] = element;
    return *this;
}

Structure StructureBuilder::build() const {
    std::vector<Element> consts;
    for (std::size_t i = 0; i < constants_.size(); ++i) {
        if (!constants_[i]) throw InvalidArgument("constant " + vocab_.constants()[i] + " not set");
        consts.push_back(*constants_[i]);
    }
    return Structure(vocab_, size_, relations_, std::move(consts));
}

Renumbered induced_substructure(const Structure& a, std::span<const Element> subset) {
    std::vector<Element> keep(subset.begin(), subset.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty()) throw InvalidArgument("induced substructure of an empty subset");
    std::vector<int> index(a.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= a.size())
            throw InvalidArgument("subset element out of range");
        index[keep[i]] = static_cast<int>(i);
    }
    std::vector<Element> consts;
    for (Element c : a.constants()) {
        if (index[c] < 0) throw InvalidArgument("subset misses a constant interpretation");
        consts.push_back(index[c]);
    }
    const auto& vocab = a.vocab();
    std::vector<std::vector<Tuple>> rels(vocab.predicate_count());
    for (int p = 0; p < vocab.predicate_count(); ++p) {
        for (const auto& t : a.tuples(p)) {
            Tuple mapped;
            mapped.reserve(t.size());
            bool inside = true;
            for (Element e : t) {
                if (index[e] < 0) {
                    inside = false;
                    break;
                }
                mapped.push_back(index[e]);
            }
            if (inside) rels[p].push_back(std::move(mapped));
        }
    }
    return {Structure(vocab, static_cast<int>(keep.size()), std::move(rels), std::move(consts)),
            std::move(keep)};
}

}  // namespace fmtk
