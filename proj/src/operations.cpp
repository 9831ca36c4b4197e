#include "fmtk/operations.hpp"

#include "fmtk/error.hpp"

namespace fmtk {

namespace {

void require_no_constants(const Structure& s, const char* op) {
    if (s.vocab().constant_count() > 0)
        throw InvalidArgument(std::string(op) + " requires a vocabulary without constants");
}

void require_same_vocab(const Structure& a, const Structure& b, const char* op) {
    if (!(a.vocab() == b.vocab()))
        throw InvalidArgument(std::string(op) + " requires a common vocabulary");
    require_no_constants(a, op);
}

std::vector<int> validated_depths(const std::vector<int>& parent) {
    int n = static_cast<int>(parent.size());
    int roots = 0;
    std::vector<int> depth(n, -1);
    for (int i = 0; i < n; ++i) {
        if (parent[i] == -1) ++roots;
        else if (parent[i] < 0 || parent[i] >= n) throw InvalidArgument("parent index out of range");
    }
    if (roots != 1) throw InvalidArgument("block shape must have exactly one root");
    for (int i = 0; i < n; ++i) {
        int steps = 0, v = i;
        while (parent[v] != -1) {
            v = parent[v];
            if (++steps > n) throw InvalidArgument("block shape contains a cycle");
        }
        depth[i] = steps;
    }
    return depth;
}

Structure blocks(const std::vector<int>& parent, const std::vector<Structure>& parts) {
    if (parts.empty()) throw InvalidArgument("word/tree of structures needs at least one part");
    if (parent.size() != parts.size()) throw InvalidArgument("shape and parts differ in length");
    const Vocabulary& tau = parts.front().vocab();
    for (const auto& p : parts) {
        if (!(p.vocab() == tau)) throw InvalidArgument("parts must share one vocabulary");
        require_no_constants(p, "word/tree of structures");
    }
    if (tau.has_name(kBlockOrder)) throw InvalidArgument("vocabulary already uses the name le");
    validated_depths(parent);

    int nb = static_cast<int>(parts.size());
    std::vector<int> offset(nb + 1, 0);
    for (int i = 0; i < nb; ++i) offset[i + 1] = offset[i] + parts[i].size();

    // anc[i][j]: block i is an ancestor of, or equal to, block j.
    std::vector<std::vector<char>> anc(nb, std::vector<char>(nb, 0));
    for (int j = 0; j < nb; ++j)
        for (int v = j; v != -1; v = parent[v]) anc[v][j] = 1;

    Vocabulary vocab = tau.with_predicate_first(kBlockOrder, 2);
    std::vector<std::vector<Tuple>> rels(vocab.predicate_count());
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            if (anc[i][j])
                for (int a = offset[i]; a < offset[i + 1]; ++a)
                    for (int b = offset[j]; b < offset[j + 1]; ++b) rels[0].push_back({a, b});
    for (int i = 0; i < nb; ++i)
        for (int p = 0; p < tau.predicate_count(); ++p)
            for (Tuple t : parts[i].tuples(p)) {
                for (auto& e : t) e += offset[i];
                rels[p + 1].push_back(std::move(t));
            }
    return Structure(std::move(vocab), offset[nb], std::move(rels));
}

}  // namespace

Structure disjoint_union(const Structure& a, const Structure& b) {
    require_same_vocab(a, b, "disjoint union");
    const auto& v = a.vocab();
    std::vector<std::vector<Tuple>> rels(v.predicate_count());
    for (int p = 0; p < v.predicate_count(); ++p) {
        rels[p] = a.tuples(p);
        for (Tuple t : b.tuples(p)) {
            for (auto& e : t) e += a.size();
            rels[p].push_back(std::move(t));
        }
    }
    return Structure(v, a.size() + b.size(), std::move(rels));
}

Structure complement(const Structure& a) {
    require_no_constants(a, "complement");
    const auto& v = a.vocab();
    std::vector<std::vector<Tuple>> rels(v.predicate_count());
    for (int p = 0; p < v.predicate_count(); ++p) {
        int r = v.arity(p);
        Tuple t(r, 0);
        while (true) {
            if (!a.holds(p, t)) rels[p].push_back(t);
            int i = r - 1;
            while (i >= 0 && ++t[i] == a.size()) t[i--] = 0;
            if (i < 0) break;
        }
    }
    return Structure(v, a.size(), std::move(rels));
}

Structure cartesian_product(const Structure& a, const Structure& b) {
    require_same_vocab(a, b, "cartesian product");
    const auto& v = a.vocab();
    int nb = b.size();
    std::vector<std::vector<Tuple>> rels(v.predicate_count());
    for (int p = 0; p < v.predicate_count(); ++p) {
        for (Element x = 0; x < a.size(); ++x)
            for (Tuple t : b.tuples(p)) {
                for (auto& e : t) e = x * nb + e;
                rels[p].push_back(std::move(t));
            }
        for (Element y = 0; y < nb; ++y)
            for (Tuple t : a.tuples(p)) {
                for (auto& e : t) e = e * nb + y;
                rels[p].push_back(std::move(t));
            }
    }
    return Structure(v, a.size() * nb, std::move(rels));
}

Structure tensor_product(const Structure& a, const Structure& b) {
    require_same_vocab(a, b, "tensor product");
    const auto& v = a.vocab();
    int nb = b.size();
    std::vector<std::vector<Tuple>> rels(v.predicate_count());
    for (int p = 0; p < v.predicate_count(); ++p)
        for (const auto& ta : a.tuples(p))
            for (const auto& tb : b.tuples(p)) {
                Tuple t(ta.size());
                for (std::size_t i = 0; i < t.size(); ++i) t[i] = ta[i] * nb + tb[i];
                rels[p].push_back(std::move(t));
            }
    return Structure(v, a.size() * nb, std::move(rels));
}

Structure bowtie(const Structure& a, const Structure& b) {
    require_same_vocab(a, b, "bowtie");
    return complement(disjoint_union(complement(a), complement(b)));
}

Structure word_of_structures(const std::vector<Structure>& parts) {
    std::vector<int> parent(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) parent[i] = static_cast<int>(i) - 1;
    return blocks(parent, parts);
}

Structure tree_of_structures(const std::vector<int>& parent, const std::vector<Structure>& parts) {
    return blocks(parent, parts);
}

std::vector<int> block_index(const std::vector<Structure>& parts) {
    std::vector<int> out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        out.insert(out.end(), parts[i].size(), static_cast<int>(i));
    return out;
}

}  // namespace fmtk
