#include "fmtk/translate.hpp"

#include <algorithm>
#include <bit>
#include <exception>

#include "fmtk/embedding.hpp"
#include "fmtk/error.hpp"
#include "fmtk/generators.hpp"
#include "fmtk/sigma_tree.hpp"
#include "fmtk/wqo.hpp"

namespace fmtk {

bool is_cycle_graph(const Structure& a) {
    try {
        auto comps = path_cycle_components(a);
        return comps.size() == 1 && comps[0].cycle;
    } catch (const InvalidArgument&) {
        return false;
    }
}

bool is_path_graph(const Structure& a) {
    try {
        auto comps = path_cycle_components(a);
        return comps.size() == 1 && !comps[0].cycle;
    } catch (const InvalidArgument&) {
        return false;
    }
}

bool is_linear_order(const Structure& a) {
    auto le = a.vocab().find_predicate("le");
    if (!le || a.vocab().arity(*le) != 2) return false;
    const int n = a.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            bool xy = a.holds(*le, {x, y});
            bool yx = a.holds(*le, {y, x});
            if (x == y ? !xy : xy == yx) return false;
            if (!xy) continue;
            for (int z = 0; z < n; ++z)
                if (a.holds(*le, {y, z}) && !a.holds(*le, {x, z})) return false;
        }
    return true;
}

namespace {

bool is_sigma_tree(const Structure& a, bool chain) {
    try {
        SigmaTree t = from_structure(a);
        return !chain || t.is_chain();
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

Membership class_membership(std::string_view name) {
    if (name == "all") return [](const Structure&) { return true; };
    if (name == "cycles") return is_cycle_graph;
    if (name == "paths") return is_path_graph;
    if (name == "linorders") return is_linear_order;
    if (name == "words") return [](const Structure& a) { return is_sigma_tree(a, true); };
    if (name == "trees") return [](const Structure& a) { return is_sigma_tree(a, false); };
    if (name == "hngn") return [](const Structure& a) { return recognize_HnGn(a).has_value(); };
    throw InvalidArgument("unknown class: " + std::string(name));
}

ClassSample cycle_sample(int min_size, int max_size) {
    ClassSample s{"cycles", {}, is_cycle_graph, false};
    for (int n = std::max(3, min_size); n <= max_size; ++n) s.structures.push_back(make_cycle(n));
    return s;
}

ClassSample path_sample(int max_length) {
    ClassSample s{"paths", {}, is_path_graph, true};
    for (int n = 0; n <= max_length; ++n) s.structures.push_back(make_path(n));
    return s;
}

ClassSample linear_order_sample(int max_size) {
    ClassSample s{"linorders", {}, is_linear_order, true};
    for (int n = 1; n <= max_size; ++n) s.structures.push_back(make_linear_order(n));
    return s;
}

ClassSample all_structures_sample(const Vocabulary& vocab, int max_size) {
    if (vocab.constant_count() != 0) throw InvalidArgument("sample vocabulary must be constant-free");
    ClassSample s{"all", {}, [](const Structure&) { return true; }, true};
    for (int n = 1; n <= max_size; ++n) {
        // Every possible tuple, predicate by predicate.
        std::vector<std::pair<int, Tuple>> slots;
        for (int p = 0; p < vocab.predicate_count(); ++p) {
            const int r = vocab.arity(p);
            Tuple t(r, 0);
            for (;;) {
                slots.emplace_back(p, t);
                int i = r - 1;
                while (i >= 0 && ++t[i] == n) t[i--] = 0;
                if (i < 0) break;
            }
        }
        if (slots.size() > 20) throw GuardExceeded("too many tuples to enumerate all structures");
        std::vector<Structure> found;
        for (unsigned long mask = 0; mask < (1UL << slots.size()); ++mask) {
            std::vector<std::vector<Tuple>> rels(vocab.predicate_count());
            for (std::size_t b = 0; b < slots.size(); ++b)
                if (mask >> b & 1) rels[slots[b].first].push_back(slots[b].second);
            Structure cand(vocab, n, std::move(rels));
            bool fresh = std::none_of(found.begin(), found.end(),
                                      [&](const Structure& f) { return is_isomorphic(f, cand); });
            if (fresh) found.push_back(std::move(cand));
        }
        s.structures.insert(s.structures.end(), found.begin(), found.end());
    }
    return s;
}

std::vector<std::vector<Element>> find_cores(const Structure& a, const Membership& in_c, int k,
                                             const Membership& in_s, Execution exec) {
    const int n = a.size();
    if (n > kCoreGuard)
        throw GuardExceeded("core search limited to " + std::to_string(kCoreGuard) + " elements");
    if (k < 0) throw InvalidArgument("k must be non-negative");
    const long full = 1L << n;
    std::vector<char> bad(full, 0);
    auto check = [&](long mask) {
        std::vector<Element> subset;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) subset.push_back(i);
        Structure b = induced_substructure(a, subset).structure;
        return in_s(b) && !in_c(b);
    };
    if (exec == Execution::Parallel) {
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
        for (long mask = 1; mask < full; ++mask) {
            try {
                bad[mask] = check(mask);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (long mask = 1; mask < full; ++mask) bad[mask] = check(mask);
    }
    // bad_above[S]: some bad subset contains S.
    std::vector<char> bad_above = bad;
    for (int i = 0; i < n; ++i)
        for (long mask = 0; mask < full; ++mask)
            if (!(mask >> i & 1)) bad_above[mask] |= bad_above[mask | (1L << i)];

    std::vector<std::vector<Element>> cores;
    for (long mask = 0; mask < full; ++mask) {
        if (std::popcount(static_cast<unsigned long>(mask)) > k || bad_above[mask]) continue;
        std::vector<Element> core;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) core.push_back(i);
        cores.push_back(std::move(core));
    }
    std::sort(cores.begin(), cores.end(), [](const auto& x, const auto& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    return cores;
}

std::vector<std::vector<Element>> find_cores(const Structure& a, const Formula& phi, int k,
                                             const Membership& in_s, Execution exec) {
    if (!is_sentence(phi)) throw InvalidArgument("core search needs a sentence");
    auto compiled = std::make_shared<CompiledFormula>(phi, a.vocab());
    return find_cores(
        a, [compiled](const Structure& b) { return compiled->evaluate(b); }, k, in_s, exec);
}

PscResult psc_check(const Formula& phi, int k, const ClassSample& sample, Execution exec) {
    PscResult result;
    Membership in_s = sample.member ? sample.member : class_membership("all");
    for (int i = 0; i < static_cast<int>(sample.structures.size()); ++i) {
        const Structure& a = sample.structures[i];
        if (!evaluate(a, phi)) continue;
        auto cores = find_cores(a, phi, k, in_s, exec);
        if (cores.empty()) {
            result.holds = false;
            result.failing = i;
            return result;
        }
        CoreCertificate cert{i, cores.front(), {}};
        cert.transcript.push_back("subsets=" + std::to_string((1L << a.size()) - 1));
        cert.transcript.push_back("cores=" + std::to_string(cores.size()));
        result.certificates.push_back(std::move(cert));
    }
    return result;
}

namespace {

std::vector<std::string> numbered(const char* stem, int count) {
    std::vector<std::string> out;
    for (int i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

Formula relativized_psi(const Formula& phi, int k, int p, const std::vector<std::string>& constants) {
    if (!is_sentence(phi)) throw InvalidArgument("translation needs a sentence");
    if (k < 0 || p < 1) throw InvalidArgument("need k >= 0 and p >= 1");
    Formula psi = Formula::implies(size_bound_sentence(k + p), phi);
    std::vector<std::string> vars = numbered("x", k);
    for (auto& y : numbered("y", p)) vars.push_back(std::move(y));
    return relativize(psi, vars, constants);
}

}  // namespace

PrefixSentence translate_to_exists_forall(const Formula& phi, int k, int p,
                                          const std::vector<std::string>& constants) {
    return assemble_prefix(k, p, relativized_psi(phi, k, p, constants));
}

Formula core_formula(const Formula& phi, int k, int p, const std::vector<std::string>& constants) {
    return to_formula(assemble_prefix({}, numbered("y", p), relativized_psi(phi, k, p, constants)));
}

std::vector<int> sample_disagreements(const Formula& a, const Formula& b, const ClassSample& sample) {
    const int n = static_cast<int>(sample.structures.size());
    std::vector<char> differ(n, 0);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            const Structure& s = sample.structures[i];
            differ[i] = evaluate(s, a) != evaluate(s, b);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (differ[i]) out.push_back(i);
    return out;
}

AutoTranslation translate_auto(const Formula& phi, int k, const ClassSample& sample, int p_cap) {
    if (p_cap < 1) throw InvalidArgument("p cap must be at least 1");
    AutoTranslation out;
    for (int p = 1; p <= p_cap; p *= 2) {
        PrefixSentence s = translate_to_exists_forall(phi, k, p);
        out.p = p;
        out.tried.push_back(p);
        out.disagreements = sample_disagreements(phi, to_formula(s), sample);
        if (out.disagreements.empty()) {
            out.sentence = std::move(s);
            break;
        }
    }
    return out;
}

Formula atomic_diagram_sentence(const Structure& a) {
    const Vocabulary& v = a.vocab();
    if (v.constant_count() != 0) throw InvalidArgument("atomic diagrams need a constant-free vocabulary");
    const int n = a.size();
    auto z = [](int i) { return Term::var("z" + std::to_string(i + 1)); };
    std::vector<Formula> facts;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) facts.push_back(Formula::negate(Formula::equals(z(i), z(j))));
    for (int p = 0; p < v.predicate_count(); ++p) {
        const int r = v.arity(p);
        Tuple t(r, 0);
        for (;;) {
            std::vector<Term> args;
            for (Element e : t) args.push_back(z(e));
            Formula at = Formula::atom(v.predicates()[p].name, std::move(args));
            facts.push_back(a.holds(p, t) ? at : Formula::negate(at));
            int i = r - 1;
            while (i >= 0 && ++t[i] == n) t[i--] = 0;
            if (i < 0) break;
        }
    }
    Formula body = Formula::conj(std::move(facts));
    for (int i = n - 1; i >= 0; --i) body = Formula::exists(z(i).name, body);
    return body;
}

MinimalModels forall_star_from_minimal_models(const Membership& in_class,
                                              const ClassSample& sample) {
    if (!sample.closed_under_substructures)
        throw InvalidArgument("minimal models need a sample closed under substructures");
    std::vector<int> outside;
    for (int i = 0; i < static_cast<int>(sample.structures.size()); ++i)
        if (!in_class(sample.structures[i])) outside.push_back(i);
    std::sort(outside.begin(), outside.end(), [&](int x, int y) {
        return sample.structures[x].size() < sample.structures[y].size();
    });
    std::vector<Structure> minimal;
    for (int i : outside) {
        const Structure& a = sample.structures[i];
        bool covered = std::any_of(minimal.begin(), minimal.end(),
                                   [&](const Structure& b) { return find_embedding(b, a).has_value(); });
        if (covered) continue;
        minimal.push_back(a);
        if (static_cast<int>(minimal.size()) > kMinimalModelGuard)
            throw GuardExceeded("too many minimal models");
    }
    std::vector<Formula> diagrams;
    for (const auto& b : minimal) diagrams.push_back(atomic_diagram_sentence(b));
    Formula sentence = simplify(Formula::negate(Formula::disj(std::move(diagrams))));

    MinimalModels out{sentence, std::move(minimal), {}};
    for (int i = 0; i < static_cast<int>(sample.structures.size()); ++i)
        if (evaluate(sample.structures[i], sentence) != in_class(sample.structures[i]))
            out.disagreements.push_back(i);
    return out;
}

}  // namespace fmtk
