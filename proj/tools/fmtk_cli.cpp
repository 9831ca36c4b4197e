// Batch front-end: every command prints a human-readable summary followed by a
// key=value block. Exit codes: 0 ok, 1 usage or input error, 2 guard exceeded,
// 3 verification failure.
#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fmtk/algebra.hpp"
#include "fmtk/equiv.hpp"
#include "fmtk/error.hpp"
#include "fmtk/formula.hpp"
#include "fmtk/generators.hpp"
#include "fmtk/shrink.hpp"
#include "fmtk/text_io.hpp"
#include "fmtk/translate.hpp"
#include "fmtk/wqo.hpp"

using namespace fmtk;

namespace {

constexpr unsigned long long kDefaultSeed = 20131;

struct Globals {
    int m = 1;
    int k = 0;
    unsigned long long seed = kDefaultSeed;
    int max_size = 4096;
    std::string out;
};

class Report {
public:
    template <class T>
    void set(const std::string& key, const T& value) {
        std::ostringstream s;
        s << std::boolalpha << value;
        entries_.emplace_back(key, s.str());
    }
    void print(std::ostream& os) const {
        os << "--- report\n";
        for (const auto& [k, v] : entries_) os << k << "=" << v << "\n";
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (in >> item) {
        std::stringstream parts(item);
        for (std::string p; std::getline(parts, p, ',');)
            if (!p.empty()) out.push_back(std::stoi(p));
    }
    return out;
}

std::string join(const std::vector<int>& xs, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
    return out;
}

void check_size(const Globals& g, int size, const std::string& what) {
    if (size > g.max_size)
        throw GuardExceeded(what + " has " + std::to_string(size) + " elements, above --max-size");
}

std::vector<NamedStructure> load_structures(const Globals& g, const std::string& path) {
    auto items = parse_structures(read_text_file(path));
    if (items.empty()) throw InvalidArgument(path + " holds no structure");
    for (const auto& it : items) check_size(g, it.structure.size(), "structure " + it.name);
    return items;
}

void emit(const Globals& g, const std::string& artifact) {
    if (g.out.empty())
        std::cout << artifact;
    else
        write_text_file(g.out, artifact);
}

int finish(const Report& r, bool verified) {
    r.print(std::cout);
    if (!verified) {
        std::cerr << "verification failed\n";
        return 3;
    }
    return 0;
}

// equiv ---------------------------------------------------------------------------

int cmd_equiv(const Globals& g, const std::vector<std::string>& files) {
    std::vector<NamedStructure> items;
    for (const auto& f : files) {
        auto more = load_structures(g, f);
        items.insert(items.end(), more.begin(), more.end());
    }
    if (items.size() < 2) throw InvalidArgument("equiv needs two structures");
    EquivSession session;
    const auto& a = items[0];
    const auto& b = items[1];
    bool eq = session.m_equivalent(a.structure, b.structure, g.m);
    std::cout << a.name << " vs " << b.name << " at m=" << g.m << ": "
              << (eq ? "equivalent" : "distinguishable") << "\n";
    Report r;
    r.set("command", "equiv");
    r.set("m", g.m);
    r.set("a", a.name);
    r.set("b", b.name);
    r.set("verdict", eq ? "equivalent" : "distinguishable");
    r.set("type_a", session.rank_type(a.structure, {}, g.m).hex());
    r.set("type_b", session.rank_type(b.structure, {}, g.m).hex());
    return finish(r, true);
}

// shrink --------------------------------------------------------------------------

int cmd_shrink(const Globals& g, const std::string& file, const std::string& marks_text) {
    auto trees = parse_trees(read_text_file(file));
    if (trees.empty()) throw InvalidArgument(file + " holds no tree");
    const NamedTree& in = trees.front();
    check_size(g, in.tree.size(), "tree " + in.name);
    std::vector<int> marks = marks_text.empty() ? in.marks : parse_int_list(marks_text);

    EquivSession session;
    const bool word = in.tree.is_chain() && marks.empty();
    ShrinkOutcome out = [&] {
        if (!word) return shrink_tree(in.tree, marks, g.m, g.k, &session);
        SubtreeResult res = shrink_word(in.tree, g.m, {}, &session);
        ShrinkReport rep = verify_shrink(in.tree, res, marks, g.m, &session);
        return ShrinkOutcome{std::move(res), std::move(rep)};
    }();
    std::vector<int> new_marks;
    for (int w : marks)
        new_marks.push_back(static_cast<int>(
            std::find(out.result.origin.begin(), out.result.origin.end(), w) - out.result.origin.begin()));
    emit(g, format_tree(in.name + "_shrunk", out.result.tree, new_marks));

    const auto& rep = out.report;
    std::cerr << in.name << ": " << rep.input_size << " -> " << rep.output_size << " nodes\n";
    Report r;
    r.set("command", "shrink");
    r.set("mode", word ? "word" : "tree");
    r.set("m", g.m);
    r.set("k", g.k);
    r.set("input_size", rep.input_size);
    r.set("output_size", rep.output_size);
    for (const auto& ph : rep.phases)
        r.set("phase." + ph.name, std::to_string(ph.size_before) + "->" +
                                       std::to_string(ph.size_after) + " steps=" +
                                       std::to_string(ph.steps));
    r.set("origin", join(out.result.origin));
    r.set("contains_w", rep.contains_w);
    r.set("is_subtree", rep.is_subtree);
    r.set("equivalent", rep.equivalent);
    return finish(r, rep.ok());
}

// translate / cores ---------------------------------------------------------------

ClassSample make_sample(const std::string& cls, int min_size, int max_size,
                        const std::string& vocab_text) {
    if (cls == "cycles") return cycle_sample(min_size, max_size);
    if (cls == "paths") return path_sample(max_size);
    if (cls == "linorders") return linear_order_sample(max_size);
    if (cls == "all") {
        auto parsed = parse_structures("structure v\nvocab: " + vocab_text + "\nuniverse: 1\n");
        return all_structures_sample(parsed.front().structure.vocab(), max_size);
    }
    throw InvalidArgument("no sample generator for class " + cls);
}

int cmd_translate(const Globals& g, const std::string& formula_file, const std::string& p_text,
                  int p_cap, const std::string& cls, int min_size, int sample_max,
                  const std::string& vocab_text) {
    Formula phi = parse(read_text_file(formula_file));
    ClassSample sample = make_sample(cls, min_size, sample_max, vocab_text);
    for (const auto& s : sample.structures) check_size(g, s.size(), "sample structure");

    std::optional<PrefixSentence> sentence;
    int p = 0;
    std::vector<int> disagree;
    if (p_text == "auto") {
        AutoTranslation a = translate_auto(phi, g.k, sample, p_cap);
        sentence = a.sentence;
        p = a.p;
        disagree = a.disagreements;
    } else {
        p = std::stoi(p_text);
        sentence = translate_to_exists_forall(phi, g.k, p);
        disagree = sample_disagreements(phi, to_formula(*sentence), sample);
    }
    if (sentence) std::cout << to_string(to_formula(*sentence)) << "\n";
    PscResult psc = psc_check(phi, g.k, sample);

    Report r;
    r.set("command", "translate");
    r.set("formula", to_string(phi));
    r.set("k", g.k);
    r.set("p", p);
    r.set("class", cls);
    r.set("sample_size", sample.structures.size());
    r.set("psc_on_sample", psc.holds);
    r.set("agreement", disagree.empty());
    r.set("disagreements", join(disagree));
    r.set("scope", "sample-bounded");
    return finish(r, sentence.has_value() && disagree.empty());
}

int cmd_cores(const Globals& g, const std::string& file, const std::string& formula_text,
              const std::string& cls) {
    auto items = load_structures(g, file);
    Formula phi = parse(formula_text, &items.front().structure.vocab());
    Membership in_s = class_membership(cls);
    Report r;
    r.set("command", "cores");
    r.set("formula", to_string(phi));
    r.set("k", g.k);
    for (const auto& it : items) {
        bool model = evaluate(it.structure, phi);
        std::string listed;
        if (model) {
            for (const auto& c : find_cores(it.structure, phi, g.k, in_s))
                listed += "{" + join(c) + "}";
        }
        std::cout << it.name << (model ? ": cores " + (listed.empty() ? "none" : listed)
                                       : ": not a model") << "\n";
        r.set(it.name + ".model", model);
        r.set(it.name + ".cores", listed);
    }
    return finish(r, true);
}

// wqo-scan ------------------------------------------------------------------------

int cmd_wqo_scan(const Globals& g, const std::string& file, bool antichain) {
    auto items = load_structures(g, file);
    std::vector<Structure> seq;
    for (const auto& it : items) seq.push_back(it.structure);
    Report r;
    r.set("command", "wqo-scan");
    r.set("length", seq.size());
    auto pair = first_embedding_pair(seq);
    if (pair) {
        std::cout << items[pair->first].name << " embeds into " << items[pair->second].name << "\n";
        r.set("pair", std::to_string(pair->first) + "," + std::to_string(pair->second));
    } else {
        std::cout << "no embedding pair\n";
        r.set("pair", "none");
    }
    if (antichain) {
        auto cert = antichain_certificate(seq);
        r.set("antichain", cert.antichain);
        if (cert.failing)
            r.set("antichain_failing",
                  std::to_string(cert.failing->first) + "," + std::to_string(cert.failing->second));
    }
    return finish(r, true);
}

// algebra -------------------------------------------------------------------------

std::map<std::string, Structure> leaf_table(const std::vector<NamedStructure>& items) {
    std::map<std::string, Structure> t;
    for (const auto& it : items) t.emplace(it.name, it.structure);
    return t;
}

int cmd_algebra_eval(const Globals& g, const std::string& expr_file, const std::string& structs) {
    ExpressionTree t = parse_expression(read_text_file(expr_file), leaf_table(load_structures(g, structs)));
    Structure s = eval_expression_tree(t);
    check_size(g, s.size(), "evaluation");
    emit(g, format_structure("value", s));
    Report r;
    r.set("command", "algebra-eval");
    r.set("height", t.height());
    r.set("size", s.size());
    return finish(r, true);
}

int cmd_algebra_shrink(const Globals& g, const std::string& expr_file, const std::string& structs,
                       const std::string& marks_text, const std::string& leaf_mode) {
    auto items = load_structures(g, structs);
    ExpressionTree t = parse_expression(read_text_file(expr_file), leaf_table(items));
    LeafShrinker shrinker = leaf_mode == "sigma" ? sigma_tree_leaf_shrinker(g.k) : identity_leaf_shrinker();
    EquivSession session;
    AlgebraicShrink s = shrink_algebraic(t, parse_int_list(marks_text), g.m, g.k, shrinker, &session);
    std::vector<std::string> names;
    std::string artifact;
    for (std::size_t i = 0; i < s.certificate.leaves().size(); ++i) {
        names.push_back("leaf" + std::to_string(i));
        artifact += format_structure(names.back(), s.certificate.leaves()[i]);
    }
    artifact += "# expression: " + s.certificate.to_string(names) + "\n";
    artifact += format_structure("value", s.output);
    emit(g, artifact);

    const auto& rep = s.report;
    Report r;
    r.set("command", "algebra-shrink");
    r.set("m", g.m);
    r.set("k", g.k);
    r.set("input_size", rep.input_size);
    r.set("output_size", rep.output_size);
    r.set("height_before", rep.height_before);
    r.set("height_after", rep.height_after);
    r.set("origin", join(s.origin));
    r.set("in_class", rep.in_class);
    r.set("contains_w", rep.contains_w);
    r.set("is_substructure", rep.is_substructure);
    r.set("equivalent", rep.equivalent);
    return finish(r, rep.ok());
}

// gen -----------------------------------------------------------------------------

int cmd_gen(const Globals& g, const std::string& cls, int n, const std::string& dims,
            const std::string& marks_text, int random_marks, bool allow_large) {
    Structure s = [&] {
        if (cls == "linorder") return make_linear_order(n);
        if (cls == "path") return make_path(n);
        if (cls == "cycle") return make_cycle(n);
        if (cls == "hn") return make_Hn(n, allow_large);
        if (cls == "gn") return make_Gn(n, allow_large);
        if (cls == "grid") return make_grid(parse_int_list(dims));
        throw InvalidArgument("unknown class " + cls);
    }();
    check_size(g, s.size(), cls);
    std::vector<int> marks = parse_int_list(marks_text);
    if (random_marks > 0) {
        std::mt19937_64 rng(g.seed);
        std::uniform_int_distribution<int> pick(0, s.size() - 1);
        for (int i = 0; i < random_marks; ++i) marks.push_back(pick(rng));
    }
    if (!marks.empty()) s = to_Sk_pred(s, marks);
    emit(g, format_structure(cls + std::to_string(n), s));
    Report r;
    r.set("command", "gen");
    r.set("class", cls);
    r.set("size", s.size());
    r.set("seed", g.seed);
    r.set("marks", join(marks));
    return finish(r, true);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite model toolkit: m-equivalence, shrinking, translation"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--m", g.m, "Quantifier rank")->check(CLI::NonNegativeNumber);
    app.add_option("--k", g.k, "Marked-set / core size")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", g.seed, "Seed for sampled choices");
    app.add_option("--max-size", g.max_size, "Largest structure accepted")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Write the main artifact here instead of stdout");

    std::vector<std::string> equiv_files;
    auto* equiv = app.add_subcommand("equiv", "Decide m-equivalence of two structures");
    equiv->add_option("files", equiv_files, "Structure file(s)")->required();

    std::string shrink_file, shrink_marks;
    auto* shrink = app.add_subcommand("shrink", "Shrink a tree or word keeping marks");
    shrink->add_option("file", shrink_file, "Tree file")->required();
    shrink->add_option("--marks", shrink_marks, "Override the file's marks");

    std::string formula_file, p_text = "auto", cls = "cycles", vocab_text = "E/2";
    int p_cap = 16, min_size = 3, sample_max = 8;
    auto* translate = app.add_subcommand("translate", "Translate a sentence to exists^k forall^p form");
    translate->add_option("file", formula_file, "Formula file")->required();
    translate->add_option("--p", p_text, "Universal block size or 'auto'");
    translate->add_option("--p-cap", p_cap, "Largest p tried in auto mode");
    translate->add_option("--class", cls, "Sample class: cycles, paths, linorders, all");
    translate->add_option("--min-size", min_size, "Smallest sample structure (cycles)");
    translate->add_option("--sample-max", sample_max, "Largest sample structure");
    translate->add_option("--vocab", vocab_text, "Vocabulary for --class all");

    std::string cores_file, cores_formula, cores_class = "all";
    auto* cores = app.add_subcommand("cores", "List cores of each structure");
    cores->add_option("file", cores_file, "Structure file")->required();
    cores->add_option("--formula", cores_formula, "Sentence defining the subclass")->required();
    cores->add_option("--class", cores_class, "Ambient class membership test");

    std::string scan_file;
    bool antichain = false;
    auto* scan = app.add_subcommand("wqo-scan", "First embedding pair in a sequence");
    scan->add_option("file", scan_file, "Structure file, in sequence order")->required();
    scan->add_flag("--antichain", antichain, "Also check the antichain property");

    std::string expr_file, structs_file, alg_marks, leaf_mode = "identity";
    auto* aeval = app.add_subcommand("algebra-eval", "Evaluate an expression tree");
    aeval->add_option("file", expr_file, "Expression file")->required();
    aeval->add_option("--structures", structs_file, "Leaf structures")->required();
    auto* ashrink = app.add_subcommand("algebra-shrink", "Shrink an expression tree over {u, !}");
    ashrink->add_option("file", expr_file, "Expression file")->required();
    ashrink->add_option("--structures", structs_file, "Leaf structures")->required();
    ashrink->add_option("--marks", alg_marks, "Marked elements of the evaluation");
    ashrink->add_option("--leaf", leaf_mode, "Leaf shrinker: identity or sigma");

    std::string gen_class, dims, gen_marks;
    int gen_n = 1, random_marks = 0;
    bool allow_large = false;
    auto* gen = app.add_subcommand("gen", "Generate a structure");
    gen->add_option("--class", gen_class, "linorder, path, cycle, hn, gn, grid")->required();
    gen->add_option("--n", gen_n, "Size parameter");
    gen->add_option("--dims", dims, "Grid dimensions, e.g. 3,4");
    gen->add_option("--marks", gen_marks, "Elements marked by a unary R");
    gen->add_option("--random-marks", random_marks, "Add this many seeded random marks");
    gen->add_flag("--allow-large", allow_large, "Lift the H_n/G_n size guard");

    for (auto* sub : {equiv, shrink, translate, cores, scan, aeval, ashrink, gen}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*equiv) return cmd_equiv(g, equiv_files);
        if (*shrink) return cmd_shrink(g, shrink_file, shrink_marks);
        if (*translate)
            return cmd_translate(g, formula_file, p_text, p_cap, cls, min_size, sample_max, vocab_text);
        if (*cores) return cmd_cores(g, cores_file, cores_formula, cores_class);
        if (*scan) return cmd_wqo_scan(g, scan_file, antichain);
        if (*aeval) return cmd_algebra_eval(g, expr_file, structs_file);
        if (*ashrink) return cmd_algebra_shrink(g, expr_file, structs_file, alg_marks, leaf_mode);
        if (*gen) return cmd_gen(g, gen_class, gen_n, dims, gen_marks, random_marks, allow_large);
    } catch (const GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return 2;
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
