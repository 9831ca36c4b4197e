#include "fmtk/text_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "fmtk/error.hpp"

namespace fmtk {

namespace {

struct Line {
    std::size_t number;
    std::string text;
};

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view raw = text.substr(pos, nl - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::string t = trim(raw);
        if (!t.empty()) out.push_back({number, std::move(t)});
        pos = nl + 1;
    }
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

int to_int(std::string_view s, std::size_t line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("expected an integer, got '" + std::string(s) + "'", line);
    return v;
}

/// "key: rest" -> rest, if the line starts with the key.
std::optional<std::string> field(const std::string& line, std::string_view key) {
    if (line.size() <= key.size() || line.compare(0, key.size(), key) != 0 ||
        line[key.size()] != ':')
        return std::nullopt;
    return trim(std::string_view(line).substr(key.size() + 1));
}

std::vector<Tuple> parse_tuples(const std::string& text, std::size_t line) {
    std::vector<Tuple> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != '(') throw ParseError("expected '(' in tuple list", line);
        std::size_t close = text.find(')', i);
        if (close == std::string::npos) throw ParseError("unterminated tuple", line);
        Tuple t;
        std::stringstream parts(text.substr(i + 1, close - i - 1));
        for (std::string item; std::getline(parts, item, ',');) t.push_back(to_int(trim(item), line));
        out.push_back(std::move(t));
        i = close + 1;
    }
    return out;
}

}  // namespace

std::vector<NamedStructure> parse_structures(std::string_view text) {
    std::vector<NamedStructure> out;
    auto lines = content_lines(text);
    std::size_t i = 0;
    while (i < lines.size()) {
        auto head = words(lines[i].text);
        if (head.size() != 2 || head[0] != "structure")
            throw ParseError("expected 'structure NAME'", lines[i].number);
        const std::string name = head[1];
        const std::size_t start = lines[i].number;
        ++i;
        std::vector<PredicateSymbol> preds;
        std::optional<int> universe;
        std::vector<std::pair<std::string, std::vector<Tuple>>> facts;
        std::vector<std::pair<std::string, int>> consts;
        for (; i < lines.size() && words(lines[i].text)[0] != "structure"; ++i) {
            const auto& [number, line] = lines[i];
            if (auto v = field(line, "vocab")) {
                std::stringstream list(*v);
                for (std::string item; std::getline(list, item, ',');) {
                    item = trim(item);
                    if (item.empty()) continue;
                    auto slash = item.find('/');
                    if (slash == std::string::npos) throw ParseError("expected NAME/ARITY", number);
                    preds.push_back({item.substr(0, slash), to_int(item.substr(slash + 1), number)});
                }
            } else if (auto u = field(line, "universe")) {
                universe = to_int(*u, number);
            } else if (line.rfind("const ", 0) == 0) {
                auto w = words(line);
                if (w.size() != 4 || w[2] != "=") throw ParseError("expected 'const NAME = E'", number);
                consts.emplace_back(w[1], to_int(w[3], number));
            } else if (auto colon = line.find(':'); colon != std::string::npos) {
                facts.emplace_back(trim(line.substr(0, colon)),
                                   parse_tuples(line.substr(colon + 1), number));
            } else {
                throw ParseError("unrecognized line", number);
            }
        }
        if (!universe) throw ParseError("structure '" + name + "' has no universe line", start);
        std::vector<std::string> const_names;
        for (const auto& c : consts) const_names.push_back(c.first);
        try {
            StructureBuilder b(Vocabulary(preds, const_names), *universe);
            for (auto& [pred, tuples] : facts) {
                if (!b.vocab().find_predicate(pred))
                    throw ParseError("unknown predicate '" + pred + "'", start);
                for (auto& t : tuples) b.add(pred, std::move(t));
            }
            for (const auto& [c, e] : consts) b.set_constant(c, e);
            out.push_back({name, b.build()});
        } catch (const InvalidArgument& e) {
            throw ParseError(std::string("structure '") + name + "': " + e.what(), start);
        }
    }
    return out;
}

std::string format_structure(const std::string& name, const Structure& s) {
    std::ostringstream out;
    const Vocabulary& v = s.vocab();
    out << "structure " << name << "\nvocab: ";
    for (int p = 0; p < v.predicate_count(); ++p)
        out << (p ? ", " : "") << v.predicates()[p].name << "/" << v.arity(p);
    out << "\nuniverse: " << s.size() << "\n";
    for (int p = 0; p < v.predicate_count(); ++p) {
        out << v.predicates()[p].name << ":";
        for (const auto& t : s.tuples(p)) {
            out << " (";
            for (std::size_t j = 0; j < t.size(); ++j) out << (j ? "," : "") << t[j];
            out << ")";
        }
        out << "\n";
    }
    for (int c = 0; c < v.constant_count(); ++c)
        out << "const " << v.constants()[c] << " = " << s.constant(c) << "\n";
    return out.str();
}

std::vector<NamedTree> parse_trees(std::string_view text) {
    std::vector<NamedTree> out;
    auto lines = content_lines(text);
    std::size_t i = 0;
    while (i < lines.size()) {
        auto head = words(lines[i].text);
        if (head.size() != 2 || head[0] != "tree") throw ParseError("expected 'tree NAME'", lines[i].number);
        const std::string name = head[1];
        const std::size_t start = lines[i].number;
        ++i;
        std::vector<std::string> alphabet;
        std::vector<std::optional<std::pair<int, int>>> nodes;  // (parent, label)
        std::vector<int> marks;
        for (; i < lines.size() && words(lines[i].text)[0] != "tree"; ++i) {
            const auto& [number, line] = lines[i];
            if (auto a = field(line, "alphabet")) {
                alphabet = words(*a);
            } else if (auto m = field(line, "marks")) {
                for (const auto& w : words(*m)) marks.push_back(to_int(w, number));
            } else {
                auto w = words(line);
                bool root = w.size() == 5 && w[4] == "root";
                bool child = w.size() == 6 && w[4] == "parent";
                if (w.empty() || w[0] != "node" || w[2] != "label" || !(root || child))
                    throw ParseError("expected 'node ID label L (root | parent P)'", number);
                int id = to_int(w[1], number);
                auto letter = std::find(alphabet.begin(), alphabet.end(), w[3]);
                if (letter == alphabet.end()) throw ParseError("letter not in alphabet", number);
                if (id < 0) throw ParseError("negative node id", number);
                if (static_cast<int>(nodes.size()) <= id) nodes.resize(id + 1);
                if (nodes[id]) throw ParseError("node listed twice", number);
                nodes[id] = std::pair{root ? -1 : to_int(w[5], number),
                                      static_cast<int>(letter - alphabet.begin())};
            }
        }
        std::vector<int> parent, label;
        for (const auto& n : nodes) {
            if (!n) throw ParseError("tree '" + name + "' skips a node id", start);
            parent.push_back(n->first);
            label.push_back(n->second);
        }
        try {
            out.push_back({name, SigmaTree(alphabet, parent, label), marks});
        } catch (const InvalidArgument& e) {
            throw ParseError(std::string("tree '") + name + "': " + e.what(), start);
        }
        for (int m : marks)
            if (m < 0 || m >= out.back().tree.size()) throw ParseError("mark out of range", start);
    }
    return out;
}

std::string format_tree(const std::string& name, const SigmaTree& t, const std::vector<int>& marks) {
    std::ostringstream out;
    out << "tree " << name << "\nalphabet:";
    for (const auto& a : t.alphabet()) out << " " << a;
    out << "\n";
    for (int v = 0; v < t.size(); ++v) {
        out << "node " << v << " label " << t.alphabet()[t.label(v)];
        if (t.parent(v) < 0)
            out << " root\n";
        else
            out << " parent " << t.parent(v) << "\n";
    }
    if (!marks.empty()) {
        out << "marks:";
        for (int m : marks) out << " " << m;
        out << "\n";
    }
    return out.str();
}

namespace {

class SexprParser {
public:
    SexprParser(std::string_view text, const std::map<std::string, Structure>& leaves)
        : text_(text), leaves_(leaves) {}

    ExpressionTree parse() {
        ExpressionTree t = expr();
        skip();
        if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
        return t;
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string token() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '(' && text_[pos_] != ')')
            ++pos_;
        if (start == pos_) throw ParseError("expected a name", pos_);
        return std::string(text_.substr(start, pos_ - start));
    }

    ExpressionTree expr() {
        skip();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            const std::size_t at = pos_;
            std::string op = token();
            ExpressionTree result = [&] {
                if (op == "!") return ExpressionTree::unary(OpKind::Complement, expr());
                OpKind kind;
                if (op == "u") kind = OpKind::Union;
                else if (op == "x") kind = OpKind::Product;
                else if (op == "t") kind = OpKind::Tensor;
                else if (op == "bw") kind = OpKind::Bowtie;
                else throw ParseError("unknown operation '" + op + "'", at);
                ExpressionTree l = expr();
                ExpressionTree r = expr();
                return ExpressionTree::binary(kind, l, r);
            }();
            skip();
            if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return result;
        }
        const std::size_t at = pos_;
        std::string name = token();
        auto it = leaves_.find(name);
        if (it == leaves_.end()) throw ParseError("unknown structure '" + name + "'", at);
        return ExpressionTree::leaf(it->second);
    }

    std::string_view text_;
    const std::map<std::string, Structure>& leaves_;
    std::size_t pos_ = 0;
};

}  // namespace

ExpressionTree parse_expression(std::string_view text, const std::map<std::string, Structure>& leaves) {
    std::string stripped;
    for (const auto& l : content_lines(text)) stripped += l.text + " ";
    return SexprParser(stripped, leaves).parse();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

}  // namespace fmtk
