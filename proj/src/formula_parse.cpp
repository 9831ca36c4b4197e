#include <cctype>
#include <vector>

#include "fmtk/error.hpp"
#include "fmtk/formula.hpp"

namespace fmtk {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Eq, Bang, Amp, Bar, Arrow, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
            i = j;
            continue;
        }
        switch (c) {
            case '(': out.push_back({Tok::LParen, "(", i}); break;
            case ')': out.push_back({Tok::RParen, ")", i}); break;
            case ',': out.push_back({Tok::Comma, ",", i}); break;
            case '.': out.push_back({Tok::Dot, ".", i}); break;
            case '=': out.push_back({Tok::Eq, "=", i}); break;
            case '!': out.push_back({Tok::Bang, "!", i}); break;
            case '&': out.push_back({Tok::Amp, "&", i}); break;
            case '|': out.push_back({Tok::Bar, "|", i}); break;
            case '-':
                if (i + 1 < s.size() && s[i + 1] == '>') {
                    out.push_back({Tok::Arrow, "->", i});
                    ++i;
                    break;
                }
                throw ParseError("expected '->'", i);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        ++i;
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

bool is_keyword(const std::string& s) {
    return s == "exists" || s == "forall" || s == "true" || s == "false";
}

class Parser {
public:
    Parser(std::string_view text, const Vocabulary* vocab) : toks_(tokenize(text)), vocab_(vocab) {}

    Formula run() {
        Formula f = implication();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, peek().pos); }
    void expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        ++pos_;
    }

    Formula implication() {
        Formula lhs = disjunction();
        if (peek().kind == Tok::Arrow) {
            ++pos_;
            return Formula::implies(std::move(lhs), implication());
        }
        return lhs;
    }

    Formula disjunction() {
        std::vector<Formula> parts{conjunction()};
        while (peek().kind == Tok::Bar) {
            ++pos_;
            parts.push_back(conjunction());
        }
        return Formula::disj(std::move(parts));
    }

    Formula conjunction() {
        std::vector<Formula> parts{unary()};
        while (peek().kind == Tok::Amp) {
            ++pos_;
            parts.push_back(unary());
        }
        return Formula::conj(std::move(parts));
    }

    Formula unary() {
        if (peek().kind == Tok::Bang) {
            ++pos_;
            return Formula::negate(unary());
        }
        if (peek().kind == Tok::Ident && (peek().text == "exists" || peek().text == "forall")) {
            bool ex = next().text == "exists";
            if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected variable");
            std::string var = next().text;
            if (vocab_ && vocab_->has_name(var)) fail("variable " + var + " shadows a vocabulary symbol");
            expect(Tok::Dot, "'.'");
            bound_.push_back(var);
            Formula body = implication();
            bound_.pop_back();
            return ex ? Formula::exists(std::move(var), std::move(body))
                      : Formula::forall(std::move(var), std::move(body));
        }
        return primary();
    }

    Formula primary() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            ++pos_;
            Formula f = implication();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind != Tok::Ident) fail("expected formula");
        if (t.text == "true") {
            ++pos_;
            return Formula::make_true();
        }
        if (t.text == "false") {
            ++pos_;
            return Formula::make_false();
        }
        std::size_t at = t.pos;
        std::string name = next().text;
        if (peek().kind == Tok::LParen) {
            ++pos_;
            std::vector<Term> args{term()};
            while (peek().kind == Tok::Comma) {
                ++pos_;
                args.push_back(term());
            }
            expect(Tok::RParen, "')'");
            if (vocab_) {
                auto p = vocab_->find_predicate(name);
                if (!p) throw ParseError("unknown predicate " + name, at);
                if (vocab_->arity(*p) != static_cast<int>(args.size()))
                    throw ParseError("arity mismatch for " + name, at);
            }
            return Formula::atom(std::move(name), std::move(args));
        }
        if (peek().kind == Tok::Eq) {
            ++pos_;
            Term lhs = make_term(name, at);
            return Formula::equals(std::move(lhs), term());
        }
        fail("expected '(' or '=' after " + name);
    }

    Term term() {
        if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected term");
        std::size_t at = peek().pos;
        return make_term(next().text, at);
    }

    Term make_term(const std::string& name, std::size_t at) {
        if (is_keyword(name)) throw ParseError("keyword used as term", at);
        for (const auto& b : bound_)
            if (b == name) return Term::var(name);
        if (vocab_) {
            if (vocab_->find_constant(name)) return Term::constant(name);
            if (vocab_->find_predicate(name)) throw ParseError("predicate " + name + " used as term", at);
        }
        return Term::var(name);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Vocabulary* vocab_;
    std::vector<std::string> bound_;
};

}  // namespace

Formula parse(std::string_view text, const Vocabulary* vocab) { return Parser(text, vocab).run(); }

}  // namespace fmtk
