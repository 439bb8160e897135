#include "ddlite/syntax/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstring>
#include <set>

#include "ddlite/error.hpp"
#include "ddlite/syntax/operators.hpp"

namespace ddlite::syntax {

namespace {

enum class Tok { Name, QName, Var, Int, Float, Str, Symbol, Punct, Solo, End, Eof };

struct Token {
    Tok kind = Tok::Eof;
    std::string text;
    std::int64_t ival = 0;
    double fval = 0.0;
    int line = 1;
    int column = 1;
    bool layout_before = false;
    // `% name: id` directive seen since the previous token
    std::string directive;
};

bool symbol_char(char c) { return c != '\0' && std::strchr("+-*/\\^<>=~:.?@#&$", c) != nullptr; }
bool alnum_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    Lexer(std::string_view text, std::string file) : src_(text), file_(std::move(file)) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            bool layout = skip_layout();
            Token t;
            t.line = line_;
            t.column = col_;
            t.layout_before = layout || out.empty();
            t.directive = std::move(pending_);
            pending_.clear();
            if (pos_ >= src_.size()) {
                t.kind = Tok::Eof;
                out.push_back(std::move(t));
                return out;
            }
            lex_one(t);
            out.push_back(std::move(t));
        }
    }

private:
    char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::Syntax, msg, SourceSpan{file_, line_, col_});
    }

    bool skip_layout() {
        bool any = false;
        for (;;) {
            char c = peek();
            if (c == '\0') return any;
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                any = true;
            } else if (c == '%') {
                std::size_t start = pos_ + 1;
                while (peek() != '\0' && peek() != '\n') advance();
                directive(src_.substr(start, pos_ - start));
                any = true;
            } else if (c == '/' && peek(1) == '*') {
                advance();
                advance();
                while (!(peek() == '*' && peek(1) == '/')) {
                    if (peek() == '\0') fail("unterminated block comment");
                    advance();
                }
                advance();
                advance();
                any = true;
            } else {
                return any;
            }
        }
    }

    void directive(std::string_view comment) {
        std::size_t i = 0;
        while (i < comment.size() && std::isspace(static_cast<unsigned char>(comment[i]))) ++i;
        if (comment.substr(i, 5) != "name:") return;
        i += 5;
        while (i < comment.size() && std::isspace(static_cast<unsigned char>(comment[i]))) ++i;
        std::size_t j = i;
        while (j < comment.size() && !std::isspace(static_cast<unsigned char>(comment[j]))) ++j;
        if (j > i) pending_ = std::string(comment.substr(i, j - i));
    }

    void lex_one(Token& t) {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(t);
        if (c == '_' || std::isupper(static_cast<unsigned char>(c))) {
            t.kind = Tok::Var;
            while (alnum_char(peek())) {
                t.text += peek();
                advance();
            }
            return;
        }
        if (std::islower(static_cast<unsigned char>(c))) {
            t.kind = Tok::Name;
            while (alnum_char(peek())) {
                t.text += peek();
                advance();
            }
            return;
        }
        if (c == '\'') {
            t.kind = Tok::QName;
            t.text = lex_quoted('\'');
            return;
        }
        if (c == '"') {
            t.kind = Tok::Str;
            t.text = lex_quoted('"');
            return;
        }
        if (std::strchr("()[]{},|", c)) {
            t.kind = Tok::Punct;
            t.text = std::string(1, c);
            advance();
            return;
        }
        if (c == '!' || c == ';') {
            t.kind = Tok::Solo;
            t.text = std::string(1, c);
            advance();
            return;
        }
        if (c == '.') {
            char n = peek(1);
            if (n == '\0' || n == '%' || std::isspace(static_cast<unsigned char>(n))) {
                t.kind = Tok::End;
                t.text = ".";
                advance();
                return;
            }
        }
        if (symbol_char(c)) {
            t.kind = Tok::Symbol;
            while (symbol_char(peek())) {
                // a trailing '.' that ends the clause is not part of the symbol
                if (peek() == '.' && !t.text.empty()) {
                    char n = peek(1);
                    if (n == '\0' || n == '%' || std::isspace(static_cast<unsigned char>(n))) break;
                }
                t.text += peek();
                advance();
            }
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    void lex_number(Token& t) {
        std::size_t start = pos_;
        bool is_float = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            is_float = true;
            advance();
            while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t k = 1;
            if (peek(1) == '+' || peek(1) == '-') k = 2;
            if (std::isdigit(static_cast<unsigned char>(peek(k)))) {
                is_float = true;
                for (std::size_t i = 0; i < k; ++i) advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
            }
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        const char* b = t.text.data();
        const char* e = b + t.text.size();
        if (is_float) {
            t.kind = Tok::Float;
            auto r = std::from_chars(b, e, t.fval);
            if (r.ec != std::errc()) fail("bad float literal " + t.text);
        } else {
            t.kind = Tok::Int;
            auto r = std::from_chars(b, e, t.ival);
            if (r.ec != std::errc()) fail("integer literal out of range " + t.text);
        }
    }

    std::string lex_quoted(char q) {
        std::string out;
        advance();
        for (;;) {
            char c = peek();
            if (c == '\0') fail("unterminated quoted text");
            if (c == q) {
                if (peek(1) == q) {
                    out += q;
                    advance();
                    advance();
                    continue;
                }
                advance();
                return out;
            }
            if (c == '\\') {
                advance();
                char e = peek();
                switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case '\\': out += '\\'; break;
                case '\'': out += '\''; break;
                case '"': out += '"'; break;
                default: fail(std::string("unknown escape \\") + e);
                }
                advance();
                continue;
            }
            out += c;
            advance();
        }
    }

    std::string_view src_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::string pending_;
};

class Parser {
public:
    Parser(std::string_view text, std::string file) : file_(file), toks_(Lexer(text, file).run()) {}

    const Token& peek(std::size_t k = 0) const {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }
    Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    bool at_eof() const { return peek().kind == Tok::Eof; }

    SourceSpan span_of(const Token& t) const { return {file_, t.line, t.column}; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw Error(Errc::Syntax, msg, span_of(t));
    }

    bool is_punct(const Token& t, const char* p) const { return t.kind == Tok::Punct && t.text == p; }

    void expect_punct(const char* p) {
        Token t = next();
        if (!is_punct(t, p)) fail(t, std::string("expected '") + p + "' but found '" + t.text + "'");
    }

    Term parse(int max_priority) {
        int left_priority = 0;
        Term left = primary(max_priority, left_priority);
        for (;;) {
            const Token& t = peek();
            std::string name;
            if (t.kind == Tok::Symbol || t.kind == Tok::Name)
                name = t.text;
            else if (is_punct(t, ","))
                name = ",";
            else
                break;
            auto op = infix_op(name);
            if (!op || op->priority > max_priority || left_priority > left_max(*op)) break;
            next();
            Term right = parse(right_max(*op));
            left = Term::compound(name, {left, right});
            left_priority = op->priority;
        }
        return left;
    }

    bool starts_term(const Token& t) const {
        switch (t.kind) {
        case Tok::Name:
        case Tok::QName:
        case Tok::Var:
        case Tok::Int:
        case Tok::Float:
        case Tok::Str:
        case Tok::Solo:
            return true;
        case Tok::Punct:
            return t.text == "(" || t.text == "[";
        case Tok::Symbol:
            return prefix_op(t.text).has_value() || !infix_op(t.text).has_value();
        default:
            return false;
        }
    }

    Term primary(int max_priority, int& priority) {
        priority = 0;
        Token t = next();
        switch (t.kind) {
        case Tok::Int:
            return Term::integer(t.ival);
        case Tok::Float:
            return Term::real(t.fval);
        case Tok::Var:
            if (t.text == "_") return Term::var("_G" + std::to_string(++anon_));
            return Term::var(t.text);
        case Tok::Str:
            return Term::constant(t.text);
        case Tok::Solo:
            return Term::constant(t.text);
        case Tok::Punct:
            if (t.text == "(") {
                Term inner = parse(1200);
                expect_punct(")");
                return inner;
            }
            if (t.text == "[") return list();
            fail(t, "unexpected '" + t.text + "'");
        case Tok::Name:
        case Tok::QName:
        case Tok::Symbol:
            return name_term(t, max_priority, priority);
        case Tok::End:
            fail(t, "unexpected end of clause");
        case Tok::Eof:
            fail(t, "unexpected end of input");
        }
        fail(t, "unexpected token");
    }

    Term list() {
        if (is_punct(peek(), "]")) {
            next();
            return Term::nil();
        }
        std::vector<Term> elems;
        elems.push_back(parse(999));
        while (is_punct(peek(), ",")) {
            next();
            elems.push_back(parse(999));
        }
        Term tail = Term::nil();
        if (is_punct(peek(), "|")) {
            next();
            tail = parse(999);
        }
        expect_punct("]");
        return Term::list(std::move(elems), tail);
    }

    Term name_term(const Token& t, int max_priority, int& priority) {
        const Token& n = peek();
        if (is_punct(n, "(") && !n.layout_before) {
            next();
            std::vector<Term> args;
            args.push_back(parse(999));
            while (is_punct(peek(), ",")) {
                next();
                args.push_back(parse(999));
            }
            expect_punct(")");
            return Term::compound(t.text, std::move(args));
        }
        if (t.kind == Tok::Symbol && t.text == "-" && !n.layout_before) {
            if (n.kind == Tok::Int) {
                next();
                return Term::integer(-n.ival);
            }
            if (n.kind == Tok::Float) {
                next();
                return Term::real(-n.fval);
            }
        }
        if (t.kind != Tok::QName) {
            if (auto op = prefix_op(t.text); op && starts_term(n) && op->priority <= max_priority) {
                // an infix operator right after the name means the name is an operand
                bool operand = (n.kind == Tok::Symbol || n.kind == Tok::Name) && infix_op(n.text) &&
                               !prefix_op(n.text);
                if (!operand) {
                    Term arg = parse(right_max(*op));
                    priority = op->priority;
                    return Term::compound(t.text, {arg});
                }
            }
        }
        return Term::constant(t.text);
    }

    void flatten(const Term& t, const SourceSpan& span, std::vector<GoalConjunct>& out) {
        if (t.is_compound() && t.arity() == 2 && t.name() == ",") {
            flatten(t.arg(0), span, out);
            flatten(t.arg(1), span, out);
            return;
        }
        if (t.is_const() && t.name() == "true") return;
        out.push_back({t, span});
    }

    std::vector<GoalConjunct> conjunction() {
        std::vector<GoalConjunct> out;
        for (;;) {
            SourceSpan span = span_of(peek());
            Term t = parse(999);
            flatten(t, span, out);
            if (!is_punct(peek(), ",")) break;
            next();
        }
        return out;
    }

    Program program() {
        Program p;
        std::set<std::string> names;
        while (!at_eof()) {
            const Token& first = peek();
            SourceSpan span = span_of(first);
            std::string name = first.directive.empty() ? "r" + std::to_string(p.rules.size() + 1)
                                                       : first.directive;
            Term head_term = parse(1199);
            Rule r;
            r.span = span;
            r.name = name;
            r.head = head_atom(head_term, span);
            if (peek().kind == Tok::Symbol && peek().text == ":-") {
                next();
                for (auto& c : conjunction()) r.body.push_back(literal_from_term(c.term, c.span));
            }
            Token end = next();
            if (end.kind != Tok::End) fail(end, "expected '.' at end of clause, found '" + end.text + "'");
            if (!names.insert(r.name).second)
                throw Error(Errc::DuplicateRuleName, "rule name '" + r.name + "' used twice", span);
            p.rules.push_back(std::move(r));
        }
        return p;
    }

    Atom head_atom(const Term& t, const SourceSpan& span) {
        Literal l = literal_from_term(t, span);
        if (l.negated()) throw Error(Errc::Syntax, "negated clause head", span);
        return l.atom;
    }

    std::vector<GoalConjunct> goal() {
        std::vector<GoalConjunct> out;
        if (at_eof()) return out;
        out = conjunction();
        if (peek().kind == Tok::End) next();
        if (!at_eof()) fail(peek(), "unexpected '" + peek().text + "' after goal");
        return out;
    }

    Term single_term() {
        Term t = parse(1200);
        if (peek().kind == Tok::End) next();
        if (!at_eof()) fail(peek(), "unexpected '" + peek().text + "' after term");
        return t;
    }

private:
    std::string file_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int anon_ = 0;
};

}  // namespace

Literal literal_from_term(const Term& t, const SourceSpan& span) {
    if (t.is_compound() && t.arity() == 1 && (t.name() == "not" || t.name() == "\\+")) {
        Literal inner = literal_from_term(t.arg(0), span);
        if (inner.negated()) throw Error(Errc::Syntax, "nested negation is not supported", span);
        inner.polarity = Polarity::NegatedDefault;
        return inner;
    }
    Term goal = t;
    std::string prefix;
    if (t.is_compound() && t.arity() == 2 && t.name() == ":" && t.arg(0).is_const()) {
        prefix = t.arg(0).name();
        goal = t.arg(1);
    }
    if (goal.is_compound() && goal.arity() == 2 && goal.name() == ",")
        throw Error(Errc::Syntax, "conjunction where a literal was expected", span);
    auto atom = Atom::from_term(goal, prefix);
    if (!atom) throw Error(Errc::Syntax, "callable term expected", span);
    atom->span = span;
    return {Polarity::Positive, std::move(*atom)};
}

Program parse_program(std::string_view text, const std::string& file) {
    Parser p(text, file);
    return p.program();
}

Term parse_term(std::string_view text) {
    Parser p(text, {});
    return p.single_term();
}

Atom parse_atom(std::string_view text) {
    Parser p(text, {});
    Term t = p.single_term();
    Literal l = literal_from_term(t);
    if (l.negated()) throw Error(Errc::Syntax, "atom expected, found negation");
    return l.atom;
}

std::vector<GoalConjunct> parse_goal(std::string_view text, const std::string& file) {
    Parser p(text, file);
    return p.goal();
}

}  // namespace ddlite::syntax
