#include "ddlite/syntax/swrl.hpp"

#include <cctype>
#include <charconv>
#include <map>

#include "ddlite/error.hpp"
#include "ddlite/syntax/printer.hpp"

namespace ddlite::syntax {

namespace {

// ---------------------------------------------------------------- abstract syntax

enum class STok { Ident, LParen, RParen, String, Eof };

struct SToken {
    STok kind = STok::Eof;
    std::string text;
    std::string datatype;
    int line = 1;
    int column = 1;
    std::size_t offset = 0;
};

std::optional<Term> parse_number(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::int64_t i = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), i);
    if (r.ec == std::errc() && r.ptr == s.data() + s.size()) return Term::integer(i);
    double d = 0;
    auto rd = std::from_chars(s.data(), s.data() + s.size(), d);
    if (rd.ec == std::errc() && rd.ptr == s.data() + s.size()) return Term::real(d);
    return std::nullopt;
}

class SwrlLexer {
public:
    SwrlLexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

    std::vector<SToken> run() {
        std::vector<SToken> out;
        for (;;) {
            skip();
            SToken t;
            t.line = line_;
            t.column = col_;
            t.offset = pos_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (c == '(') {
                t.kind = STok::LParen;
                advance();
            } else if (c == ')') {
                t.kind = STok::RParen;
                advance();
            } else if (c == '"') {
                t.kind = STok::String;
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"') {
                    if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) advance();
                    t.text += src_[pos_];
                    advance();
                }
                if (pos_ >= src_.size())
                    throw Error(Errc::Syntax, "unterminated string", SourceSpan{file_, t.line, t.column});
                advance();
                if (src_.substr(pos_, 2) == "^^") {
                    advance();
                    advance();
                    while (pos_ < src_.size() && ident_char(src_[pos_])) {
                        t.datatype += src_[pos_];
                        advance();
                    }
                }
            } else {
                t.kind = STok::Ident;
                while (pos_ < src_.size() && ident_char(src_[pos_])) {
                    t.text += src_[pos_];
                    advance();
                }
            }
            out.push_back(std::move(t));
        }
    }

private:
    static bool ident_char(char c) {
        return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '"';
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                return;
            }
        }
    }

    std::string_view src_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool one_of(const std::string& s, std::initializer_list<const char*> names) {
    for (const char* n : names)
        if (s == n) return true;
    return false;
}

bool builtin_name(const std::string& s) {
    return s.rfind("swrlb:", 0) == 0 || s.rfind("swrlx:", 0) == 0;
}

SwrlAtom classify(std::string name, std::vector<SwrlObj> args, const SourceSpan& span) {
    SwrlAtom a;
    a.span = span;
    a.args = std::move(args);
    a.name = std::move(name);
    if (one_of(a.name, {"same_as", "sameAs", "SameIndividualAtom", "sameIndividualAtom", "owl:sameAs"})) {
        if (a.args.size() != 2) throw Error(Errc::UnknownAtomForm, a.name + " takes two arguments", span);
        a.kind = SwrlAtom::Kind::SameAs;
        a.name = "same_as";
    } else if (one_of(a.name, {"different_from", "differentFrom", "DifferentIndividualsAtom",
                               "differentIndividualsAtom", "owl:differentFrom"})) {
        if (a.args.size() != 2) throw Error(Errc::UnknownAtomForm, a.name + " takes two arguments", span);
        a.kind = SwrlAtom::Kind::DifferentFrom;
        a.name = "different_from";
    } else if (builtin_name(a.name)) {
        a.kind = SwrlAtom::Kind::Builtin;
    } else if (a.args.size() == 1) {
        a.kind = SwrlAtom::Kind::Class;
    } else if (a.args.size() == 2) {
        a.kind = SwrlAtom::Kind::Property;
    } else {
        throw Error(Errc::UnknownAtomForm,
                    "atom " + a.name + " with " + std::to_string(a.args.size()) + " arguments", span);
    }
    return a;
}

SwrlObj data_literal(const std::string& text, const std::string& datatype) {
    SwrlObj o;
    o.kind = SwrlObj::Kind::DataLiteral;
    o.name = text;
    bool numeric_type = datatype.find("int") != std::string::npos ||
                        datatype.find("decimal") != std::string::npos ||
                        datatype.find("float") != std::string::npos ||
                        datatype.find("double") != std::string::npos;
    auto num = numeric_type ? parse_number(text) : std::nullopt;
    o.value = num ? *num : Term::constant(text);
    return o;
}

class SwrlParser {
public:
    SwrlParser(std::string_view src, std::string file)
        : src_(src), file_(file), toks_(SwrlLexer(src, std::move(file)).run()) {}

    std::vector<SwrlRule> rules() {
        std::vector<SwrlRule> out;
        while (peek().kind != STok::Eof) out.push_back(rule());
        return out;
    }

private:
    const SToken& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    SToken next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    SourceSpan span(const SToken& t) const { return {file_, t.line, t.column}; }

    [[noreturn]] void fail(const SToken& t, const std::string& msg) const {
        throw Error(Errc::Syntax, msg, span(t));
    }

    void expect(STok k, const char* what) {
        SToken t = next();
        if (t.kind != k) fail(t, std::string("expected ") + what);
    }

    void keyword(const char* kw) {
        SToken t = next();
        if (t.kind != STok::Ident || t.text != kw) fail(t, std::string("expected '") + kw + "('");
        expect(STok::LParen, "'('");
    }

    SwrlRule rule() {
        SwrlRule r;
        r.span = span(peek());
        keyword("Implies");
        while (!(peek().kind == STok::Ident && peek().text == "Antecedent")) r.annotations.push_back(annotation());
        keyword("Antecedent");
        while (peek().kind != STok::RParen) r.antecedent.push_back(atom());
        next();
        keyword("Consequent");
        while (peek().kind != STok::RParen) r.consequent.push_back(atom());
        next();
        expect(STok::RParen, "')' closing Implies");
        return r;
    }

    std::string annotation() {
        const SToken& t = peek();
        if (t.kind == STok::String) return next().text;
        if (t.kind != STok::Ident) fail(t, "expected annotation or 'Antecedent('");
        std::size_t begin = t.offset;
        next();
        if (peek().kind != STok::LParen) return t.text;
        int depth = 0;
        std::size_t end = begin;
        do {
            SToken u = next();
            if (u.kind == STok::Eof) fail(u, "unterminated annotation");
            if (u.kind == STok::LParen) ++depth;
            if (u.kind == STok::RParen) {
                --depth;
                end = u.offset + 1;
            }
        } while (depth > 0);
        return std::string(src_.substr(begin, end - begin));
    }

    SwrlAtom atom() {
        SToken name = next();
        if (name.kind != STok::Ident) fail(name, "expected an atom");
        expect(STok::LParen, "'(' after atom name");
        std::vector<SwrlObj> args;
        while (peek().kind != STok::RParen) args.push_back(object());
        next();
        return classify(name.text, std::move(args), span(name));
    }

    SwrlObj object() {
        SToken t = next();
        if (t.kind == STok::String) return data_literal(t.text, t.datatype);
        if (t.kind != STok::Ident) fail(t, "expected an atom argument");
        if ((t.text == "I-variable" || t.text == "D-variable") && peek().kind == STok::LParen) {
            next();
            SToken v = next();
            if (v.kind != STok::Ident) fail(v, "expected a variable name");
            expect(STok::RParen, "')' after variable name");
            SwrlObj o;
            o.kind = t.text[0] == 'I' ? SwrlObj::Kind::IVariable : SwrlObj::Kind::DVariable;
            o.name = v.text;
            return o;
        }
        if (peek().kind == STok::LParen) fail(t, "unknown argument form " + t.text + "(...)");
        if (auto num = parse_number(t.text)) {
            SwrlObj o;
            o.kind = SwrlObj::Kind::DataLiteral;
            o.name = t.text;
            o.value = *num;
            return o;
        }
        SwrlObj o;
        o.kind = SwrlObj::Kind::Individual;
        o.name = t.text;
        return o;
    }

    std::string_view src_;
    std::string file_;
    std::vector<SToken> toks_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- RuleML XML

std::string local_name(const std::string& tag) {
    auto c = tag.find(':');
    return c == std::string::npos ? tag : tag.substr(c + 1);
}

SourceSpan span_of(const XmlTerm& x) { return {{}, x.line, x.column}; }

[[noreturn]] void unsupported(const XmlTerm& x, const std::string& where) {
    throw Error(Errc::UnsupportedConstruct, "<" + x.tag + "> " + where, span_of(x));
}

const std::string& required_attr(const XmlTerm& x, const char* name) {
    const std::string* v = x.attribute(name);
    if (!v) throw Error(Errc::UnsupportedConstruct, "<" + x.tag + "> without " + name, span_of(x));
    return *v;
}

// Complex class expressions flatten to Local(attr values..., children...).
std::string flatten_class(const XmlTerm& x) {
    if (x.tag == "owlx:Class") return required_attr(x, "owlx:name");
    if (x.tag.rfind("owlx:", 0) != 0) unsupported(x, "is not an OWL class expression");
    std::string out = local_name(x.tag) + "(";
    bool first = true;
    for (const auto& [k, v] : x.attributes) {
        if (!first) out += ",";
        out += v;
        first = false;
    }
    for (const XmlTerm* c : x.elements()) {
        if (!first) out += ",";
        out += flatten_class(*c);
        first = false;
    }
    return out + ")";
}

SwrlObj xml_object(const XmlTerm& x) {
    SwrlObj o;
    if (x.tag == "ruleml:var") {
        o.kind = SwrlObj::Kind::IVariable;
        o.name = x.inner_text();
        if (o.name.empty()) unsupported(x, "has no variable name");
        return o;
    }
    if (x.tag == "owlx:Individual") {
        o.kind = SwrlObj::Kind::Individual;
        o.name = required_attr(x, "owlx:name");
        return o;
    }
    if (x.tag == "owlx:DataValue") {
        const std::string* dt = x.attribute("owlx:datatype");
        return data_literal(x.inner_text(), dt ? *dt : std::string{});
    }
    unsupported(x, "is not a supported atom argument");
}

std::vector<SwrlObj> xml_objects(const std::vector<const XmlTerm*>& elems, std::size_t from) {
    std::vector<SwrlObj> out;
    for (std::size_t i = from; i < elems.size(); ++i) out.push_back(xml_object(*elems[i]));
    return out;
}

SwrlAtom xml_atom(const XmlTerm& x) {
    auto elems = x.elements();
    SourceSpan sp = span_of(x);
    auto expect_args = [&](std::size_t n, std::vector<SwrlObj> args) {
        if (args.size() != n)
            throw Error(Errc::UnknownAtomForm,
                        "<" + x.tag + "> expects " + std::to_string(n) + " arguments, found " +
                            std::to_string(args.size()),
                        sp);
        return args;
    };
    if (x.tag == "swrlx:classAtom") {
        if (elems.empty()) unsupported(x, "without class expression");
        SwrlAtom a;
        a.kind = SwrlAtom::Kind::Class;
        a.name = flatten_class(*elems[0]);
        a.args = expect_args(1, xml_objects(elems, 1));
        a.span = sp;
        return a;
    }
    if (x.tag == "swrlx:individualPropertyAtom" || x.tag == "swrlx:datavaluedPropertyAtom") {
        SwrlAtom a;
        a.kind = SwrlAtom::Kind::Property;
        a.name = required_attr(x, "swrlx:property");
        a.args = expect_args(2, xml_objects(elems, 0));
        a.span = sp;
        return a;
    }
    if (x.tag == "swrlx:sameIndividualAtom")
        return classify("same_as", expect_args(2, xml_objects(elems, 0)), sp);
    if (x.tag == "swrlx:differentIndividualsAtom")
        return classify("different_from", expect_args(2, xml_objects(elems, 0)), sp);
    if (x.tag == "swrlx:builtinAtom") {
        SwrlAtom a;
        a.kind = SwrlAtom::Kind::Builtin;
        a.name = required_attr(x, "swrlx:builtin");
        a.args = xml_objects(elems, 0);
        a.span = sp;
        return a;
    }
    unsupported(x, "is not a supported SWRL atom");
}

std::vector<SwrlAtom> xml_conjunction(const XmlTerm& x) {
    std::vector<SwrlAtom> out;
    for (const XmlTerm* c : x.elements()) out.push_back(xml_atom(*c));
    return out;
}

SwrlRule xml_rule(const XmlTerm& imp) {
    SwrlRule r;
    r.span = span_of(imp);
    for (const XmlTerm* c : imp.elements()) {
        if (c->tag == "ruleml:_body")
            r.antecedent = xml_conjunction(*c);
        else if (c->tag == "ruleml:_head")
            r.consequent = xml_conjunction(*c);
        else if (c->tag == "ruleml:_rlab")
            r.annotations.push_back(c->inner_text());
        else
            unsupported(*c, "inside <ruleml:imp>");
    }
    return r;
}

// ---------------------------------------------------------------- translation

std::string variable_name(const std::string& raw) {
    std::string local = raw;
    if (auto h = local.rfind('#'); h != std::string::npos) local = local.substr(h + 1);
    if (!local.empty() && local[0] == '?') local = local.substr(1);
    for (char& c : local)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) c = '_';
    if (local.empty()) local = "V";
    if (std::islower(static_cast<unsigned char>(local[0])))
        local[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(local[0])));
    else if (!std::isupper(static_cast<unsigned char>(local[0])) && local[0] != '_')
        local = "V" + local;
    return local;
}

class VarMapper {
public:
    explicit VarMapper(SourceSpan span) : span_(std::move(span)) {}

    Term term(const SwrlObj& o) {
        switch (o.kind) {
        case SwrlObj::Kind::IVariable:
        case SwrlObj::Kind::DVariable: {
            std::string v = variable_name(o.name);
            auto [it, fresh] = seen_.emplace(v, o.name);
            if (!fresh && it->second != o.name)
                throw Error(Errc::VariableCollision,
                            "variables '" + it->second + "' and '" + o.name + "' both map to " + v, span_);
            return Term::var(v);
        }
        case SwrlObj::Kind::Individual:
            return Term::constant(o.name);
        case SwrlObj::Kind::DataLiteral:
            return o.value;
        }
        return Term();
    }

    Atom atom(const SwrlAtom& a) {
        std::vector<Term> args;
        for (const auto& o : a.args) args.push_back(term(o));
        Atom out;
        switch (a.kind) {
        case SwrlAtom::Kind::Class:
        case SwrlAtom::Kind::Property:
            out = Atom(a.name, std::move(args));
            break;
        case SwrlAtom::Kind::SameAs:
            out = Atom("same_as", std::move(args), "prolog");
            break;
        case SwrlAtom::Kind::DifferentFrom:
            out = Atom("different_from", std::move(args), "prolog");
            break;
        case SwrlAtom::Kind::Builtin:
            out = Atom(local_name(a.name), std::move(args), "prolog");
            break;
        }
        out.span = a.span;
        return out;
    }

private:
    SourceSpan span_;
    std::map<std::string, std::string> seen_;
};

std::string format_obj(const SwrlObj& o) {
    switch (o.kind) {
    case SwrlObj::Kind::IVariable: return "I-variable(" + o.name + ")";
    case SwrlObj::Kind::DVariable: return "D-variable(" + o.name + ")";
    case SwrlObj::Kind::Individual: return o.name;
    case SwrlObj::Kind::DataLiteral:
        return o.value.is_number() ? format_number(o.value) : "\"" + o.name + "\"";
    }
    return {};
}

std::string format_swrl_atom(const SwrlAtom& a) {
    std::string out = a.name + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += " ";
        out += format_obj(a.args[i]);
    }
    return out + ")";
}

}  // namespace

std::vector<SwrlRule> parse_swrl(std::string_view text, const std::string& file) {
    SwrlParser p(text, file);
    return p.rules();
}

SwrlOntology ruleml_from_xml(const XmlTerm& root) {
    SwrlOntology o;
    if (root.tag == "ruleml:imp") {
        o.name = "anonymous";
        o.rules.push_back(xml_rule(root));
        return o;
    }
    if (root.tag != "swrlx:Ontology") unsupported(root, "is not a swrlx:Ontology root");
    const std::string* name = root.attribute("swrlx:name");
    if (!name || name->empty()) unsupported(root, "without swrlx:name");
    o.name = *name;
    for (const XmlTerm* c : root.elements()) {
        if (c->tag == "ruleml:imp")
            o.rules.push_back(xml_rule(*c));
        else
            o.class_atoms.push_back(xml_atom(*c));
    }
    return o;
}

SwrlOntology parse_ruleml_xml(std::string_view text, const std::string& file) {
    return ruleml_from_xml(parse_xml(text, file));
}

std::vector<SwrlRule> lloyd_topor(const SwrlRule& r) {
    if (r.consequent.empty())
        throw Error(Errc::EmptyConsequent, "rule without consequent atoms (constraints are not supported)",
                    r.span);
    std::vector<SwrlRule> out;
    for (const auto& c : r.consequent) {
        SwrlRule single;
        single.annotations = r.annotations;
        single.antecedent = r.antecedent;
        single.consequent = {c};
        single.span = r.span;
        out.push_back(std::move(single));
    }
    return out;
}

Program swrl_to_datalog(const std::vector<SwrlRule>& rules) {
    Program p;
    for (const auto& original : rules) {
        for (const auto& r : lloyd_topor(original)) {
            VarMapper vars(r.span);
            Rule out;
            out.name = "r" + std::to_string(p.rules.size() + 1);
            out.span = r.span;
            out.head = vars.atom(r.consequent.front());
            for (const auto& a : r.antecedent) out.body.push_back({Polarity::Positive, vars.atom(a)});
            p.rules.push_back(std::move(out));
        }
    }
    return p;
}

std::string format_swrl(const SwrlRule& r) {
    std::string out = "Implies(";
    for (const auto& a : r.annotations) out += a + " ";
    out += "Antecedent(";
    for (std::size_t i = 0; i < r.antecedent.size(); ++i) {
        if (i) out += " ";
        out += format_swrl_atom(r.antecedent[i]);
    }
    out += ") Consequent(";
    for (std::size_t i = 0; i < r.consequent.size(); ++i) {
        if (i) out += " ";
        out += format_swrl_atom(r.consequent[i]);
    }
    return out + "))";
}

}  // namespace ddlite::syntax
