#include "ddlite/syntax/printer.hpp"

#include <charconv>
#include <cmath>
#include <cstring>

#include "ddlite/syntax/operators.hpp"

namespace ddlite::syntax {

namespace {

bool is_symbol_char(char c) { return std::strchr("+-*/\\^<>=~:.?@#&$", c) != nullptr && c != '\0'; }

bool is_alnum_atom(const std::string& s) {
    if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

// Arguments and list elements sit at priority 999; comparison-level operator
// terms are parenthesized there as well.
constexpr int kArgPriority = 999;
constexpr int kParenthesizeInArgs = 700;

void write(const Term& t, int max_priority, bool in_arg, std::string& out);

void write_args(std::span<const Term> args, std::string& out) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        write(args[i], kArgPriority, true, out);
    }
}

void write_list(const Term& t, std::string& out) {
    out += '[';
    Term cur = t;
    bool first = true;
    while (cur.is_list_cell()) {
        if (!first) out += ',';
        first = false;
        write(cur.arg(0), kArgPriority, true, out);
        cur = cur.arg(1);
    }
    if (!cur.is_nil()) {
        out += '|';
        write(cur, kArgPriority, true, out);
    }
    out += ']';
}

bool is_negative_number(const Term& t) {
    return (t.is_int() && t.int_value() < 0) || (t.is_float() && std::signbit(t.float_value()));
}

void write_operand(const Term& t, int max_priority, std::string& out) {
    if (is_negative_number(t)) {
        out += '(';
        out += format_number(t);
        out += ')';
        return;
    }
    write(t, max_priority, false, out);
}

void append_with_gap(std::string& out, const std::string& piece) {
    if (!out.empty() && !piece.empty() && is_symbol_char(out.back()) && is_symbol_char(piece.front()))
        out += ' ';
    out += piece;
}

void write_infix(const Term& t, const OpDef& op, int max_priority, bool in_arg, std::string& out) {
    bool paren = op.priority > max_priority || (in_arg && op.priority >= kParenthesizeInArgs);
    std::string body;
    write_operand(t.arg(0), left_max(op), body);
    const std::string& name = t.name();
    std::string sep;
    if (name == ",")
        sep = ", ";
    else if (op.priority >= 700)
        sep = " " + name + " ";
    else
        sep = name;
    append_with_gap(body, sep);
    std::string right;
    write_operand(t.arg(1), right_max(op), right);
    append_with_gap(body, right);
    if (paren) out += '(';
    out += body;
    if (paren) out += ')';
}

void write(const Term& t, int max_priority, bool in_arg, std::string& out) {
    switch (t.kind()) {
    case TermKind::Var:
        out += t.name();
        return;
    case TermKind::Int:
    case TermKind::Float:
        out += format_number(t);
        return;
    case TermKind::Const:
        out += quote_atom(t.name());
        return;
    case TermKind::Compound:
        break;
    }
    if (t.is_list_cell()) {
        write_list(t, out);
        return;
    }
    if (t.arity() == 2) {
        if (auto op = infix_op(t.name())) {
            write_infix(t, *op, max_priority, in_arg, out);
            return;
        }
    }
    out += quote_atom(t.name());
    out += '(';
    write_args(t.args(), out);
    out += ')';
}

}  // namespace

std::string format_number(const Term& t) {
    if (t.is_int()) return std::to_string(t.int_value());
    double v = t.float_value();
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    auto epos = s.find_first_of("eE");
    std::string mantissa = epos == std::string::npos ? s : s.substr(0, epos);
    std::string exponent = epos == std::string::npos ? "" : s.substr(epos);
    if (mantissa.find('.') == std::string::npos) mantissa += ".0";
    return mantissa + exponent;
}

std::string quote_atom(const std::string& name) {
    if (name == "[]" || name == "!" || is_alnum_atom(name)) return name;
    std::string out = "'";
    for (char c : name) {
        switch (c) {
        case '\'': out += "\\'"; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    out += '\'';
    return out;
}

std::string format_term(const Term& t) {
    std::string out;
    write(t, 1200, false, out);
    return out;
}

std::string format_atom(const Atom& a) {
    Term goal = a.to_term();
    std::string body;
    write(goal, kArgPriority, false, body);
    if (a.prefix.empty()) return body;
    bool op_goal = goal.is_compound() && goal.arity() == 2 && infix_op(goal.name()).has_value();
    return quote_atom(a.prefix) + ":" + (op_goal ? "(" + body + ")" : body);
}

std::string format_literal(const Literal& l) {
    if (l.negated()) return "not(" + format_atom(l.atom) + ")";
    return format_atom(l.atom);
}

std::string format_rule(const Rule& r) {
    std::string out = format_atom(r.head);
    if (!r.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i) out += ", ";
            out += format_literal(r.body[i]);
        }
    }
    out += '.';
    return out;
}

std::string print_program(const Program& p) {
    std::string out;
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        const Rule& r = p.rules[i];
        if (r.name != "r" + std::to_string(i + 1)) out += "% name: " + r.name + "\n";
        out += format_rule(r);
        out += '\n';
    }
    return out;
}

}  // namespace ddlite::syntax
