#include "ddlite/term.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <charconv>
#include <cctype>
#include <functional>
#include <stdexcept>

namespace ddlite {

struct Term::Rep {
    TermKind kind = TermKind::Const;
    std::string text;
    std::int64_t ival = 0;
    double fval = 0.0;
    std::vector<Term> args;
    std::size_t hash = 0;
    bool ground = true;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::shared_ptr<const Term::Rep> finish(std::shared_ptr<Term::Rep> rep) {
    std::size_t h = static_cast<std::size_t>(rep->kind) * 0x100000001b3ULL;
    switch (rep->kind) {
    case TermKind::Var:
        rep->ground = false;
        h = mix(h, std::hash<std::string>{}(rep->text));
        break;
    case TermKind::Const:
        h = mix(h, std::hash<std::string>{}(rep->text));
        break;
    case TermKind::Int:
        h = mix(h, std::hash<std::int64_t>{}(rep->ival));
        break;
    case TermKind::Float:
        h = mix(h, std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(rep->fval)));
        break;
    case TermKind::Compound:
        h = mix(h, std::hash<std::string>{}(rep->text));
        for (const auto& a : rep->args) {
            h = mix(h, a.hash());
            rep->ground = rep->ground && a.is_ground();
        }
        break;
    }
    rep->hash = h;
    return rep;
}

const std::shared_ptr<const Term::Rep>& nil_rep() {
    static const std::shared_ptr<const Term::Rep> rep = [] {
        auto r = std::make_shared<Term::Rep>();
        r->kind = TermKind::Const;
        r->text = "[]";
        return finish(std::move(r));
    }();
    return rep;
}

}  // namespace

Term::Term() : rep_(nil_rep()) {}

Term::Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

Term Term::var(std::string name) {
    auto r = std::make_shared<Rep>();
    r->kind = TermKind::Var;
    r->text = std::move(name);
    return Term(finish(std::move(r)));
}

Term Term::constant(std::string symbol) {
    if (symbol == "[]") return nil();
    auto r = std::make_shared<Rep>();
    r->kind = TermKind::Const;
    r->text = std::move(symbol);
    return Term(finish(std::move(r)));
}

Term Term::integer(std::int64_t value) {
    auto r = std::make_shared<Rep>();
    r->kind = TermKind::Int;
    r->ival = value;
    return Term(finish(std::move(r)));
}

Term Term::real(double value) {
    auto r = std::make_shared<Rep>();
    r->kind = TermKind::Float;
    r->fval = value;
    return Term(finish(std::move(r)));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
    if (args.empty()) return constant(std::move(functor));
    auto r = std::make_shared<Rep>();
    r->kind = TermKind::Compound;
    r->text = std::move(functor);
    r->args = std::move(args);
    return Term(finish(std::move(r)));
}

Term Term::list(std::vector<Term> elements, Term tail) {
    Term out = std::move(tail);
    for (auto it = elements.rbegin(); it != elements.rend(); ++it)
        out = compound(".", {*it, out});
    return out;
}

Term Term::nil() { return Term(nil_rep()); }

TermKind Term::kind() const { return rep_->kind; }
bool Term::is_ground() const { return rep_->ground; }
bool Term::is_nil() const { return rep_->kind == TermKind::Const && rep_->text == "[]"; }
bool Term::is_list_cell() const {
    return rep_->kind == TermKind::Compound && rep_->args.size() == 2 && rep_->text == ".";
}

const std::string& Term::name() const { return rep_->text; }

std::int64_t Term::int_value() const {
    assert(is_int());
    return rep_->ival;
}

double Term::float_value() const {
    assert(is_float());
    return rep_->fval;
}

double Term::numeric_value() const {
    if (is_int()) return static_cast<double>(rep_->ival);
    if (is_float()) return rep_->fval;
    throw std::logic_error("numeric_value on non-number");
}

std::span<const Term> Term::args() const { return rep_->args; }
std::size_t Term::arity() const { return rep_->args.size(); }
std::size_t Term::hash() const { return rep_->hash; }

bool Term::list_elements(std::vector<Term>& out) const {
    const Term* cur = this;
    Term hold;
    while (cur->is_list_cell()) {
        out.push_back(cur->arg(0));
        hold = cur->arg(1);
        cur = &hold;
    }
    return cur->is_nil();
}

bool operator==(const Term& a, const Term& b) {
    if (a.rep_ == b.rep_) return true;
    if (a.rep_->hash != b.rep_->hash || a.rep_->kind != b.rep_->kind) return false;
    switch (a.rep_->kind) {
    case TermKind::Var:
    case TermKind::Const:
        return a.rep_->text == b.rep_->text;
    case TermKind::Int:
        return a.rep_->ival == b.rep_->ival;
    case TermKind::Float:
        return std::bit_cast<std::uint64_t>(a.rep_->fval) ==
               std::bit_cast<std::uint64_t>(b.rep_->fval);
    case TermKind::Compound:
        return a.rep_->text == b.rep_->text && a.rep_->args == b.rep_->args;
    }
    return false;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    int c = compare(a, b);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

namespace {

int kind_rank(const Term& t) {
    switch (t.kind()) {
    case TermKind::Var: return 0;
    case TermKind::Int:
    case TermKind::Float: return 1;
    case TermKind::Const: return 2;
    case TermKind::Compound: return 3;
    }
    return 4;
}

int cmp_numbers(const Term& a, const Term& b) {
    if (a.is_int() && b.is_int()) {
        auto x = a.int_value(), y = b.int_value();
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    double x = a.numeric_value(), y = b.numeric_value();
    if (x < y) return -1;
    if (x > y) return 1;
    if (a.is_float() && b.is_int()) return -1;
    if (a.is_int() && b.is_float()) return 1;
    if (a.is_float() && b.is_float()) {
        // equal by value; keep the order total over bit patterns (e.g. -0.0)
        auto bx = std::bit_cast<std::uint64_t>(a.float_value());
        auto by = std::bit_cast<std::uint64_t>(b.float_value());
        return bx < by ? -1 : (bx > by ? 1 : 0);
    }
    return 0;
}

}  // namespace

int compare(const Term& a, const Term& b) {
    int ra = kind_rank(a), rb = kind_rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a.kind()) {
    case TermKind::Var:
    case TermKind::Const:
        return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case TermKind::Int:
    case TermKind::Float:
        return cmp_numbers(a, b);
    case TermKind::Compound: {
        if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
        int c = a.name().compare(b.name());
        if (c != 0) return c < 0 ? -1 : 1;
        for (std::size_t i = 0; i < a.arity(); ++i) {
            int d = compare(a.arg(i), b.arg(i));
            if (d != 0) return d;
        }
        return 0;
    }
    }
    return 0;
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
    if (t.is_ground()) return;
    if (t.is_var()) {
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
        return;
    }
    for (const auto& a : t.args()) collect_vars(a, out);
}

std::optional<Term> parse_number(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i >= text.size() || !(std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) return std::nullopt;
    bool is_float = false;
    for (std::size_t k = i; k < text.size(); ++k) {
        char c = text[k];
        if (c == '.' || c == 'e' || c == 'E') is_float = true;
        else if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '+') return std::nullopt;
    }
    // from_chars rejects a leading '+'
    std::string_view body = text[0] == '+' ? text.substr(1) : text;
    const char* end = body.data() + body.size();
    if (!is_float) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(body.data(), end, v);
        if (ec == std::errc() && p == end) return Term::integer(v);
        if (ec != std::errc::result_out_of_range) return std::nullopt;
    }
    double d = 0;
    auto [p, ec] = std::from_chars(body.data(), end, d);
    if (ec != std::errc() || p != end) return std::nullopt;
    return Term::real(d);
}

}  // namespace ddlite
