#include "ddlite/engine/builtins.hpp"

#include <cmath>

#include "ddlite/builtin_names.hpp"
#include "ddlite/error.hpp"
#include "ddlite/syntax/printer.hpp"

namespace ddlite::engine {

namespace {

std::string show(const Atom& a) { return syntax::format_atom(a); }

bool vars_bound(const Term& t, const std::set<std::string>& bound) {
    std::vector<std::string> vs;
    collect_vars(t, vs);
    for (const auto& v : vs)
        if (!bound.count(v)) return false;
    return true;
}

Term number_of(double d) { return Term::real(d); }

[[noreturn]] void type_error(const std::string& what, const Term& t) {
    throw Error(Errc::Type, what + ", got " + syntax::format_term(t));
}

Term arith2(const std::string& op, const Term& a, const Term& b) {
    if (a.is_int() && b.is_int()) {
        std::int64_t x = a.int_value(), y = b.int_value(), r = 0;
        if (op == "+" && !__builtin_add_overflow(x, y, &r)) return Term::integer(r);
        if (op == "-" && !__builtin_sub_overflow(x, y, &r)) return Term::integer(r);
        if (op == "*" && !__builtin_mul_overflow(x, y, &r)) return Term::integer(r);
        if (op == "/") {
            if (y == 0) throw Error(Errc::Type, "division by zero");
            if (x % y == 0) return Term::integer(x / y);
        }
    }
    double x = a.numeric_value(), y = b.numeric_value();
    if (op == "+") return number_of(x + y);
    if (op == "-") return number_of(x - y);
    if (op == "*") return number_of(x * y);
    if (y == 0) throw Error(Errc::Type, "division by zero");
    return number_of(x / y);
}

int arith_compare(const Term& a, const Term& b) {
    Term x = eval_arith(a), y = eval_arith(b);
    if (x.is_int() && y.is_int()) return x.int_value() < y.int_value() ? -1 : x.int_value() > y.int_value();
    double p = x.numeric_value(), q = y.numeric_value();
    return p < q ? -1 : p > q;
}

std::vector<Substitution> unify_answer(const Term& a, const Term& b, const Substitution& s) {
    Substitution out = s;
    if (unify(a, b, out)) return {out};
    return {};
}

std::vector<Substitution> test(bool ok, const Substitution& s) {
    if (ok) return {s};
    return {};
}

void require_ground(const Atom& goal, const Term& t) {
    if (!t.is_ground())
        throw Error(Errc::Instantiation, "unbound argument in " + show(goal), goal.span);
}

}  // namespace

bool is_builtin(const Atom& a, const std::set<PredKey>& defined) {
    if (a.prefix == kBuiltinPrefix) return true;
    if (!a.prefix.empty()) return false;
    return is_builtin_name(a.predicate, a.arity()) && !defined.count(a.key());
}

bool builtin_ready(const Atom& g, const std::set<std::string>& bound) {
    const auto& n = g.predicate;
    const auto& a = g.args;
    if (a.empty()) return true;
    if (n == "is" || n == "pt" || n == "create_owl_thing") {
        for (std::size_t i = 1; i < a.size(); ++i)
            if (!vars_bound(a[i], bound)) return false;
        return true;
    }
    if ((n == "atom_number" || n == "append") && a.size() == 2) return vars_bound(a[0], bound);
    if ((n == "=" || n == "same_as") && a.size() == 2) return vars_bound(a[0], bound) || vars_bound(a[1], bound);
    for (const auto& t : a)
        if (!vars_bound(t, bound)) return false;
    return true;
}

void require_known_builtin(const Atom& goal) {
    if (!is_builtin_name(goal.predicate, goal.arity()))
        throw Error(Errc::UnknownBuiltin, goal.key().to_string(), goal.span);
}

Term eval_arith(const Term& e) {
    if (e.is_number()) return e;
    if (e.is_var()) throw Error(Errc::Instantiation, "unbound variable " + e.name() + " in arithmetic");
    if (e.is_compound() && e.arity() == 2) {
        const auto& op = e.name();
        if (op == "+" || op == "-" || op == "*" || op == "/")
            return arith2(op, eval_arith(e.arg(0)), eval_arith(e.arg(1)));
    }
    if (e.is_compound() && e.arity() == 1 && e.name() == "-") {
        Term x = eval_arith(e.arg(0));
        if (x.is_int() && x.int_value() != INT64_MIN) return Term::integer(-x.int_value());
        return number_of(-x.numeric_value());
    }
    type_error("arithmetic expression expected", e);
}

Term skolem_constant(const Term& x, const Term& c, const Term& e) {
    return Term::compound("skolem", {Term::constant("create_owl_thing"), x, c, e});
}

std::vector<Substitution> call_builtin(const Atom& goal, const Substitution& s) {
    require_known_builtin(goal);
    Atom g = apply(s, goal);
    const auto& n = g.predicate;
    const auto& a = g.args;

    if (n == "true" || n == "!") return {s};
    if (n == "is") return unify_answer(a[0], eval_arith(a[1]), s);
    if (n == "<") return test(arith_compare(a[0], a[1]) < 0, s);
    if (n == "=<") return test(arith_compare(a[0], a[1]) <= 0, s);
    if (n == ">") return test(arith_compare(a[0], a[1]) > 0, s);
    if (n == ">=") return test(arith_compare(a[0], a[1]) >= 0, s);
    if (n == "=:=") return test(arith_compare(a[0], a[1]) == 0, s);
    if (n == "=\\=") return test(arith_compare(a[0], a[1]) != 0, s);
    if (n == "=" || n == "same_as" || n == "pt") return unify_answer(a[0], a[1], s);
    if (n == "\\=") return test(!mgu(a[0], a[1]).has_value(), s);
    if (n == "different_from") {
        require_ground(g, a[0]);
        require_ground(g, a[1]);
        return test(!(a[0] == a[1]), s);
    }
    if (n == "atom_number") {
        if (a[0].is_var()) throw Error(Errc::Instantiation, "atom_number/2 needs a bound first argument", goal.span);
        if (a[0].is_number()) return unify_answer(a[1], a[0], s);
        if (!a[0].is_const()) return {};
        auto v = parse_number(a[0].name());
        if (!v) return {};
        return unify_answer(a[1], *v, s);
    }
    if (n == "create_owl_thing") {
        for (std::size_t i = 1; i < 4; ++i) require_ground(g, a[i]);
        return unify_answer(a[0], skolem_constant(a[1], a[2], a[3]), s);
    }
    if (n == "append") {
        std::vector<Term> lists, flat;
        if (!a[0].list_elements(lists)) {
            if (!a[0].is_ground()) throw Error(Errc::Instantiation, "append/2 needs a list of lists", goal.span);
            type_error("append/2 expects a list of lists", a[0]);
        }
        for (const auto& l : lists) {
            std::vector<Term> xs;
            if (!l.list_elements(xs)) {
                if (l.is_var()) throw Error(Errc::Instantiation, "append/2 needs a list of lists", goal.span);
                type_error("append/2 expects a list of lists", l);
            }
            flat.insert(flat.end(), xs.begin(), xs.end());
        }
        return unify_answer(a[1], Term::list(flat), s);
    }
    throw Error(Errc::UnknownBuiltin, goal.key().to_string(), goal.span);
}

}  // namespace ddlite::engine
