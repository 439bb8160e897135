#include "ddlite/substitution.hpp"

#include <algorithm>
#include <unordered_map>

namespace ddlite {

const Term* Substitution::lookup(const std::string& var) const {
    auto it = bindings_.find(var);
    return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, const Term& value) {
    Substitution single;
    single.bindings_.emplace(var, value);
    for (auto& [name, bound] : bindings_) bound = apply(single, bound);
    bindings_.emplace(var, value);
}

Term apply(const Substitution& s, const Term& t) {
    if (s.empty() || t.is_ground()) return t;
    if (t.is_var()) {
        const Term* v = s.lookup(t.name());
        return v ? *v : t;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const auto& a : t.args()) {
        args.push_back(apply(s, a));
        changed = changed || !(args.back() == a);
    }
    return changed ? Term::compound(t.name(), std::move(args)) : t;
}

Atom apply(const Substitution& s, const Atom& a) {
    Atom out = a;
    for (auto& t : out.args) t = apply(s, t);
    return out;
}

Literal apply(const Substitution& s, const Literal& l) { return {l.polarity, apply(s, l.atom)}; }

Rule apply(const Substitution& s, const Rule& r) {
    Rule out = r;
    out.head = apply(s, r.head);
    for (auto& l : out.body) l = apply(s, l);
    return out;
}

namespace {

bool occurs(const std::string& var, const Term& t) {
    if (t.is_ground()) return false;
    if (t.is_var()) return t.name() == var;
    for (const auto& a : t.args())
        if (occurs(var, a)) return true;
    return false;
}

const Term& deref(const Term& t, const Substitution& s) {
    if (t.is_var()) {
        if (const Term* v = s.lookup(t.name())) return *v;
    }
    return t;
}

bool bind_var(const Term& var, const Term& other, Substitution& s) {
    Term value = apply(s, other);
    if (value.is_var() && value.name() == var.name()) return true;
    if (occurs(var.name(), value)) return false;
    s.bind(var.name(), value);
    return true;
}

}  // namespace

bool unify(const Term& a0, const Term& b0, Substitution& s) {
    const Term a = deref(a0, s);
    const Term b = deref(b0, s);
    if (a.is_var()) return bind_var(a, b, s);
    if (b.is_var()) return bind_var(b, a, s);
    if (!a.is_compound() || !b.is_compound()) return a == b;
    if (a.name() != b.name() || a.arity() != b.arity()) return false;
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (!unify(a.arg(i), b.arg(i), s)) return false;
    return true;
}

bool unify(const Atom& a, const Atom& b, Substitution& s) {
    if (a.key() != b.key()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!unify(a.args[i], b.args[i], s)) return false;
    return true;
}

std::optional<Substitution> mgu(const Term& a, const Term& b) {
    Substitution s;
    if (!unify(a, b, s)) return std::nullopt;
    return s;
}

std::optional<Substitution> mgu(const Atom& a, const Atom& b) {
    Substitution s;
    if (!unify(a, b, s)) return std::nullopt;
    return s;
}

bool match_ground(const Term& pattern, const Term& ground, Substitution& s) {
    if (pattern.is_ground()) return pattern == ground;
    if (pattern.is_var()) {
        if (const Term* v = s.lookup(pattern.name())) return *v == ground;
        s.bind_ground(pattern.name(), ground);
        return true;
    }
    if (!ground.is_compound() || pattern.name() != ground.name() || pattern.arity() != ground.arity())
        return false;
    for (std::size_t i = 0; i < pattern.arity(); ++i)
        if (!match_ground(pattern.arg(i), ground.arg(i), s)) return false;
    return true;
}

namespace {

Term rename_term(const Term& t, const std::string& suffix) {
    if (t.is_ground()) return t;
    if (t.is_var()) return Term::var(t.name() + suffix);
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) args.push_back(rename_term(a, suffix));
    return Term::compound(t.name(), std::move(args));
}

Atom rename_atom(const Atom& a, const std::string& suffix) {
    Atom out = a;
    for (auto& t : out.args) t = rename_term(t, suffix);
    return out;
}

struct VarBijection {
    std::unordered_map<std::string, std::string> fwd, bwd;

    bool same(const Term& a, const Term& b) {
        if (a.kind() != b.kind()) return false;
        if (a.is_var()) {
            auto [f, fnew] = fwd.emplace(a.name(), b.name());
            auto [g, gnew] = bwd.emplace(b.name(), a.name());
            return f->second == b.name() && g->second == a.name();
        }
        if (!a.is_compound()) return a == b;
        if (a.name() != b.name() || a.arity() != b.arity()) return false;
        for (std::size_t i = 0; i < a.arity(); ++i)
            if (!same(a.arg(i), b.arg(i))) return false;
        return true;
    }

    bool same(const Atom& a, const Atom& b) {
        if (a.key() != b.key()) return false;
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (!same(a.args[i], b.args[i])) return false;
        return true;
    }
};

}  // namespace

Rule rename_apart(const Rule& r, const std::string& suffix) {
    Rule out = r;
    out.head = rename_atom(r.head, suffix);
    for (auto& l : out.body) l.atom = rename_atom(l.atom, suffix);
    return out;
}

bool is_variant(const Rule& a, const Rule& b) {
    if (a.body.size() != b.body.size()) return false;
    VarBijection m;
    if (!m.same(a.head, b.head)) return false;
    for (std::size_t i = 0; i < a.body.size(); ++i) {
        if (a.body[i].polarity != b.body[i].polarity) return false;
        if (!m.same(a.body[i].atom, b.body[i].atom)) return false;
    }
    return true;
}

bool is_variant(const Term& a, const Term& b) {
    VarBijection m;
    return m.same(a, b);
}

std::vector<std::string> rule_vars(const Rule& r) {
    std::vector<std::string> out;
    for (const auto& t : r.head.args) collect_vars(t, out);
    for (const auto& l : r.body)
        for (const auto& t : l.atom.args) collect_vars(t, out);
    return out;
}

}  // namespace ddlite
