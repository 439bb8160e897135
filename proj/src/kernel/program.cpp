#include "ddlite/program.hpp"

#include <functional>

namespace ddlite {

std::string PredKey::to_string() const {
    std::string out;
    if (!prefix.empty()) out = prefix + ":";
    out += name + "/" + std::to_string(arity);
    return out;
}

bool Atom::is_ground() const {
    for (const auto& a : args)
        if (!a.is_ground()) return false;
    return true;
}

Term Atom::to_term() const { return Term::compound(predicate, args); }

std::optional<Atom> Atom::from_term(const Term& t, std::string prefix) {
    if (t.is_const()) return Atom(t.name(), {}, std::move(prefix));
    if (t.is_compound()) {
        return Atom(t.name(), std::vector<Term>(t.args().begin(), t.args().end()), std::move(prefix));
    }
    return std::nullopt;
}

int compare(const Atom& a, const Atom& b) {
    if (int c = a.predicate.compare(b.predicate); c != 0) return c < 0 ? -1 : 1;
    if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
    if (int c = a.prefix.compare(b.prefix); c != 0) return c < 0 ? -1 : 1;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (int c = compare(a.args[i], b.args[i]); c != 0) return c;
    return 0;
}

std::size_t AtomHash::operator()(const Atom& a) const {
    std::size_t h = std::hash<std::string>{}(a.predicate) ^ (std::hash<std::string>{}(a.prefix) << 1);
    for (const auto& t : a.args) h = h * 1099511628211ULL ^ t.hash();
    return h;
}

std::set<PredKey> Program::idb() const {
    std::set<PredKey> out;
    for (const auto& r : rules) out.insert(r.head.key());
    return out;
}

std::set<PredKey> Program::edb() const {
    auto heads = idb();
    std::set<PredKey> out;
    for (const auto& r : rules)
        for (const auto& l : r.body)
            if (!heads.count(l.atom.key())) out.insert(l.atom.key());
    return out;
}

const Rule* Program::find_rule(const std::string& name) const {
    for (const auto& r : rules)
        if (r.name == name) return &r;
    return nullptr;
}

void Program::add_facts(const std::vector<Atom>& facts, const std::string& name_prefix) {
    std::set<std::string> taken;
    for (const auto& r : rules) taken.insert(r.name);
    std::size_t k = 0;
    for (const auto& f : facts) {
        Rule r;
        do {
            r.name = name_prefix + std::to_string(++k);
        } while (taken.count(r.name));
        taken.insert(r.name);
        r.head = f;
        rules.push_back(std::move(r));
    }
}

}  // namespace ddlite
