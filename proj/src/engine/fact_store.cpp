#include "ddlite/engine/fact_store.hpp"

#include <algorithm>
#include <functional>

#include "ddlite/error.hpp"
#include "ddlite/syntax/printer.hpp"

namespace ddlite::engine {

std::size_t functor_key(const Term& t) {
    if (!t.is_compound()) return t.hash();
    return std::hash<std::string>{}(t.name()) * 31 + t.arity();
}

void FactStore::Relation::add_to_index(std::uint32_t pos) {
    const Atom& a = atoms[pos];
    if (index.size() < a.args.size()) index.resize(a.args.size());
    for (std::size_t i = 0; i < a.args.size(); ++i) index[i][functor_key(a.args[i])].push_back(pos);
}

bool FactStore::insert(const Atom& a) {
    if (!a.is_ground()) throw Error(Errc::NonGroundHead, "non-ground fact " + syntax::format_atom(a), a.span);
    Relation& rel = relations_[a.key()];
    if (rel.witness && !a.args.empty()) {
        Atom bare = a;
        bare.args.pop_back();
        if (!rel.seen_without_witness.insert(std::move(bare)).second) return false;
    }
    if (!rel.seen.insert(a).second) return false;
    rel.atoms.push_back(a);
    rel.add_to_index(static_cast<std::uint32_t>(rel.atoms.size() - 1));
    ++size_;
    return true;
}

void FactStore::set_witness(const PredKey& key) {
    Relation& rel = relations_[key];
    if (rel.witness) return;
    rel.witness = true;
    for (const auto& a : rel.atoms) {
        Atom bare = a;
        bare.args.pop_back();
        rel.seen_without_witness.insert(std::move(bare));
    }
}

bool FactStore::contains(const Atom& a) const {
    auto it = relations_.find(a.key());
    return it != relations_.end() && it->second.seen.count(a);
}

const std::vector<Atom>& FactStore::facts(const PredKey& key) const {
    static const std::vector<Atom> none;
    auto it = relations_.find(key);
    return it == relations_.end() ? none : it->second.atoms;
}

std::vector<PredKey> FactStore::predicates() const {
    std::vector<PredKey> out;
    for (const auto& [k, r] : relations_)
        if (!r.atoms.empty()) out.push_back(k);
    return out;
}

void FactStore::candidates(const Atom& pattern, Range range, std::vector<const Atom*>& out) const {
    out.clear();
    auto it = relations_.find(pattern.key());
    if (it == relations_.end()) return;
    const Relation& rel = it->second;
    std::size_t lo = 0, hi = rel.atoms.size();
    if (range == Range::Old) hi = rel.delta_lo;
    if (range == Range::Delta) lo = rel.delta_lo, hi = rel.delta_hi;
    if (lo >= hi) return;

    // most selective bound argument
    const std::vector<std::uint32_t>* best = nullptr;
    for (std::size_t i = 0; i < pattern.args.size() && i < rel.index.size(); ++i) {
        if (pattern.args[i].is_var()) continue;
        auto f = rel.index[i].find(functor_key(pattern.args[i]));
        if (f == rel.index[i].end()) return;
        if (!best || f->second.size() < best->size()) best = &f->second;
    }
    if (!best) {
        for (std::size_t k = lo; k < hi; ++k) out.push_back(&rel.atoms[k]);
        return;
    }
    auto b = std::lower_bound(best->begin(), best->end(), lo);
    auto e = std::lower_bound(b, best->end(), hi);
    for (auto p = b; p != e; ++p) out.push_back(&rel.atoms[*p]);
}

void FactStore::advance() {
    for (auto& [k, r] : relations_) {
        r.delta_lo = r.delta_hi;
        r.delta_hi = r.atoms.size();
    }
}

bool FactStore::delta_empty() const {
    for (const auto& [k, r] : relations_)
        if (r.delta_hi > r.delta_lo) return false;
    return true;
}

std::vector<Atom> FactStore::delta_sample(std::size_t n) const {
    std::vector<Atom> out;
    for (const auto& [k, r] : relations_)
        for (std::size_t i = r.delta_lo; i < r.delta_hi && out.size() < n; ++i) out.push_back(r.atoms[i]);
    return out;
}

void FactStore::finalize() {
    for (auto& [k, r] : relations_) {
        std::sort(r.atoms.begin(), r.atoms.end(), [](const Atom& a, const Atom& b) { return compare(a, b) < 0; });
        r.index.clear();
        for (std::uint32_t i = 0; i < r.atoms.size(); ++i) r.add_to_index(i);
        r.delta_lo = r.delta_hi = r.atoms.size();
    }
}

std::vector<Atom> FactStore::sorted() const {
    std::vector<Atom> out;
    out.reserve(size_);
    for (const auto& [k, r] : relations_) out.insert(out.end(), r.atoms.begin(), r.atoms.end());
    std::sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) { return compare(a, b) < 0; });
    return out;
}

}  // namespace ddlite::engine
