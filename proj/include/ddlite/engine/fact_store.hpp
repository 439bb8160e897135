#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ddlite/program.hpp"

namespace ddlite::engine {

/// Ground atoms grouped by predicate, with a per-argument index on the
/// principal functor. Facts added since the previous advance() form the
/// delta used by semi-naive evaluation.
class FactStore {
public:
    enum class Range {
        Full,   // every fact
        Old,    // facts known before the current delta
        Delta,  // facts added in the latest round
    };

    /// Returns false if the atom was already present.
    /// Throws Error(NonGroundHead) for non-ground atoms.
    bool insert(const Atom& a);
    /// From now on, facts of `key` that differ only in their last argument
    /// count as the same fact; the first one inserted is kept.
    void set_witness(const PredKey& key);
    bool contains(const Atom& a) const;

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    /// Facts of one predicate in store order.
    const std::vector<Atom>& facts(const PredKey& key) const;
    std::vector<PredKey> predicates() const;

    /// Candidate facts that may match `pattern` (which the caller still has
    /// to match), restricted to `range`.
    void candidates(const Atom& pattern, Range range, std::vector<const Atom*>& out) const;

    /// Makes the facts inserted since the last call the new delta.
    void advance();
    bool delta_empty() const;
    std::vector<Atom> delta_sample(std::size_t n) const;

    /// Sorts every relation in standard order and clears the delta.
    void finalize();
    /// All facts in standard order.
    std::vector<Atom> sorted() const;

private:
    struct Relation {
        std::vector<Atom> atoms;
        std::unordered_set<Atom, AtomHash> seen;
        bool witness = false;
        std::unordered_set<Atom, AtomHash> seen_without_witness;
        // per argument position: functor key -> ascending fact positions
        std::vector<std::unordered_map<std::size_t, std::vector<std::uint32_t>>> index;
        std::size_t delta_lo = 0;
        std::size_t delta_hi = 0;

        void add_to_index(std::uint32_t pos);
    };

    std::map<PredKey, Relation> relations_;
    std::size_t size_ = 0;
};

/// Index key of a term's principal functor (name and arity, or the value of
/// an atomic term).
std::size_t functor_key(const Term& t);

}  // namespace ddlite::engine
