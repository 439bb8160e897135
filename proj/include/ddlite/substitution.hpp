#pragma once

#include <map>
#include <optional>
#include <string>

#include "ddlite/program.hpp"
#include "ddlite/term.hpp"

namespace ddlite {

/// Finite map from variable names to terms. Kept idempotent by every
/// operation in this header: no bound variable occurs in any binding.
class Substitution {
public:
    using Map = std::map<std::string, Term>;

    Substitution() = default;

    const Term* lookup(const std::string& var) const;
    bool contains(const std::string& var) const { return bindings_.count(var) != 0; }
    std::size_t size() const { return bindings_.size(); }
    bool empty() const { return bindings_.empty(); }
    Map::const_iterator begin() const { return bindings_.begin(); }
    Map::const_iterator end() const { return bindings_.end(); }

    /// Adds var -> value and propagates it through the existing bindings.
    /// The caller guarantees var is unbound and value is already resolved.
    void bind(const std::string& var, const Term& value);

    /// Adds a binding to a ground value without propagation. Only valid when
    /// all existing bindings are ground.
    void bind_ground(const std::string& var, const Term& value) { bindings_.emplace(var, value); }

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    Map bindings_;
};

Term apply(const Substitution& s, const Term& t);
Atom apply(const Substitution& s, const Atom& a);
Literal apply(const Substitution& s, const Literal& l);
Rule apply(const Substitution& s, const Rule& r);

/// Extends s so that a and b become equal; occurs-check on. Leaves s in an
/// unspecified state on failure.
bool unify(const Term& a, const Term& b, Substitution& s);
bool unify(const Atom& a, const Atom& b, Substitution& s);

std::optional<Substitution> mgu(const Term& a, const Term& b);
std::optional<Substitution> mgu(const Atom& a, const Atom& b);

/// One-way match of pattern against a ground term, extending s. Bindings in
/// s are assumed ground.
bool match_ground(const Term& pattern, const Term& ground, Substitution& s);

/// Renames every variable of r by appending suffix.
Rule rename_apart(const Rule& r, const std::string& suffix);

/// True when a and b are equal up to a bijective renaming of variables.
bool is_variant(const Rule& a, const Rule& b);
bool is_variant(const Term& a, const Term& b);

/// Variables of a rule in first-occurrence order (head, then body).
std::vector<std::string> rule_vars(const Rule& r);

}  // namespace ddlite
