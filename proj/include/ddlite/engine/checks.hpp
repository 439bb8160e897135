#pragma once

#include <map>
#include <string>
#include <vector>

#include "ddlite/program.hpp"

namespace ddlite::engine {

struct SafetyViolation {
    std::string rule;
    std::string variable;
    std::string reason;
    SourceSpan span;

    std::string to_string() const;
};

/// Range-restrictedness. A head variable must be bound by a positive
/// non-builtin literal or by a builtin output (`is` left operand, pt and
/// create_owl_thing first argument, ...); variables under negation must be
/// bound elsewhere unless their name starts with '_'; builtins must receive
/// their inputs.
std::vector<SafetyViolation> check_safety(const Program& p);

struct Strata {
    std::map<PredKey, int> assignment;

    int of(const PredKey& k) const;
    int count() const;
};

/// Minimal stratification over the predicate dependency graph.
/// Throws Error(Cycle) naming the predicates of a cycle through negation.
Strata stratify(const Program& p);

}  // namespace ddlite::engine
