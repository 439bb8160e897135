#pragma once

#include <set>
#include <string>
#include <vector>

#include "ddlite/program.hpp"

namespace ddlite::engine::detail {

enum class LitKind { Db, Neg, Builtin };

struct Step {
    std::size_t index;  // position in the written body
    LitKind kind;
    /// Could not be scheduled with its inputs bound.
    bool stuck = false;
};

/// Evaluation order of a rule body: left to right, except that a builtin or
/// negated literal waits until its inputs are bound by an earlier literal.
std::vector<Step> plan_body(const Rule& r, const std::set<PredKey>& defined, std::set<std::string>* bound_out = nullptr);

bool anonymous(const std::string& var);

}  // namespace ddlite::engine::detail
