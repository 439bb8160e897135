#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "ddlite/engine/fact_store.hpp"
#include "ddlite/program.hpp"

namespace ddlite::engine {

struct EvalOptions {
    std::size_t max_iterations = 10000;
    std::size_t max_facts = 1'000'000;
    bool semi_naive = true;
    /// Fire the rules of one step on OpenMP threads. Results are merged in
    /// rule order, so the store is the same as with the serial kernel.
    bool parallel = false;
    /// Predicates whose last argument is a derivation witness (a proof
    /// tree). An atom of these is new only if it differs elsewhere, so each
    /// keeps the first tree found and recursion through trees terminates.
    std::set<PredKey> witness_predicates;
};

struct EvalStats {
    std::vector<std::size_t> iterations_per_stratum;
    std::size_t rule_firings = 0;
};

/// One application of the immediate-consequence operator to the whole
/// program: atoms derivable from `store` in one step that are not yet in it,
/// in rule order without duplicates. Negation is tested against `store`.
std::vector<Atom> tp_step(const Program& p, const FactStore& store, bool parallel = false);

/// Stratum-by-stratum fixpoint. Checks safety and stratification first.
/// Throws Error(Safety | Cycle | UnknownBuiltin | ResourceLimitExceeded) and
/// builtin errors annotated with the rule name.
FactStore evaluate(const Program& p, const EvalOptions& opts = {}, EvalStats* stats = nullptr);

/// Re-parseable dump: one fact per line in standard order.
std::string dump_facts(const FactStore& store);
/// [{"pred": ..., "args": [...]}]
std::string dump_facts_json(const FactStore& store);

}  // namespace ddlite::engine
