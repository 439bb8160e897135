#pragma once

// Independent reference implementations used to check the engine.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ddlite/engine/fact_store.hpp"
#include "ddlite/engine/proof_tree.hpp"
#include "ddlite/program.hpp"

namespace ddlite::testing {

/// Least model by exhaustive ground instantiation over the constants of `p`.
/// Only positive rules plus negation on predicates that never occur in a head.
std::set<std::string> ground_fixpoint(const Program& p);

/// The formatted atoms of a store, for comparison with ground_fixpoint.
std::set<std::string> atom_strings(const engine::FactStore& store);

/// Checks a proof tree against the uninstrumented program it was built from:
/// every node must be a rule instance whose positive db literals are its
/// children and whose builtins are its (true) side conditions. Negated
/// literals must be absent from `store`. Returns "" or the first problem.
std::string replay_proof(const Program& p, const engine::FactStore& store, const engine::ProofTree& t);

struct RandomProgramSpec {
    int max_rules = 8;
    int constants = 5;
    int edb_preds = 3;
    int idb_preds = 3;
    int facts = 10;
    bool negation = true;
};

/// Safe, stratified random program (rules then EDB facts).
Program random_program(std::mt19937& rng, const RandomProgramSpec& spec = {});

/// Random term over a small signature, depth-bounded.
Term random_term(std::mt19937& rng, int depth);

/// Nested-loop reference for the employee / works_on aggregation:
/// DNO -> sum of numeric HOURS over joined rows, compensated.
std::map<std::int64_t, double> employee_hours_oracle(const std::string& employee_csv, const std::string& works_on_xml);

}  // namespace ddlite::testing
