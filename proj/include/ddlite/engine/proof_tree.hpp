#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ddlite/program.hpp"

namespace ddlite::engine {

/// t(Conclusion, Tag, Child1, ..., ChildN, SideCond1, ...)
struct ProofTree {
    Atom conclusion;
    std::string tag;
    std::vector<ProofTree> children;
    std::vector<Term> side_conditions;

    Term to_term() const;
    /// Arguments after the tag that are themselves t/N terms with a constant
    /// tag are children; the rest are side conditions.
    static std::optional<ProofTree> from_term(const Term& t);

    friend bool operator==(const ProofTree&, const ProofTree&) = default;
};

enum class TreeFormat { Term, Ascii, Dot };

std::string render_proof_tree(const ProofTree& t, TreeFormat format);

/// Adds a proof-tree argument to every predicate defined in p and a
/// `prolog:pt/2` call per rule assembling the tree from the body's trees and
/// builtin side conditions. Negated instrumented literals get an anonymous
/// extra argument.
Program auto_pt(const Program& p);

/// The predicates auto_pt(p) gives a tree argument, at their widened arity;
/// pass them as EvalOptions::witness_predicates.
std::set<PredKey> auto_pt_witnesses(const Program& p);

}  // namespace ddlite::engine
