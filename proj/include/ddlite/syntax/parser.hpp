#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ddlite/program.hpp"

namespace ddlite::syntax {

/// Parses Datalog* text: `H :- B1, ..., Bn.` clauses, `%` and `/* */`
/// comments, `not(A)` / `not A` negation and `prefix:Goal` module-qualified
/// literals. A comment of the form `% name: <id>` names the next clause;
/// otherwise clause k is named r<k>.
///
/// Throws Error(Syntax) or Error(DuplicateRuleName).
Program parse_program(std::string_view text, const std::string& file = {});

/// A single term, e.g. "t(route(a,b,1), e)".
Term parse_term(std::string_view text);

/// A single atom, optionally module-qualified ("prolog:pt(T,x)").
Atom parse_atom(std::string_view text);

/// One conjunct of a goal, kept as a raw term so that callers can interpret
/// constructs the rule language does not know about (e.g. `V := Path`).
struct GoalConjunct {
    Term term;
    SourceSpan span;
};

/// Parses a comma-separated conjunction with an optional trailing '.'.
/// `true` yields no conjuncts.
std::vector<GoalConjunct> parse_goal(std::string_view text, const std::string& file = {});

/// Maps a goal term to a body literal. not/1 and \+/1 give negated literals,
/// `P:G` with constant P gives a module-qualified literal.
Literal literal_from_term(const Term& t, const SourceSpan& span = {});

}  // namespace ddlite::syntax
