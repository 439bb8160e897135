#pragma once

#include <set>
#include <string>
#include <vector>

#include "ddlite/program.hpp"
#include "ddlite/substitution.hpp"

namespace ddlite::engine {

/// A literal is a builtin call when it carries the "prolog" prefix, or when
/// it is unprefixed, known to the registry, and not defined by `defined`.
bool is_builtin(const Atom& a, const std::set<PredKey>& defined);

/// True when the builtin can run under the given bound variables; after a
/// successful call every variable of the goal is bound.
bool builtin_ready(const Atom& goal, const std::set<std::string>& bound);

/// Throws Error(UnknownBuiltin) unless the registry has goal's name/arity.
void require_known_builtin(const Atom& goal);

/// Evaluates + - * / and unary minus over numbers. Integer operands stay
/// integral except for inexact division.
/// Throws Error(Instantiation | Type).
Term eval_arith(const Term& expr);

/// Runs a builtin goal under s and returns the answers extending s (none on
/// failure). Throws Error(Instantiation | Type | UnknownBuiltin).
std::vector<Substitution> call_builtin(const Atom& goal, const Substitution& s);

/// The constant create_owl_thing binds for the given inputs.
Term skolem_constant(const Term& x, const Term& c, const Term& e);

}  // namespace ddlite::engine
