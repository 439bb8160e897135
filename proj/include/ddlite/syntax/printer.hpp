#pragma once

#include <string>

#include "ddlite/program.hpp"
#include "ddlite/term.hpp"

namespace ddlite::syntax {

/// Prolog writeq-style rendering. Atoms are quoted when needed, lists use
/// bracket notation, and is/2 and comparison terms appearing as arguments are
/// parenthesized, e.g. t(a, (295 is 15+280)) prints as `t(a,(295 is 15+280))`.
std::string format_term(const Term& t);
std::string format_number(const Term& t);
std::string quote_atom(const std::string& name);

std::string format_atom(const Atom& a);
std::string format_literal(const Literal& l);
std::string format_rule(const Rule& r);

/// One clause per line. A `% name: <id>` line precedes any clause whose name
/// differs from its positional default r<k>.
std::string print_program(const Program& p);

}  // namespace ddlite::syntax
