#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ddlite/program.hpp"
#include "ddlite/syntax/xml.hpp"

namespace ddlite::syntax {

/// Argument of a SWRL atom.
struct SwrlObj {
    enum class Kind { IVariable, DVariable, Individual, DataLiteral };
    Kind kind = Kind::Individual;
    /// Variable name or individual identifier as written.
    std::string name;
    /// Parsed value of a data literal (Const or Num).
    Term value;

    bool is_variable() const { return kind == Kind::IVariable || kind == Kind::DVariable; }
    friend bool operator==(const SwrlObj&, const SwrlObj&) = default;
};

struct SwrlAtom {
    enum class Kind { Class, Property, SameAs, DifferentFrom, Builtin };
    Kind kind = Kind::Class;
    /// Class name (flattened class expression), property, or builtin name.
    std::string name;
    std::vector<SwrlObj> args;
    SourceSpan span;

    friend bool operator==(const SwrlAtom& a, const SwrlAtom& b) {
        return a.kind == b.kind && a.name == b.name && a.args == b.args;
    }
};

struct SwrlRule {
    std::vector<std::string> annotations;
    std::vector<SwrlAtom> antecedent;
    std::vector<SwrlAtom> consequent;
    SourceSpan span;

    friend bool operator==(const SwrlRule& a, const SwrlRule& b) {
        return a.annotations == b.annotations && a.antecedent == b.antecedent &&
               a.consequent == b.consequent;
    }
};

struct SwrlOntology {
    std::string name;
    std::vector<SwrlRule> rules;
    /// Top-level atom assertions.
    std::vector<SwrlAtom> class_atoms;
};

/// Abstract syntax: a sequence of
/// `Implies( {annotation} Antecedent( {atom} ) Consequent( {atom} ) )`.
/// Atom arguments are whitespace-separated: `I-variable(x)`, `D-variable(x)`,
/// individual names, numbers and quoted data literals (`"v"` or `"v"^^type`).
std::vector<SwrlRule> parse_swrl(std::string_view text, const std::string& file = {});

/// RuleML/SWRLx XML subset. Root is `swrlx:Ontology` (or a bare `ruleml:imp`,
/// which yields an ontology named "anonymous").
SwrlOntology parse_ruleml_xml(std::string_view text, const std::string& file = {});
SwrlOntology ruleml_from_xml(const XmlTerm& root);

/// Splits a conjunctive consequent into one rule per consequent atom, each
/// with the full antecedent. Throws Error(EmptyConsequent).
std::vector<SwrlRule> lloyd_topor(const SwrlRule& r);

/// Translates rules to Datalog*. Variables are capitalized (x -> X),
/// same_as / different_from / builtins become prolog-prefixed literals.
/// Rules with several consequents are split first.
Program swrl_to_datalog(const std::vector<SwrlRule>& rules);

/// Abstract-syntax rendering of a rule.
std::string format_swrl(const SwrlRule& r);

}  // namespace ddlite::syntax
