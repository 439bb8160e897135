#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ddlite/error.hpp"
#include "ddlite/term.hpp"

namespace ddlite {

/// Identifies a predicate symbol: optional module prefix, name, arity.
struct PredKey {
    std::string prefix;
    std::string name;
    std::size_t arity = 0;

    std::string to_string() const;

    friend bool operator==(const PredKey&, const PredKey&) = default;
    friend auto operator<=>(const PredKey&, const PredKey&) = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;
    /// Module prefix such as "prolog" or "swrlx"; empty when absent.
    std::string prefix;
    SourceSpan span;

    Atom() = default;
    Atom(std::string pred, std::vector<Term> arguments, std::string module_prefix = {})
        : predicate(std::move(pred)), args(std::move(arguments)), prefix(std::move(module_prefix)) {}

    PredKey key() const { return {prefix, predicate, args.size()}; }
    std::size_t arity() const { return args.size(); }
    bool is_ground() const;

    /// The atom as a term, without its module prefix.
    Term to_term() const;
    /// Inverse of to_term; nullopt for variables and numbers.
    static std::optional<Atom> from_term(const Term& t, std::string prefix = {});

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.predicate == b.predicate && a.prefix == b.prefix && a.args == b.args;
    }
};

/// Standard order on atoms: name, arity, prefix, then arguments.
int compare(const Atom& a, const Atom& b);

struct AtomHash {
    std::size_t operator()(const Atom& a) const;
};

enum class Polarity { Positive, NegatedDefault };

struct Literal {
    Polarity polarity = Polarity::Positive;
    Atom atom;

    bool negated() const { return polarity == Polarity::NegatedDefault; }

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct Rule {
    std::string name;
    Atom head;
    std::vector<Literal> body;
    SourceSpan span;

    bool is_fact() const { return body.empty(); }

    /// Structural equality, ignoring name and spans.
    bool same_clause(const Rule& other) const { return head == other.head && body == other.body; }
};

struct Program {
    std::vector<Rule> rules;

    bool empty() const { return rules.empty(); }
    /// Predicates occurring in some head.
    std::set<PredKey> idb() const;
    /// Predicates occurring only in bodies.
    std::set<PredKey> edb() const;
    const Rule* find_rule(const std::string& name) const;
    /// Append ground facts as body-less rules named "<prefix><k>".
    void add_facts(const std::vector<Atom>& facts, const std::string& name_prefix = "f");
};

}  // namespace ddlite
