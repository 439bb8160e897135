#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ddlite {

enum class TermKind : std::uint8_t { Var, Const, Int, Float, Compound };

/// Immutable, structurally shared term. Copies are cheap.
///
/// Lists are stored in canonical '.'/2 form with '[]' as the empty list, so
/// `[a,b]` and `'.'(a,'.'(b,[]))` are the same value. A compound with no
/// arguments is a Const.
class Term {
public:
    Term();

    static Term var(std::string name);
    static Term constant(std::string symbol);
    static Term integer(std::int64_t value);
    static Term real(double value);
    static Term compound(std::string functor, std::vector<Term> args);
    static Term list(std::vector<Term> elements, Term tail = nil());
    static Term nil();

    TermKind kind() const;
    bool is_var() const { return kind() == TermKind::Var; }
    bool is_const() const { return kind() == TermKind::Const; }
    bool is_int() const { return kind() == TermKind::Int; }
    bool is_float() const { return kind() == TermKind::Float; }
    bool is_number() const { return is_int() || is_float(); }
    bool is_compound() const { return kind() == TermKind::Compound; }
    bool is_atomic() const { return !is_var() && !is_compound(); }
    bool is_ground() const;
    bool is_nil() const;
    bool is_list_cell() const;

    /// Variable name, constant symbol, or functor.
    const std::string& name() const;
    std::int64_t int_value() const;
    double float_value() const;
    /// Int or Float widened to double.
    double numeric_value() const;

    std::span<const Term> args() const;
    std::size_t arity() const;
    const Term& arg(std::size_t i) const { return args()[i]; }

    std::size_t hash() const;

    /// Collect list elements if this is a proper list.
    bool list_elements(std::vector<Term>& out) const;

    friend bool operator==(const Term& a, const Term& b);
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);

    struct Rep;

private:
    explicit Term(std::shared_ptr<const Rep> rep);
    std::shared_ptr<const Rep> rep_;
};

/// Standard order of terms: Var < Number < Const < Compound. Numbers compare
/// by value, a Float sorts before an Int of equal value. Compounds by arity,
/// then functor, then arguments left to right.
int compare(const Term& a, const Term& b);

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Variables of a term in first-occurrence order.
void collect_vars(const Term& t, std::vector<std::string>& out);

/// Reads a whole string as a number: an integer literal gives Int, a decimal
/// or exponent form gives Float. Anything else (including "NULL", "inf" and
/// surrounding blanks) yields nullopt.
std::optional<Term> parse_number(std::string_view text);

}  // namespace ddlite
