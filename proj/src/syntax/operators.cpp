#include "ddlite/syntax/operators.hpp"

#include <array>
#include <utility>

namespace ddlite::syntax {

namespace {

struct Entry {
    std::string_view name;
    OpDef def;
};

constexpr std::array kInfix{
    Entry{":-", {1200, OpType::xfx}}, Entry{",", {1000, OpType::xfy}},
    Entry{":=", {990, OpType::xfx}},  Entry{"is", {700, OpType::xfx}},
    Entry{"=", {700, OpType::xfx}},   Entry{"\\=", {700, OpType::xfx}},
    Entry{"==", {700, OpType::xfx}},  Entry{"\\==", {700, OpType::xfx}},
    Entry{"<", {700, OpType::xfx}},   Entry{">", {700, OpType::xfx}},
    Entry{"=<", {700, OpType::xfx}},  Entry{">=", {700, OpType::xfx}},
    Entry{"=:=", {700, OpType::xfx}}, Entry{"=\\=", {700, OpType::xfx}},
    Entry{"+", {500, OpType::yfx}},   Entry{"-", {500, OpType::yfx}},
    Entry{"*", {400, OpType::yfx}},   Entry{"/", {400, OpType::yfx}},
    Entry{"::", {200, OpType::xfx}},  Entry{"@", {200, OpType::xfx}},
    Entry{":", {200, OpType::xfy}},
};

constexpr std::array kPrefix{
    Entry{"-", {200, OpType::fy}},
    Entry{"\\+", {900, OpType::fy}},
    Entry{"not", {900, OpType::fy}},
    Entry{"@", {200, OpType::fx}},
};

template <std::size_t N>
std::optional<OpDef> find(const std::array<Entry, N>& table, std::string_view name) {
    for (const auto& e : table)
        if (e.name == name) return e.def;
    return std::nullopt;
}

}  // namespace

std::optional<OpDef> infix_op(std::string_view name) { return find(kInfix, name); }
std::optional<OpDef> prefix_op(std::string_view name) { return find(kPrefix, name); }

}  // namespace ddlite::syntax
