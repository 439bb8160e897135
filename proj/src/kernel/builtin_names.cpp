#include "ddlite/builtin_names.hpp"

#include <array>
#include <utility>

namespace ddlite {

namespace {

constexpr std::array<std::pair<std::string_view, std::size_t>, 17> kBuiltins{{
    {"is", 2},
    {"<", 2},
    {"=<", 2},
    {">", 2},
    {">=", 2},
    {"=:=", 2},
    {"=\\=", 2},
    {"=", 2},
    {"atom_number", 2},
    {"pt", 2},
    {"same_as", 2},
    {"different_from", 2},
    {"create_owl_thing", 4},
    {"append", 2},
    {"true", 0},
    {"!", 0},
    {"\\=", 2},
}};

}  // namespace

bool is_builtin_name(std::string_view name, std::size_t arity) {
    for (const auto& [n, a] : kBuiltins)
        if (n == name && a == arity) return true;
    return false;
}

}  // namespace ddlite
