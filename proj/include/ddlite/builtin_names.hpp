#pragma once

#include <cstddef>
#include <string_view>

namespace ddlite {

/// Names of the embedded builtins evaluated by the engine (name/arity).
/// A literal is a builtin call when it carries the "prolog" prefix, or when
/// it is unprefixed, listed here, and not defined by any rule head.
bool is_builtin_name(std::string_view name, std::size_t arity);

inline constexpr std::string_view kBuiltinPrefix = "prolog";

}  // namespace ddlite
