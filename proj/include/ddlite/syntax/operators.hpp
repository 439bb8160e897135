#pragma once

#include <optional>
#include <string_view>

namespace ddlite::syntax {

enum class OpType { xfx, xfy, yfx, fy, fx };

struct OpDef {
    int priority;
    OpType type;
};

/// Operator table shared by the reader and the writer.
std::optional<OpDef> infix_op(std::string_view name);
std::optional<OpDef> prefix_op(std::string_view name);

inline int left_max(const OpDef& op) { return op.type == OpType::yfx ? op.priority : op.priority - 1; }
inline int right_max(const OpDef& op) {
    return (op.type == OpType::xfy || op.type == OpType::fy) ? op.priority : op.priority - 1;
}

}  // namespace ddlite::syntax
