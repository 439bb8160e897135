#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ddlite/program.hpp"

namespace ddlite::hybrid {

enum class Header { Present, Absent };

/// RFC 4180 records; quoted fields may contain commas, quotes ("") and line
/// breaks. Throws Error(Syntax) for an unterminated quote.
std::vector<std::vector<std::string>> read_csv(std::string_view text);

/// Each row becomes pred(c1, ..., cn). Cells in numeric_cols (0-based) must
/// be numbers; without numeric_cols a column is numeric when all of its
/// non-null cells are. A cell "null" in any case is the constant null.
/// Throws Error(Io | RaggedRow | NumericParse).
std::vector<Atom> load_facts_csv(const std::string& path, const std::string& pred, Header header = Header::Present,
                                 const std::optional<std::set<std::size_t>>& numeric_cols = std::nullopt);

std::vector<Atom> facts_from_csv_text(std::string_view text, const std::string& pred, Header header,
                                      const std::optional<std::set<std::size_t>>& numeric_cols,
                                      const std::string& file = {});

}  // namespace ddlite::hybrid
