#include "ddlite/hybrid/csv.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ddlite/error.hpp"

namespace ddlite::hybrid {

namespace {

struct Record {
    std::vector<std::string> fields;
    int line;
};

std::vector<Record> records(std::string_view text, const std::string& file) {
    std::vector<Record> out;
    std::size_t i = 0;
    int line = 1;
    while (i < text.size()) {
        Record r{{}, line};
        std::string field;
        bool end_of_record = false;
        while (!end_of_record) {
            if (i < text.size() && text[i] == '"') {
                int start = line;
                ++i;
                while (true) {
                    if (i >= text.size())
                        throw Error(Errc::Syntax, "unterminated quoted field", {file, start, 0});
                    if (text[i] == '"') {
                        if (i + 1 < text.size() && text[i + 1] == '"') {
                            field += '"';
                            i += 2;
                            continue;
                        }
                        ++i;
                        break;
                    }
                    if (text[i] == '\n') ++line;
                    field += text[i++];
                }
            }
            while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') field += text[i++];
            r.fields.push_back(std::move(field));
            field.clear();
            if (i >= text.size()) {
                end_of_record = true;
            } else if (text[i] == ',') {
                ++i;
            } else {
                if (text[i] == '\r') ++i;
                if (i < text.size() && text[i] == '\n') ++i;
                ++line;
                end_of_record = true;
            }
        }
        // blank lines carry no record
        if (r.fields.size() == 1 && r.fields[0].empty()) continue;
        out.push_back(std::move(r));
    }
    return out;
}

bool is_null(const std::string& cell) {
    if (cell.size() != 4) return false;
    std::string low;
    for (char c : cell) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return low == "null";
}

}  // namespace

std::vector<std::vector<std::string>> read_csv(std::string_view text) {
    std::vector<std::vector<std::string>> out;
    for (auto& r : records(text, {})) out.push_back(std::move(r.fields));
    return out;
}

std::vector<Atom> facts_from_csv_text(std::string_view text, const std::string& pred, Header header,
                                      const std::optional<std::set<std::size_t>>& numeric_cols,
                                      const std::string& file) {
    auto rows = records(text, file);
    if (rows.empty()) return {};
    const std::size_t width = rows.front().fields.size();
    for (const auto& r : rows)
        if (r.fields.size() != width)
            throw Error(Errc::RaggedRow,
                        "line " + std::to_string(r.line) + " has " + std::to_string(r.fields.size()) +
                            " fields, expected " + std::to_string(width),
                        {file, r.line, 1});
    if (header == Header::Present) rows.erase(rows.begin());

    std::vector<bool> numeric(width, false);
    if (numeric_cols) {
        for (auto c : *numeric_cols)
            if (c < width) numeric[c] = true;
    } else {
        for (std::size_t c = 0; c < width; ++c) {
            bool any = false, all = true;
            for (const auto& r : rows) {
                const auto& cell = r.fields[c];
                if (is_null(cell)) continue;
                any = true;
                all = all && parse_number(cell).has_value();
            }
            numeric[c] = any && all;
        }
    }

    std::vector<Atom> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<Term> args;
        for (std::size_t c = 0; c < width; ++c) {
            const auto& cell = r.fields[c];
            if (is_null(cell)) {
                args.push_back(Term::constant("null"));
            } else if (numeric[c]) {
                auto v = parse_number(cell);
                if (!v)
                    throw Error(Errc::NumericParse,
                                "row " + std::to_string(r.line) + " column " + std::to_string(c + 1) + ": '" + cell +
                                    "' is not a number",
                                {file, r.line, static_cast<int>(c + 1)});
                args.push_back(*v);
            } else {
                args.push_back(Term::constant(cell));
            }
        }
        Atom a(pred, std::move(args));
        a.span = {file, r.line, 1};
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<Atom> load_facts_csv(const std::string& path, const std::string& pred, Header header,
                                 const std::optional<std::set<std::size_t>>& numeric_cols) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return facts_from_csv_text(buf.str(), pred, header, numeric_cols, path);
}

}  // namespace ddlite::hybrid
