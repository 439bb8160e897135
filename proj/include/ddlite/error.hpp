#pragma once

#include <stdexcept>
#include <string>

namespace ddlite {

/// Position of a parsed construct, 1-based.
struct SourceSpan {
    std::string file;
    int line = 0;
    int column = 0;

    bool known() const { return line > 0; }
    std::string to_string() const;
};

enum class Errc {
    // syntax
    Syntax,
    DuplicateRuleName,
    XmlSyntax,
    UnsupportedConstruct,
    UnknownAtomForm,
    VariableCollision,
    EmptyConsequent,
    // graphs
    WrongKind,
    NodeNotFound,
    KindMismatch,
    NotUnifiable,
    NegatedLiteral,
    BuiltinLiteral,
    IndexOutOfRange,
    // engine
    Safety,
    Cycle,
    Instantiation,
    Type,
    UnknownBuiltin,
    ResourceLimitExceeded,
    NonGroundHead,
    // hybrid
    Io,
    RaggedRow,
    NumericParse,
    UnboundFilterVariable,
    AttrOnText,
    NonNumericAggregate,
    TemplateVarUnbound,
    UnknownDocument,
    // cli
    Usage,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message, SourceSpan span = {});

    Errc code() const noexcept { return code_; }
    const SourceSpan& span() const noexcept { return span_; }
    /// The message without the error name and position.
    const std::string& message() const noexcept { return message_; }

private:
    Errc code_;
    SourceSpan span_;
    std::string message_;
};

}  // namespace ddlite
