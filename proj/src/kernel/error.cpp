#include "ddlite/error.hpp"

namespace ddlite {

std::string SourceSpan::to_string() const {
    std::string out = file.empty() ? "<input>" : file;
    if (line > 0) out += ":" + std::to_string(line) + ":" + std::to_string(column);
    return out;
}

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::Syntax: return "SyntaxError";
    case Errc::DuplicateRuleName: return "DuplicateRuleName";
    case Errc::XmlSyntax: return "XmlSyntaxError";
    case Errc::UnsupportedConstruct: return "UnsupportedConstruct";
    case Errc::UnknownAtomForm: return "UnknownAtomForm";
    case Errc::VariableCollision: return "VariableCollision";
    case Errc::EmptyConsequent: return "EmptyConsequent";
    case Errc::WrongKind: return "WrongKind";
    case Errc::NodeNotFound: return "NodeNotFound";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::NotUnifiable: return "NotUnifiable";
    case Errc::NegatedLiteral: return "NegatedLiteral";
    case Errc::BuiltinLiteral: return "BuiltinLiteral";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::Safety: return "SafetyError";
    case Errc::Cycle: return "CycleError";
    case Errc::Instantiation: return "InstantiationError";
    case Errc::Type: return "TypeError";
    case Errc::UnknownBuiltin: return "UnknownBuiltin";
    case Errc::ResourceLimitExceeded: return "ResourceLimitExceeded";
    case Errc::NonGroundHead: return "NonGroundHead";
    case Errc::Io: return "IoError";
    case Errc::RaggedRow: return "RaggedRow";
    case Errc::NumericParse: return "NumericParseError";
    case Errc::UnboundFilterVariable: return "UnboundFilterVariable";
    case Errc::AttrOnText: return "AttrAccessOnText";
    case Errc::NonNumericAggregate: return "NonNumericAggregate";
    case Errc::TemplateVarUnbound: return "TemplateVarUnbound";
    case Errc::UnknownDocument: return "UnknownDocument";
    case Errc::Usage: return "UsageError";
    }
    return "Error";
}

namespace {

std::string decorate(Errc code, const std::string& message, const SourceSpan& span) {
    std::string out = errc_name(code);
    if (span.known()) out += " at " + span.to_string();
    out += ": " + message;
    return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message, SourceSpan span)
    : std::runtime_error(decorate(code, message, span)), code_(code), span_(std::move(span)), message_(message) {}

}  // namespace ddlite
