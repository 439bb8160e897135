#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddlite/substitution.hpp"
#include "ddlite/syntax/xml.hpp"

namespace ddlite::hybrid {

/// Throws Error(Io | XmlSyntax | UnsupportedConstruct).
XmlTerm load_xml(const std::string& path);

/// xml_element(Tag, [Name = Value, ...], [Child, ...]); text children are
/// constants.
Term element_to_term(const XmlTerm& x);
std::optional<XmlTerm> term_to_element(const Term& t);

struct PathStep {
    enum class Kind { Child, Attr, Filter };
    Kind kind = Kind::Child;
    /// Tag for Child, attribute name for Attr and Filter.
    std::string name;
    /// Filter value: a constant, number or variable.
    Term value;
};

/// Source is doc('file') or a variable bound to an element term.
struct PathExpr {
    Term source;
    std::vector<PathStep> steps;
};

/// Reads `doc(F)/tag::[@'A'=V, ...]/...` and `Src@'A'` terms.
/// Throws Error(Syntax) for anything else.
PathExpr parse_path(const Term& t);

struct PathResult {
    /// The element reached, or the attribute value for a final Attr step.
    std::optional<XmlTerm> element;
    std::optional<std::string> value;
    Substitution env;

    /// Element term or attribute constant.
    Term to_term() const;
};

/// Applies the steps to `context`, which plays the role of the path source.
/// Child steps go one level down in document order; filters compare the
/// attribute text with the canonical rendering of the bound value.
/// Throws Error(UnboundFilterVariable | AttrOnText).
std::vector<PathResult> path_eval(const XmlTerm& context, const PathExpr& expr, const Substitution& env);

/// Documents addressed by doc('name'): registered names first, then files
/// relative to the working directory and the search directories.
class DocRegistry {
public:
    void add(const std::string& name, const std::string& path);
    void add_search_dir(const std::string& dir);
    const XmlTerm& get(const std::string& name);
    const std::map<std::string, std::string>& registered() const { return paths_; }

private:
    std::map<std::string, std::string> paths_;
    std::vector<std::string> dirs_;
    std::map<std::string, XmlTerm> loaded_;
};

/// Canonical text of a ground atomic term as compared against attributes.
std::string attribute_text(const Term& t);

}  // namespace ddlite::hybrid
