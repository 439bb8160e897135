#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ddlite {

/// Element tree of an XML document. A node with an empty tag is a text node
/// carrying `text`. Prefixed names ("swrlx:classAtom") are kept verbatim.
struct XmlTerm {
    std::string tag;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<XmlTerm> children;
    std::string text;
    int line = 0;
    int column = 0;

    bool is_text() const { return tag.empty(); }
    const std::string* attribute(std::string_view name) const;
    /// Element children only, in document order.
    std::vector<const XmlTerm*> elements() const;
    /// Concatenated text of direct text children, trimmed.
    std::string inner_text() const;

    static XmlTerm text_node(std::string text);

    /// Structural equality; source positions are ignored.
    friend bool operator==(const XmlTerm& a, const XmlTerm& b);
};

namespace syntax {

/// Parses the supported XML subset: elements, attributes, character data,
/// comments and a leading `<?xml ...?>` declaration. The five predefined
/// entities are decoded; DTDs, CDATA sections and other entity references are
/// rejected. Whitespace-only text is dropped.
///
/// Throws Error(XmlSyntax) or Error(UnsupportedConstruct).
XmlTerm parse_xml(std::string_view text, const std::string& file = {});

/// Serializes with two-space indentation; parse_xml(serialize_xml(x)) == x.
std::string serialize_xml(const XmlTerm& x);

std::string xml_escape(std::string_view s);

}  // namespace syntax
}  // namespace ddlite
