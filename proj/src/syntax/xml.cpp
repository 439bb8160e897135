#include "ddlite/syntax/xml.hpp"

#include <cctype>

#include "ddlite/error.hpp"

namespace ddlite {

const std::string* XmlTerm::attribute(std::string_view name) const {
    for (const auto& [k, v] : attributes)
        if (k == name) return &v;
    return nullptr;
}

std::vector<const XmlTerm*> XmlTerm::elements() const {
    std::vector<const XmlTerm*> out;
    for (const auto& c : children)
        if (!c.is_text()) out.push_back(&c);
    return out;
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

std::string XmlTerm::inner_text() const {
    std::string out;
    for (const auto& c : children)
        if (c.is_text()) out += c.text;
    return trim(out);
}

XmlTerm XmlTerm::text_node(std::string text) {
    XmlTerm t;
    t.text = std::move(text);
    return t;
}

bool operator==(const XmlTerm& a, const XmlTerm& b) {
    return a.tag == b.tag && a.attributes == b.attributes && a.text == b.text && a.children == b.children;
}

namespace syntax {

namespace {

bool name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
           static_cast<unsigned char>(c) >= 0x80;
}
bool name_char(char c) {
    return name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

class XmlReader {
public:
    XmlReader(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

    XmlTerm document() {
        skip_misc();
        if (starts_with("<?xml")) {
            skip_until("?>");
            skip_misc();
        }
        if (starts_with("<!DOCTYPE")) unsupported("DOCTYPE declaration");
        if (peek() != '<') fail("expected root element");
        XmlTerm root = element();
        skip_misc();
        if (pos_ < src_.size()) fail("content after the root element");
        return root;
    }

private:
    char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }
    bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::XmlSyntax, msg, SourceSpan{file_, line_, col_});
    }
    [[noreturn]] void unsupported(const std::string& what) const {
        throw Error(Errc::UnsupportedConstruct, what, SourceSpan{file_, line_, col_});
    }

    void skip_ws() {
        while (std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    void skip_until(std::string_view end) {
        while (!starts_with(end)) {
            if (pos_ >= src_.size()) fail("unterminated construct, expected '" + std::string(end) + "'");
            advance();
        }
        advance(end.size());
    }

    // whitespace and comments between markup
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<!--")) {
                skip_until("-->");
                continue;
            }
            return;
        }
    }

    std::string name() {
        if (!name_start(peek())) fail("expected a name");
        std::string out;
        while (name_char(peek())) {
            out += peek();
            advance();
        }
        return out;
    }

    std::string decode(std::string_view raw) const {
        std::string out;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out += raw[i];
                continue;
            }
            auto semi = raw.find(';', i);
            if (semi == std::string_view::npos) fail("unterminated entity reference");
            auto ent = raw.substr(i + 1, semi - i - 1);
            if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "amp") out += '&';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else throw Error(Errc::UnsupportedConstruct, "entity reference &" + std::string(ent) + ";",
                             SourceSpan{file_, line_, col_});
            i = semi;
        }
        return out;
    }

    XmlTerm element() {
        XmlTerm e;
        e.line = line_;
        e.column = col_;
        advance();  // '<'
        e.tag = name();
        for (;;) {
            skip_ws();
            if (starts_with("/>")) {
                advance(2);
                return e;
            }
            if (peek() == '>') {
                advance();
                break;
            }
            std::string key = name();
            skip_ws();
            if (peek() != '=') fail("expected '=' after attribute " + key);
            advance();
            skip_ws();
            char q = peek();
            if (q != '"' && q != '\'') fail("expected quoted attribute value");
            advance();
            std::size_t start = pos_;
            while (peek() != q) {
                if (pos_ >= src_.size()) fail("unterminated attribute value");
                if (peek() == '<') fail("'<' in attribute value");
                advance();
            }
            std::string value = decode(src_.substr(start, pos_ - start));
            advance();
            if (e.attribute(key)) fail("duplicate attribute " + key);
            e.attributes.emplace_back(std::move(key), std::move(value));
        }
        content(e);
        return e;
    }

    void content(XmlTerm& e) {
        for (;;) {
            if (pos_ >= src_.size()) fail("unclosed element <" + e.tag + ">");
            if (starts_with("</")) {
                advance(2);
                std::string closing = name();
                if (closing != e.tag) fail("mismatched closing tag </" + closing + "> for <" + e.tag + ">");
                skip_ws();
                if (peek() != '>') fail("expected '>'");
                advance();
                return;
            }
            if (starts_with("<!--")) {
                skip_until("-->");
                continue;
            }
            if (starts_with("<![CDATA[")) unsupported("CDATA section");
            if (starts_with("<?")) unsupported("processing instruction");
            if (starts_with("<!")) unsupported("markup declaration");
            if (peek() == '<') {
                e.children.push_back(element());
                continue;
            }
            std::size_t start = pos_;
            while (pos_ < src_.size() && peek() != '<') advance();
            std::string text = decode(src_.substr(start, pos_ - start));
            if (!trim(text).empty()) e.children.push_back(XmlTerm::text_node(std::move(text)));
        }
    }

    std::string_view src_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

void serialize(const XmlTerm& x, int depth, std::string& out) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out += indent + "<" + x.tag;
    for (const auto& [k, v] : x.attributes) out += " " + k + "=\"" + xml_escape(v) + "\"";
    if (x.children.empty()) {
        out += "/>\n";
        return;
    }
    bool has_text = false;
    for (const auto& c : x.children) has_text = has_text || c.is_text();
    if (has_text) {
        // mixed content is written inline so no whitespace is introduced
        out += ">";
        for (const auto& c : x.children) {
            if (c.is_text()) {
                out += xml_escape(c.text);
            } else {
                std::string inner;
                serialize(c, 0, inner);
                if (!inner.empty() && inner.back() == '\n') inner.pop_back();
                out += inner;
            }
        }
        out += "</" + x.tag + ">\n";
        return;
    }
    out += ">\n";
    for (const auto& c : x.children) serialize(c, depth + 1, out);
    out += indent + "</" + x.tag + ">\n";
}

}  // namespace

XmlTerm parse_xml(std::string_view text, const std::string& file) {
    XmlReader r(text, file);
    return r.document();
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string serialize_xml(const XmlTerm& x) {
    std::string out;
    serialize(x, 0, out);
    return out;
}

}  // namespace syntax
}  // namespace ddlite
