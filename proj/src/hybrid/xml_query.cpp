#include "ddlite/hybrid/xml_query.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ddlite/error.hpp"
#include "ddlite/syntax/printer.hpp"

namespace ddlite::hybrid {

namespace fs = std::filesystem;

XmlTerm load_xml(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return syntax::parse_xml(buf.str(), path);
}

Term element_to_term(const XmlTerm& x) {
    if (x.is_text()) return Term::constant(x.text);
    std::vector<Term> attrs, kids;
    for (const auto& [k, v] : x.attributes)
        attrs.push_back(Term::compound("=", {Term::constant(k), Term::constant(v)}));
    for (const auto& c : x.children) kids.push_back(element_to_term(c));
    return Term::compound("xml_element", {Term::constant(x.tag), Term::list(attrs), Term::list(kids)});
}

std::optional<XmlTerm> term_to_element(const Term& t) {
    if (t.is_const()) return XmlTerm::text_node(t.name());
    if (!t.is_compound() || t.name() != "xml_element" || t.arity() != 3 || !t.arg(0).is_const()) return std::nullopt;
    XmlTerm x;
    x.tag = t.arg(0).name();
    std::vector<Term> attrs, kids;
    if (!t.arg(1).list_elements(attrs) || !t.arg(2).list_elements(kids)) return std::nullopt;
    for (const auto& a : attrs) {
        if (!a.is_compound() || a.name() != "=" || a.arity() != 2 || !a.arg(0).is_const() || !a.arg(1).is_const())
            return std::nullopt;
        x.attributes.emplace_back(a.arg(0).name(), a.arg(1).name());
    }
    for (const auto& k : kids) {
        auto c = term_to_element(k);
        if (!c) return std::nullopt;
        x.children.push_back(std::move(*c));
    }
    return x;
}

std::string attribute_text(const Term& t) {
    if (t.is_const()) return t.name();
    if (t.is_number()) return syntax::format_number(t);
    return syntax::format_term(t);
}

namespace {

[[noreturn]] void bad_path(const Term& t, const std::string& why) {
    throw Error(Errc::Syntax, "path expression " + syntax::format_term(t) + ": " + why);
}

std::string step_name(const Term& whole, const Term& t) {
    if (t.is_const()) return t.name();
    if (t.is_number()) return attribute_text(t);
    bad_path(whole, "expected a name, got " + syntax::format_term(t));
}

bool is_op(const Term& t, const char* name, std::size_t arity) {
    return t.is_compound() && t.name() == name && t.arity() == arity;
}

void add_filters(const Term& whole, const Term& list, std::vector<PathStep>& steps) {
    std::vector<Term> conds;
    if (!list.list_elements(conds)) bad_path(whole, "filter must be a list");
    for (const auto& c : conds) {
        if (!is_op(c, "=", 2)) bad_path(whole, "filter must be @Attr = Value");
        Term attr = c.arg(0), value = c.arg(1);
        if (!is_op(attr, "@", 1)) std::swap(attr, value);
        if (!is_op(attr, "@", 1)) bad_path(whole, "filter must compare an attribute");
        steps.push_back({PathStep::Kind::Filter, step_name(whole, attr.arg(0)), value});
    }
}

void add_child_step(const Term& whole, const Term& s, std::vector<PathStep>& steps) {
    if (is_op(s, "::", 2)) {
        steps.push_back({PathStep::Kind::Child, step_name(whole, s.arg(0)), {}});
        add_filters(whole, s.arg(1), steps);
    } else if (is_op(s, "@", 2)) {
        add_child_step(whole, s.arg(0), steps);
        steps.push_back({PathStep::Kind::Attr, step_name(whole, s.arg(1)), {}});
    } else {
        steps.push_back({PathStep::Kind::Child, step_name(whole, s), {}});
    }
}

void parse_into(const Term& whole, const Term& t, PathExpr& out) {
    if (is_op(t, "/", 2)) {
        parse_into(whole, t.arg(0), out);
        add_child_step(whole, t.arg(1), out.steps);
    } else if (is_op(t, "@", 2)) {
        parse_into(whole, t.arg(0), out);
        out.steps.push_back({PathStep::Kind::Attr, step_name(whole, t.arg(1)), {}});
    } else if (t.is_var() || (is_op(t, "doc", 1) && t.arg(0).is_const())) {
        out.source = t;
    } else {
        bad_path(whole, "source must be doc(File) or a variable");
    }
}

}  // namespace

PathExpr parse_path(const Term& t) {
    PathExpr out;
    parse_into(t, t, out);
    for (std::size_t i = 0; i + 1 < out.steps.size(); ++i)
        if (out.steps[i].kind == PathStep::Kind::Attr) bad_path(t, "attribute access must be the last step");
    return out;
}

Term PathResult::to_term() const {
    if (value) return Term::constant(*value);
    return element_to_term(*element);
}

std::vector<PathResult> path_eval(const XmlTerm& context, const PathExpr& expr, const Substitution& env) {
    std::vector<XmlTerm> items{context};
    std::vector<PathResult> out;
    for (const auto& step : expr.steps) {
        std::vector<XmlTerm> next;
        switch (step.kind) {
            case PathStep::Kind::Child:
                for (const auto& it : items)
                    for (const auto& c : it.children)
                        if (!c.is_text() && c.tag == step.name) next.push_back(c);
                break;
            case PathStep::Kind::Filter: {
                Term v = apply(env, step.value);
                if (!v.is_ground())
                    throw Error(Errc::UnboundFilterVariable,
                                "filter @" + step.name + " compares with unbound " + syntax::format_term(v));
                std::string want = attribute_text(v);
                for (auto& it : items) {
                    const std::string* a = it.is_text() ? nullptr : it.attribute(step.name);
                    if (a && *a == want) next.push_back(std::move(it));
                }
                break;
            }
            case PathStep::Kind::Attr:
                for (const auto& it : items) {
                    if (it.is_text()) throw Error(Errc::AttrOnText, "@" + step.name + " applied to a text node");
                    if (const std::string* a = it.attribute(step.name)) out.push_back({std::nullopt, *a, env});
                }
                return out;
        }
        items = std::move(next);
    }
    for (auto& it : items) out.push_back({std::move(it), std::nullopt, env});
    return out;
}

void DocRegistry::add(const std::string& name, const std::string& path) {
    paths_[name] = path;
    loaded_.erase(name);
}

void DocRegistry::add_search_dir(const std::string& dir) {
    for (const auto& d : dirs_)
        if (d == dir) return;
    dirs_.push_back(dir);
}

const XmlTerm& DocRegistry::get(const std::string& name) {
    if (auto it = loaded_.find(name); it != loaded_.end()) return it->second;
    std::string path;
    if (auto it = paths_.find(name); it != paths_.end()) {
        path = it->second;
    } else if (fs::exists(name)) {
        path = name;
    } else {
        for (const auto& d : dirs_)
            if (fs::exists(fs::path(d) / name)) {
                path = (fs::path(d) / name).string();
                break;
            }
    }
    if (path.empty()) throw Error(Errc::UnknownDocument, "no document " + name);
    return loaded_.emplace(name, load_xml(path)).first->second;
}

}  // namespace ddlite::hybrid
