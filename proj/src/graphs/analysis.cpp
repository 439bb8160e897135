#include "ddlite/graphs/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <cctype>
#include <iterator>

#include "json.hpp"

#include "ddlite/error.hpp"
#include "ddlite/substitution.hpp"

namespace ddlite::graphs {

namespace {

using Adjacency = std::map<Node, std::vector<Edge>>;

Adjacency adjacency(const DepGraph& g) {
    Adjacency adj;
    for (const auto& e : g.edges) adj[e.from].push_back(e);
    return adj;
}

std::set<Node> closure(const Adjacency& adj, const Node& from) {
    std::set<Node> seen;
    std::deque<Node> work{from};
    while (!work.empty()) {
        Node n = work.front();
        work.pop_front();
        auto it = adj.find(n);
        if (it == adj.end()) continue;
        for (const auto& e : it->second)
            if (seen.insert(e.to).second) work.push_back(e.to);
    }
    return seen;
}

}  // namespace

std::set<Node> reachable(const DepGraph& g, const Node& from) {
    if (!g.contains(from)) throw Error(Errc::NodeNotFound, "no node " + from.id());
    auto seen = closure(adjacency(g), from);
    seen.erase(from);
    if (g.kind == GraphKind::RPG)
        std::erase_if(seen, [](const Node& n) { return n.kind != Node::Kind::Pred; });
    return seen;
}

bool on_cycle(const DepGraph& g, const Node& n) {
    if (!g.contains(n)) throw Error(Errc::NodeNotFound, "no node " + n.id());
    return closure(adjacency(g), n).count(n) != 0;
}

Rule unfold_helper(const Rule& r1, const Rule& r2, std::size_t index) {
    if (index == 0 || index > r1.body.size())
        throw Error(Errc::IndexOutOfRange,
                    "literal " + std::to_string(index) + " of " + r1.name + " (body has " +
                        std::to_string(r1.body.size()) + ")",
                    r1.span);
    const Literal& target = r1.body[index - 1];
    if (target.negated())
        throw Error(Errc::NegatedLiteral, "cannot unfold through negation in " + r1.name, target.atom.span);
    if (!target.atom.prefix.empty())
        throw Error(Errc::BuiltinLiteral, "cannot unfold builtin call in " + r1.name, target.atom.span);

    auto taken = rule_vars(r1);
    std::set<std::string> used(taken.begin(), taken.end());
    Rule helper;
    for (int k = 1;; ++k) {
        std::string suffix = "_" + std::to_string(k);
        helper = rename_apart(r2, suffix);
        bool clash = false;
        for (const auto& v : rule_vars(helper)) clash = clash || used.count(v);
        if (!clash) break;
    }

    auto theta = mgu(target.atom, helper.head);
    if (!theta)
        throw Error(Errc::NotUnifiable, "literal " + std::to_string(index) + " of " + r1.name +
                                            " does not unify with the head of " + r2.name);

    Rule out;
    out.name = r1.name + "+" + r2.name;
    out.span = r1.span;
    out.head = apply(*theta, r1.head);
    for (std::size_t i = 0; i < r1.body.size(); ++i) {
        if (i + 1 == index) {
            for (const auto& l : helper.body) out.body.push_back(apply(*theta, l));
        } else {
            out.body.push_back(apply(*theta, r1.body[i]));
        }
    }
    return out;
}

bool equivalent_modulo_helpers(const Program& p1, const Program& p2, const PredKey& root,
                               const std::set<PredKey>& helpers, const GraphOptions& opts) {
    auto project = [&](const Program& p) {
        std::set<PredKey> out;
        for (const auto& n : reachable(build_pdg(p, opts), Node::predicate(root)))
            if (!helpers.count(n.pred)) out.insert(n.pred);
        return out;
    };
    return project(p1) == project(p2);
}

namespace {

// Natural order on names so that r2 sorts before r10.
bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            auto x = a.substr(i, i2 - i), y = b.substr(j, j2 - j);
            if (x.size() != y.size()) return x.size() < y.size();
            if (x != y) return x < y;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

const char* mark_str(EdgeMark m) { return m == EdgeMark::Not ? "not" : "plain"; }

}  // namespace

DepGraph canonicalize_rpg(const DepGraph& g) {
    if (g.kind != GraphKind::RPG) return g;
    auto adj = adjacency(g);
    auto outs = [&](const Node& n) {
        auto it = adj.find(n);
        return it == adj.end() ? std::vector<Edge>{} : it->second;
    };

    auto meta_sig = [&](const Edge& e) {
        std::vector<std::string> inner;
        for (const auto& x : outs(e.to)) inner.push_back(x.to.id() + "|" + mark_str(x.mark));
        std::sort(inner.begin(), inner.end());
        std::string s = "meta:" + e.to.pred.to_string() + "|" + mark_str(e.mark) + "{";
        for (const auto& i : inner) s += i + ";";
        return s + "}";
    };
    auto edge_sig = [&](const Edge& e) {
        return e.to.kind == Node::Kind::MetaCall ? meta_sig(e) : e.to.id() + "|" + mark_str(e.mark);
    };

    struct Entry {
        Node rule;
        std::string head;
        std::vector<std::string> body;
    };
    std::vector<Entry> rules;
    for (const auto& n : g.nodes) {
        if (n.kind != Node::Kind::Rule) continue;
        Entry e{n, {}, {}};
        for (const auto& in : g.in_edges(n))
            if (in.from.kind == Node::Kind::Pred) e.head = in.from.id();
        for (const auto& o : outs(n)) e.body.push_back(edge_sig(o));
        std::sort(e.body.begin(), e.body.end());
        rules.push_back(std::move(e));
    }
    std::sort(rules.begin(), rules.end(), [](const Entry& a, const Entry& b) {
        if (a.head != b.head) return a.head < b.head;
        if (a.body != b.body) return a.body < b.body;
        return natural_less(a.rule.name, b.rule.name);
    });

    std::map<Node, Node> rename;
    int site = 0;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        rename.emplace(rules[i].rule, Node::rule("r" + std::to_string(i + 1)));
        std::vector<Edge> metas;
        for (const auto& o : outs(rules[i].rule))
            if (o.to.kind == Node::Kind::MetaCall) metas.push_back(o);
        std::stable_sort(metas.begin(), metas.end(),
                         [&](const Edge& a, const Edge& b) { return meta_sig(a) < meta_sig(b); });
        for (const auto& m : metas)
            if (!rename.count(m.to)) rename.emplace(m.to, Node::meta(m.to.pred, ++site));
    }
    auto map = [&](const Node& n) {
        auto it = rename.find(n);
        return it == rename.end() ? n : it->second;
    };

    DepGraph out;
    out.kind = g.kind;
    for (const auto& n : g.nodes) out.add_node(map(n));
    for (const auto& e : g.edges) out.add_edge(map(e.from), map(e.to), e.mark);
    return out;
}

DiffReport graph_diff(const DepGraph& left, const DepGraph& right) {
    if (left.kind != right.kind)
        throw Error(Errc::KindMismatch,
                    std::string("cannot diff ") + kind_name(left.kind) + " against " + kind_name(right.kind));
    DepGraph l = canonicalize_rpg(left), r = canonicalize_rpg(right);
    DiffReport d;
    std::set_difference(l.nodes.begin(), l.nodes.end(), r.nodes.begin(), r.nodes.end(),
                        std::inserter(d.nodes_only_left, d.nodes_only_left.end()));
    std::set_difference(r.nodes.begin(), r.nodes.end(), l.nodes.begin(), l.nodes.end(),
                        std::inserter(d.nodes_only_right, d.nodes_only_right.end()));
    std::set_difference(l.edges.begin(), l.edges.end(), r.edges.begin(), r.edges.end(),
                        std::inserter(d.edges_only_left, d.edges_only_left.end()));
    std::set_difference(r.edges.begin(), r.edges.end(), l.edges.begin(), l.edges.end(),
                        std::inserter(d.edges_only_right, d.edges_only_right.end()));
    return d;
}

namespace {

void schema_walk(const XmlTerm& x, bool attrs, DepGraph& g) {
    Node self = Node::tag(x.tag);
    g.add_node(self);
    if (attrs)
        for (const auto& [k, v] : x.attributes) g.add_edge(self, Node::tag("@" + k));
    for (const XmlTerm* c : x.elements()) {
        g.add_edge(self, Node::tag(c->tag));
        schema_walk(*c, attrs, g);
    }
}

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

const char* type_name(Node::Kind k) {
    switch (k) {
        case Node::Kind::Pred: return "pred";
        case Node::Kind::Rule: return "rule";
        case Node::Kind::MetaCall: return "meta";
        case Node::Kind::Tag: return "tag";
    }
    return "?";
}

nlohmann::ordered_json node_json(const Node& n) {
    return {{"id", n.id()}, {"type", type_name(n.kind)}, {"label", n.label()}};
}

nlohmann::ordered_json edge_json(const Edge& e) {
    return {{"from", e.from.id()}, {"to", e.to.id()}, {"mark", mark_str(e.mark)}};
}

}  // namespace

DepGraph schema_graph(const XmlTerm& doc, bool include_attributes) {
    DepGraph g;
    g.kind = GraphKind::Schema;
    if (!doc.is_text()) schema_walk(doc, include_attributes, g);
    return g;
}

std::string to_dot(const DepGraph& g) {
    if (g.nodes.empty()) return "digraph G { }\n";
    std::string out = "digraph G {\n";
    for (const auto& n : g.nodes) {
        out += "  " + dot_quote(n.id()) + " [";
        switch (n.kind) {
            case Node::Kind::Pred: out += "shape=ellipse"; break;
            case Node::Kind::Rule: out += "shape=box"; break;
            case Node::Kind::MetaCall: out += "shape=plaintext,label=" + dot_quote(n.label()); break;
            case Node::Kind::Tag: out += n.name.starts_with("@") ? "shape=plaintext" : "shape=ellipse"; break;
        }
        out += "];\n";
    }
    for (const auto& e : g.edges) {
        out += "  " + dot_quote(e.from.id()) + " -> " + dot_quote(e.to.id());
        if (e.mark == EdgeMark::Not) out += " [label=\"not\"]";
        out += ";\n";
    }
    return out + "}\n";
}

std::string to_json(const DepGraph& g) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(g.kind);
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : g.nodes) j["nodes"].push_back(node_json(n));
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges) j["edges"].push_back(edge_json(e));
    return j.dump(2) + "\n";
}

std::string format_diff(const DiffReport& d) {
    if (d.empty()) return "no differences\n";
    std::string out;
    for (const auto& n : d.nodes_only_left) out += "- node " + n.id() + "\n";
    for (const auto& n : d.nodes_only_right) out += "+ node " + n.id() + "\n";
    auto edge = [](const Edge& e) {
        return e.from.id() + " -> " + e.to.id() + (e.mark == EdgeMark::Not ? " [not]" : "");
    };
    for (const auto& e : d.edges_only_left) out += "- edge " + edge(e) + "\n";
    for (const auto& e : d.edges_only_right) out += "+ edge " + edge(e) + "\n";
    return out;
}

std::string diff_to_json(const DiffReport& d) {
    nlohmann::ordered_json j;
    j["identical"] = d.empty();
    auto nodes = [](const std::set<Node>& s) {
        auto a = nlohmann::ordered_json::array();
        for (const auto& n : s) a.push_back(node_json(n));
        return a;
    };
    auto edges = [](const std::set<Edge>& s) {
        auto a = nlohmann::ordered_json::array();
        for (const auto& e : s) a.push_back(edge_json(e));
        return a;
    };
    j["nodes_only_left"] = nodes(d.nodes_only_left);
    j["nodes_only_right"] = nodes(d.nodes_only_right);
    j["edges_only_left"] = edges(d.edges_only_left);
    j["edges_only_right"] = edges(d.edges_only_right);
    auto eq = nlohmann::ordered_json::array();
    for (const auto& k : d.equivalent_modulo) eq.push_back(k.to_string());
    j["equivalent_modulo"] = eq;
    return j.dump(2) + "\n";
}

}  // namespace ddlite::graphs
