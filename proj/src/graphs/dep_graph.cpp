#include "ddlite/graphs/dep_graph.hpp"

#include <sstream>

#include "ddlite/error.hpp"

namespace ddlite::graphs {

const char* kind_name(GraphKind k) {
    switch (k) {
        case GraphKind::PDG: return "pdg";
        case GraphKind::RPG: return "rpg";
        case GraphKind::Schema: return "schema";
    }
    return "?";
}

Node Node::predicate(PredKey key) {
    Node n;
    n.kind = Kind::Pred;
    n.pred = std::move(key);
    return n;
}

Node Node::rule(std::string name) {
    Node n;
    n.kind = Kind::Rule;
    n.name = std::move(name);
    return n;
}

Node Node::meta(PredKey key, int call_site) {
    Node n;
    n.kind = Kind::MetaCall;
    n.pred = std::move(key);
    n.call_site = call_site;
    return n;
}

Node Node::tag(std::string name) {
    Node n;
    n.kind = Kind::Tag;
    n.name = std::move(name);
    return n;
}

std::string Node::id() const {
    switch (kind) {
        case Kind::Pred: return pred.to_string();
        case Kind::MetaCall: return pred.to_string() + "#" + std::to_string(call_site);
        case Kind::Rule:
        case Kind::Tag: return name;
    }
    return {};
}

std::string Node::label() const {
    if (kind == Kind::MetaCall) return pred.to_string();
    return id();
}

std::strong_ordering operator<=>(const Node& a, const Node& b) {
    if (auto c = a.id() <=> b.id(); c != 0) return c;
    return a.kind <=> b.kind;
}

std::strong_ordering operator<=>(const Edge& a, const Edge& b) {
    if (auto c = a.from <=> b.from; c != 0) return c;
    if (auto c = a.to <=> b.to; c != 0) return c;
    return a.mark <=> b.mark;
}

void DepGraph::add_edge(const Node& from, const Node& to, EdgeMark mark) {
    nodes.insert(from);
    nodes.insert(to);
    edges.insert(Edge{from, to, mark});
}

std::vector<Edge> DepGraph::out_edges(const Node& n) const {
    std::vector<Edge> out;
    for (const auto& e : edges)
        if (e.from == n) out.push_back(e);
    return out;
}

std::vector<Edge> DepGraph::in_edges(const Node& n) const {
    std::vector<Edge> out;
    for (const auto& e : edges)
        if (e.to == n) out.push_back(e);
    return out;
}

std::vector<MetaSpec> GraphOptions::default_meta() {
    return {MetaSpec{PredKey{"", "not", 1}, {0}}, MetaSpec{PredKey{"", "findall", 3}, {1}}};
}

const MetaSpec* GraphOptions::find_meta(const PredKey& key) const {
    for (const auto& m : meta_predicates)
        if (m.key.name == key.name && m.key.arity == key.arity) return &m;
    return nullptr;
}

bool GraphOptions::negation_is_meta() const { return find_meta(PredKey{"", "not", 1}) != nullptr; }

std::vector<MetaSpec> parse_meta_list(const std::string& text) {
    std::vector<MetaSpec> out;
    std::stringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (item.empty()) continue;
        std::vector<std::string> parts;
        std::stringstream ps(item);
        std::string part;
        while (std::getline(ps, part, ':')) parts.push_back(part);
        auto slash = parts[0].rfind('/');
        if (slash == std::string::npos || slash == 0)
            throw Error(Errc::Usage, "meta predicate must be name/arity: " + item);
        MetaSpec m;
        m.key.name = parts[0].substr(0, slash);
        try {
            m.key.arity = std::stoul(parts[0].substr(slash + 1));
            for (std::size_t i = 1; i < parts.size(); ++i) {
                auto pos = std::stoul(parts[i]);
                if (pos == 0 || pos > m.key.arity) throw std::out_of_range("position");
                m.goal_args.push_back(pos - 1);
            }
        } catch (const std::logic_error&) {
            throw Error(Errc::Usage, "bad meta predicate spec: " + item);
        }
        if (parts.size() == 1)
            for (std::size_t i = 0; i < m.key.arity; ++i) m.goal_args.push_back(i);
        out.push_back(std::move(m));
    }
    return out;
}

namespace {

bool ignored_goal(const PredKey& k) { return k.arity == 0 && (k.name == "!" || k.name == "true"); }

struct Target {
    PredKey key;
    EdgeMark mark;
};

// Predicates called inside a goal argument of a meta call.
void goal_preds(const Term& g, EdgeMark mark, std::vector<Target>& out) {
    if (g.is_var() || g.is_number()) return;
    const auto& f = g.name();
    if (g.is_compound() && g.arity() == 2 && (f == "," || f == ";" || f == "->")) {
        goal_preds(g.arg(0), mark, out);
        goal_preds(g.arg(1), mark, out);
        return;
    }
    if (g.is_compound() && g.arity() == 1 && (f == "not" || f == "\\+")) {
        goal_preds(g.arg(0), EdgeMark::Not, out);
        return;
    }
    if (g.is_compound() && g.arity() == 2 && f == ":" && g.arg(0).is_const()) {
        const Term& inner = g.arg(1);
        if (inner.is_var() || inner.is_number()) return;
        PredKey k{g.arg(0).name(), inner.name(), inner.arity()};
        if (!ignored_goal(k)) out.push_back({k, mark});
        return;
    }
    PredKey k{"", f, g.arity()};
    if (!ignored_goal(k)) out.push_back({k, mark});
}

// Walks the body of every rule, reporting direct and meta-mediated calls.
template <class OnRule, class OnDirect, class OnMeta>
void walk(const Program& p, const GraphOptions& opts, OnRule on_rule, OnDirect on_direct, OnMeta on_meta) {
    int site = 0;
    for (const auto& r : p.rules) {
        on_rule(r);
        for (const auto& lit : r.body) {
            PredKey k = lit.atom.key();
            if (ignored_goal(k)) continue;
            if (lit.negated()) {
                if (opts.negation_is_meta()) {
                    on_meta(r, PredKey{"", "not", 1}, ++site, EdgeMark::Not, std::vector<Target>{{k, EdgeMark::Plain}});
                } else {
                    on_direct(r, k, EdgeMark::Not);
                }
                continue;
            }
            const MetaSpec* m = lit.atom.prefix.empty() ? opts.find_meta(k) : nullptr;
            if (!m) {
                on_direct(r, k, EdgeMark::Plain);
                continue;
            }
            std::vector<Target> inner;
            for (auto pos : m->goal_args)
                if (pos < lit.atom.args.size()) goal_preds(lit.atom.args[pos], EdgeMark::Plain, inner);
            EdgeMark outer = k.name == "not" || k.name == "\\+" ? EdgeMark::Not : EdgeMark::Plain;
            on_meta(r, m->key, ++site, outer, inner);
        }
    }
}

}  // namespace

DepGraph build_pdg(const Program& p, const GraphOptions& opts) {
    DepGraph g;
    g.kind = GraphKind::PDG;
    walk(
        p, opts, [&](const Rule& r) { g.add_node(Node::predicate(r.head.key())); },
        [&](const Rule& r, const PredKey& k, EdgeMark mark) {
            g.add_edge(Node::predicate(r.head.key()), Node::predicate(k), mark);
        },
        [&](const Rule& r, const PredKey&, int, EdgeMark outer, const std::vector<Target>& inner) {
            for (const auto& t : inner) {
                EdgeMark m = (outer == EdgeMark::Not || t.mark == EdgeMark::Not) ? EdgeMark::Not : EdgeMark::Plain;
                g.add_edge(Node::predicate(r.head.key()), Node::predicate(t.key), m);
            }
        });
    return g;
}

DepGraph build_rpg(const Program& p, const GraphOptions& opts) {
    DepGraph g;
    g.kind = GraphKind::RPG;
    walk(
        p, opts, [&](const Rule& r) { g.add_edge(Node::predicate(r.head.key()), Node::rule(r.name)); },
        [&](const Rule& r, const PredKey& k, EdgeMark mark) {
            g.add_edge(Node::rule(r.name), Node::predicate(k), mark);
        },
        [&](const Rule& r, const PredKey& mk, int site, EdgeMark outer, const std::vector<Target>& inner) {
            Node m = Node::meta(mk, site);
            g.add_edge(Node::rule(r.name), m, outer);
            for (const auto& t : inner) g.add_edge(m, Node::predicate(t.key), t.mark);
        });
    return g;
}

DepGraph pdg_from_rpg(const DepGraph& rpg) {
    if (rpg.kind != GraphKind::RPG)
        throw Error(Errc::WrongKind, std::string("expected an rpg, got ") + kind_name(rpg.kind));
    DepGraph g;
    g.kind = GraphKind::PDG;
    auto worse = [](EdgeMark a, EdgeMark b) { return a == EdgeMark::Not || b == EdgeMark::Not ? EdgeMark::Not : EdgeMark::Plain; };
    for (const auto& n : rpg.nodes) {
        if (n.kind != Node::Kind::Pred) continue;
        g.add_node(n);
        for (const auto& e1 : rpg.out_edges(n)) {
            for (const auto& e2 : rpg.out_edges(e1.to)) {
                if (e2.to.kind == Node::Kind::Pred) {
                    g.add_edge(n, e2.to, worse(e1.mark, e2.mark));
                    continue;
                }
                for (const auto& e3 : rpg.out_edges(e2.to))
                    g.add_edge(n, e3.to, worse(worse(e1.mark, e2.mark), e3.mark));
            }
        }
    }
    return g;
}

}  // namespace ddlite::graphs
