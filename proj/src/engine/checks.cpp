#include "ddlite/engine/checks.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "ddlite/engine/builtins.hpp"
#include "ddlite/error.hpp"
#include "ddlite/graphs/dep_graph.hpp"
#include "plan.hpp"

namespace ddlite::engine {

namespace detail {

bool anonymous(const std::string& var) { return !var.empty() && var[0] == '_'; }

namespace {

std::vector<std::string> atom_vars(const Atom& a) {
    std::vector<std::string> vs;
    for (const auto& t : a.args) collect_vars(t, vs);
    return vs;
}

bool negation_ready(const Atom& a, const std::set<std::string>& bound) {
    for (const auto& v : atom_vars(a))
        if (!anonymous(v) && !bound.count(v)) return false;
    return true;
}

}  // namespace

std::vector<Step> plan_body(const Rule& r, const std::set<PredKey>& defined, std::set<std::string>* bound_out) {
    std::vector<Step> remaining;
    for (std::size_t i = 0; i < r.body.size(); ++i) {
        const Literal& l = r.body[i];
        LitKind k = l.negated() ? LitKind::Neg : is_builtin(l.atom, defined) ? LitKind::Builtin : LitKind::Db;
        remaining.push_back({i, k});
    }
    std::set<std::string> bound;
    std::vector<Step> out;
    while (!remaining.empty()) {
        auto ready = std::find_if(remaining.begin(), remaining.end(), [&](const Step& s) {
            const Atom& a = r.body[s.index].atom;
            switch (s.kind) {
                case LitKind::Db: return true;
                case LitKind::Builtin: return builtin_ready(a, bound);
                case LitKind::Neg: return negation_ready(a, bound);
            }
            return false;
        });
        Step s;
        if (ready == remaining.end()) {
            s = remaining.front();
            s.stuck = true;
            remaining.erase(remaining.begin());
        } else {
            s = *ready;
            remaining.erase(ready);
        }
        if (s.kind != LitKind::Neg && !s.stuck)
            for (const auto& v : atom_vars(r.body[s.index].atom)) bound.insert(v);
        out.push_back(s);
    }
    if (bound_out) *bound_out = std::move(bound);
    return out;
}

}  // namespace detail

std::string SafetyViolation::to_string() const {
    std::string out = "rule " + rule;
    if (span.known()) out += " (" + span.to_string() + ")";
    out += ": variable " + variable + " " + reason;
    return out;
}

std::vector<SafetyViolation> check_safety(const Program& p) {
    auto defined = p.idb();
    std::vector<SafetyViolation> out;
    for (const auto& r : p.rules) {
        std::set<std::string> bound;
        auto plan = detail::plan_body(r, defined, &bound);
        std::set<std::string> reported;
        auto report = [&](const std::string& v, const std::string& why) {
            if (reported.insert(v).second) out.push_back({r.name, v, why, r.span});
        };
        for (const auto& st : plan) {
            if (!st.stuck) continue;
            std::vector<std::string> vs;
            for (const auto& t : r.body[st.index].atom.args) collect_vars(t, vs);
            for (const auto& v : vs) {
                if (bound.count(v) || detail::anonymous(v)) continue;
                report(v, st.kind == detail::LitKind::Neg ? "occurs only under negation"
                                                          : "is an unbound input of builtin " +
                                                                r.body[st.index].atom.key().to_string());
            }
        }
        std::vector<std::string> head_vars;
        for (const auto& t : r.head.args) collect_vars(t, head_vars);
        for (const auto& v : head_vars)
            if (!bound.count(v)) report(v, "occurs in the head but in no positive body literal");
    }
    return out;
}

int Strata::of(const PredKey& k) const {
    auto it = assignment.find(k);
    return it == assignment.end() ? 0 : it->second;
}

int Strata::count() const {
    int m = -1;
    for (const auto& [k, s] : assignment) m = std::max(m, s);
    return m + 1;
}

Strata stratify(const Program& p) {
    using graphs::Node;
    auto g = graphs::build_pdg(p);
    std::vector<Node> nodes(g.nodes.begin(), g.nodes.end());
    std::map<Node, std::size_t> id;
    for (std::size_t i = 0; i < nodes.size(); ++i) id[nodes[i]] = i;
    struct Arc {
        std::size_t to;
        bool neg;
    };
    std::vector<std::vector<Arc>> adj(nodes.size());
    for (const auto& e : g.edges) adj[id[e.from]].push_back({id[e.to], e.mark == graphs::EdgeMark::Not});

    // Tarjan; components come out sinks first.
    std::vector<int> index(nodes.size(), -1), low(nodes.size(), 0), comp(nodes.size(), -1);
    std::vector<bool> on_stack(nodes.size(), false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    int counter = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (const auto& a : adj[v]) {
            if (index[a.to] < 0) {
                visit(a.to);
                low[v] = std::min(low[v], low[a.to]);
            } else if (on_stack[a.to]) {
                low[v] = std::min(low[v], index[a.to]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> c;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = static_cast<int>(comps.size());
                c.push_back(w);
            } while (w != v);
            comps.push_back(std::move(c));
        }
    };
    for (std::size_t v = 0; v < nodes.size(); ++v)
        if (index[v] < 0) visit(v);

    std::vector<int> level(comps.size(), 0);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (auto v : comps[c]) {
            for (const auto& a : adj[v]) {
                if (comp[a.to] == static_cast<int>(c)) {
                    if (!a.neg) continue;
                    // path back from a.to to v inside the component
                    std::map<std::size_t, std::size_t> parent;
                    std::deque<std::size_t> work{a.to};
                    parent[a.to] = a.to;
                    while (!work.empty() && !parent.count(v)) {
                        auto x = work.front();
                        work.pop_front();
                        for (const auto& b : adj[x])
                            if (comp[b.to] == static_cast<int>(c) && !parent.count(b.to)) {
                                parent[b.to] = x;
                                work.push_back(b.to);
                            }
                    }
                    std::vector<std::size_t> path{v};
                    for (auto x = v; x != a.to; x = parent[x]) path.push_back(parent[x]);
                    std::reverse(path.begin() + 1, path.end());
                    std::string text = nodes[v].id();
                    for (std::size_t i = 1; i < path.size(); ++i) text += " -> " + nodes[path[i]].id();
                    text += " -> " + nodes[v].id();
                    throw Error(Errc::Cycle, "negation on a cycle: " + text);
                }
                level[c] = std::max(level[c], level[comp[a.to]] + (a.neg ? 1 : 0));
            }
        }
    }

    Strata s;
    for (std::size_t v = 0; v < nodes.size(); ++v) s.assignment[nodes[v].pred] = level[comp[v]];
    return s;
}

}  // namespace ddlite::engine
