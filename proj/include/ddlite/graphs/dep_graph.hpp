#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "ddlite/program.hpp"

namespace ddlite::graphs {

enum class GraphKind { PDG, RPG, Schema };
enum class EdgeMark { Plain, Not };

const char* kind_name(GraphKind k);

struct Node {
    enum class Kind { Pred, Rule, MetaCall, Tag };

    Kind kind = Kind::Pred;
    PredKey pred;       // Pred, MetaCall
    std::string name;   // Rule name or Tag name
    int call_site = 0;  // MetaCall

    static Node predicate(PredKey key);
    static Node rule(std::string name);
    static Node meta(PredKey key, int call_site);
    static Node tag(std::string name);

    /// Stable identifier used for ordering and in every export format:
    /// "p/2", "r1", "findall/3#2", "row", "@ESSN".
    std::string id() const;
    /// Display label; a meta call shows its predicate only.
    std::string label() const;

    friend bool operator==(const Node& a, const Node& b) { return a.kind == b.kind && a.id() == b.id(); }
    friend std::strong_ordering operator<=>(const Node& a, const Node& b);
};

struct Edge {
    Node from;
    Node to;
    EdgeMark mark = EdgeMark::Plain;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend std::strong_ordering operator<=>(const Edge& a, const Edge& b);
};

struct DepGraph {
    GraphKind kind = GraphKind::PDG;
    std::set<Node> nodes;
    std::set<Edge> edges;

    void add_node(const Node& n) { nodes.insert(n); }
    void add_edge(const Node& from, const Node& to, EdgeMark mark = EdgeMark::Plain);
    bool contains(const Node& n) const { return nodes.count(n) != 0; }
    std::vector<Edge> out_edges(const Node& n) const;
    std::vector<Edge> in_edges(const Node& n) const;

    friend bool operator==(const DepGraph&, const DepGraph&) = default;
};

/// A meta-predicate and the (0-based) argument positions holding goals.
struct MetaSpec {
    PredKey key;
    std::vector<std::size_t> goal_args;
};

struct GraphOptions {
    /// Defaults to not/1 (negated literals) and findall/3 (goal argument 2).
    std::vector<MetaSpec> meta_predicates = default_meta();

    static std::vector<MetaSpec> default_meta();
    const MetaSpec* find_meta(const PredKey& key) const;
    bool negation_is_meta() const;
};

/// Parses "not/1,findall/3" or "forall/2:1:2" (1-based goal positions; all
/// positions when omitted).
std::vector<MetaSpec> parse_meta_list(const std::string& text);

DepGraph build_pdg(const Program& p, const GraphOptions& opts = {});
DepGraph build_rpg(const Program& p, const GraphOptions& opts = {});

/// Contracts rule and meta-call nodes; an edge is Not-marked iff some
/// contracted path carries a Not mark. Throws Error(WrongKind).
DepGraph pdg_from_rpg(const DepGraph& rpg);

}  // namespace ddlite::graphs
