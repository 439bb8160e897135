#pragma once

#include <set>
#include <string>

#include "ddlite/graphs/dep_graph.hpp"
#include "ddlite/syntax/xml.hpp"

namespace ddlite::graphs {

/// Nodes reachable from `from` by one or more edges, excluding `from`
/// itself. On an RPG only predicate nodes are reported.
/// Throws Error(NodeNotFound).
std::set<Node> reachable(const DepGraph& g, const Node& from);

/// True when `n` lies on a cycle.
bool on_cycle(const DepGraph& g, const Node& n);

/// Resolves body literal `index` (1-based) of r1 with the head of r2. r2 is
/// renamed apart first; the result is named "r1+r2".
/// Throws Error(IndexOutOfRange | NegatedLiteral | BuiltinLiteral | NotUnifiable).
Rule unfold_helper(const Rule& r1, const Rule& r2, std::size_t index);

/// Compares the predicates reachable from `root` in both PDGs after removing
/// the helper predicates. Throws Error(NodeNotFound) if root is missing.
bool equivalent_modulo_helpers(const Program& p1, const Program& p2, const PredKey& root,
                               const std::set<PredKey>& helpers, const GraphOptions& opts = {});

struct DiffReport {
    std::set<Node> nodes_only_left;
    std::set<Node> nodes_only_right;
    std::set<Edge> edges_only_left;
    std::set<Edge> edges_only_right;
    /// Helper predicates factored out by a successful modulo-helpers check.
    std::set<PredKey> equivalent_modulo;

    bool empty() const {
        return nodes_only_left.empty() && nodes_only_right.empty() && edges_only_left.empty() &&
               edges_only_right.empty();
    }
};

/// Set differences of nodes and edges. Rule nodes of RPGs are renamed to
/// r1..rn in order of (head, body shape, original position) first, so that
/// reordering clauses does not produce a difference.
/// Throws Error(KindMismatch).
DiffReport graph_diff(const DepGraph& left, const DepGraph& right);

/// Canonical renaming of rule and meta-call nodes used by graph_diff.
DepGraph canonicalize_rpg(const DepGraph& g);

/// Parent-tag -> child-tag graph of an XML document. Attributes appear as
/// "@name" leaves unless include_attributes is false.
DepGraph schema_graph(const XmlTerm& doc, bool include_attributes = true);

/// Graphviz rendering with nodes and edges in lexicographic order.
std::string to_dot(const DepGraph& g);

/// {"kind":..., "nodes":[{id,type,label}], "edges":[{from,to,mark}]}
std::string to_json(const DepGraph& g);

std::string format_diff(const DiffReport& d);
std::string diff_to_json(const DiffReport& d);

}  // namespace ddlite::graphs
