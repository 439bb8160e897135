#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ddlite/engine/fact_store.hpp"
#include "ddlite/hybrid/xml_query.hpp"
#include "ddlite/program.hpp"

namespace ddlite::hybrid {

/// `Target := Path` inside a query goal.
struct PathBinding {
    Term target;
    PathExpr path;
    SourceSpan span;
};

using GoalItem = std::variant<Literal, PathBinding>;

std::vector<GoalItem> parse_query_goal(std::string_view text);

/// Left-to-right join over facts (in store order), builtins and path
/// expressions. `defined` decides which unprefixed builtin names are user
/// predicates instead.
std::vector<Substitution> solve_goal(const std::vector<GoalItem>& goal, const engine::FactStore& store,
                                     DocRegistry& docs, const std::set<PredKey>& defined = {});

struct AggColumn {
    enum class Fn { Group, Sum, Count, Min, Max, Avg };
    Fn fn = Fn::Group;
    std::string var;
};

struct AggTemplate {
    std::vector<AggColumn> columns;
};

/// `[DNO, sum(HOURS)]`. Throws Error(Syntax).
AggTemplate parse_template(std::string_view text);

using Tuple = std::vector<Term>;

/// Groups the answers of `goal` by the template's plain variables and
/// aggregates the others per group. Rows come out sorted by group key.
/// Throws Error(TemplateVarUnbound | NonNumericAggregate).
std::vector<Tuple> ddbase_aggregate(const AggTemplate& tmpl, const std::vector<GoalItem>& goal,
                                    const engine::FactStore& store, DocRegistry& docs,
                                    const std::set<PredKey>& defined = {});

/// [[1, 12.5], [4, 30.0]]
std::string format_tuples(const std::vector<Tuple>& rows);
std::string tuples_to_json(const std::vector<Tuple>& rows);

/// Neumaier-compensated sum.
double compensated_sum(const std::vector<double>& xs);

}  // namespace ddlite::hybrid
