#include "ddlite/hybrid/query.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "json.hpp"

#include "ddlite/engine/builtins.hpp"
#include "ddlite/error.hpp"
#include "ddlite/syntax/parser.hpp"
#include "ddlite/syntax/printer.hpp"

namespace ddlite::hybrid {

std::vector<GoalItem> parse_query_goal(std::string_view text) {
    std::vector<GoalItem> out;
    for (const auto& c : syntax::parse_goal(text)) {
        if (c.term.is_compound() && c.term.name() == ":=" && c.term.arity() == 2) {
            out.push_back(PathBinding{c.term.arg(0), parse_path(c.term.arg(1)), c.span});
        } else {
            out.push_back(syntax::literal_from_term(c.term, c.span));
        }
    }
    return out;
}

namespace {

struct Solver {
    const std::vector<GoalItem>& goal;
    const engine::FactStore& store;
    DocRegistry& docs;
    const std::set<PredKey>& defined;
    std::vector<Substitution> answers;

    bool matches(const Atom& pattern, const Atom& fact, Substitution& s) {
        for (std::size_t i = 0; i < pattern.args.size(); ++i)
            if (!match_ground(pattern.args[i], fact.args[i], s)) return false;
        return true;
    }

    // Bindings from builtins may be non-ground (e.g. X = f(Y)); unify then.
    bool bind_fact(const Atom& pattern, const Atom& fact, Substitution& s) {
        for (const auto& [v, t] : s)
            if (!t.is_ground()) return unify(pattern, fact, s);
        return matches(pattern, fact, s);
    }

    void solve(std::size_t k, const Substitution& s) {
        if (k == goal.size()) {
            answers.push_back(s);
            return;
        }
        if (const auto* lit = std::get_if<Literal>(&goal[k])) {
            if (!lit->negated() && engine::is_builtin(lit->atom, defined)) {
                for (const auto& ans : engine::call_builtin(lit->atom, s)) solve(k + 1, ans);
                return;
            }
            Atom pattern = apply(s, lit->atom);
            std::vector<const Atom*> cands;
            store.candidates(pattern, engine::FactStore::Range::Full, cands);
            if (lit->negated()) {
                for (const Atom* f : cands) {
                    Substitution local;
                    if (bind_fact(pattern, *f, local)) return;
                }
                solve(k + 1, s);
                return;
            }
            for (const Atom* f : cands) {
                Substitution next = s;
                if (bind_fact(pattern, *f, next)) solve(k + 1, next);
            }
            return;
        }
        const auto& pb = std::get<PathBinding>(goal[k]);
        Term src = apply(s, pb.path.source);
        std::optional<XmlTerm> context;
        const XmlTerm* root = nullptr;
        if (src.is_var()) {
            throw Error(Errc::Instantiation, "path source " + src.name() + " is unbound", pb.span);
        } else if (src.is_compound() && src.name() == "doc") {
            root = &docs.get(src.arg(0).name());
        } else {
            context = term_to_element(src);
            if (!context) throw Error(Errc::Type, "path source is not an element: " + syntax::format_term(src), pb.span);
            root = &*context;
        }
        for (const auto& r : path_eval(*root, pb.path, s)) {
            Substitution next = s;
            if (unify(apply(s, pb.target), r.to_term(), next)) solve(k + 1, next);
        }
    }
};

std::set<std::string> goal_vars(const std::vector<GoalItem>& goal) {
    std::vector<std::string> vs;
    for (const auto& g : goal) {
        if (const auto* lit = std::get_if<Literal>(&g)) {
            for (const auto& t : lit->atom.args) collect_vars(t, vs);
        } else {
            const auto& pb = std::get<PathBinding>(g);
            collect_vars(pb.target, vs);
            collect_vars(pb.path.source, vs);
            for (const auto& st : pb.path.steps)
                if (st.kind == PathStep::Kind::Filter) collect_vars(st.value, vs);
        }
    }
    return {vs.begin(), vs.end()};
}

struct KeyLess {
    bool operator()(const Tuple& a, const Tuple& b) const {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
            if (int c = compare(a[i], b[i]); c != 0) return c < 0;
        return a.size() < b.size();
    }
};

const char* fn_name(AggColumn::Fn f) {
    switch (f) {
        case AggColumn::Fn::Sum: return "sum";
        case AggColumn::Fn::Count: return "count";
        case AggColumn::Fn::Min: return "min";
        case AggColumn::Fn::Max: return "max";
        case AggColumn::Fn::Avg: return "avg";
        case AggColumn::Fn::Group: break;
    }
    return "group";
}

Term aggregate(const AggColumn& col, const std::vector<Term>& values) {
    using Fn = AggColumn::Fn;
    if (col.fn == Fn::Count) return Term::integer(static_cast<std::int64_t>(values.size()));
    if (col.fn == Fn::Min || col.fn == Fn::Max) {
        auto less = [](const Term& a, const Term& b) {
            if (a.is_number() && b.is_number()) return a.numeric_value() < b.numeric_value();
            return compare(a, b) < 0;
        };
        return col.fn == Fn::Min ? *std::min_element(values.begin(), values.end(), less)
                                 : *std::max_element(values.begin(), values.end(), less);
    }
    bool all_int = true;
    std::vector<double> xs;
    std::int64_t isum = 0;
    for (const auto& v : values) {
        if (!v.is_number())
            throw Error(Errc::NonNumericAggregate,
                        std::string(fn_name(col.fn)) + "(" + col.var + ") over " + syntax::format_term(v));
        if (v.is_int() && all_int) {
            if (__builtin_add_overflow(isum, v.int_value(), &isum)) all_int = false;
        } else {
            all_int = false;
        }
        xs.push_back(v.numeric_value());
    }
    if (col.fn == Fn::Avg) return Term::real(compensated_sum(xs) / static_cast<double>(xs.size()));
    if (all_int) return Term::integer(isum);
    return Term::real(compensated_sum(xs));
}

nlohmann::ordered_json term_json(const Term& t) {
    if (t.is_int()) return t.int_value();
    if (t.is_float()) return t.float_value();
    return syntax::format_term(t);
}

}  // namespace

std::vector<Substitution> solve_goal(const std::vector<GoalItem>& goal, const engine::FactStore& store,
                                     DocRegistry& docs, const std::set<PredKey>& defined) {
    Solver s{goal, store, docs, defined, {}};
    s.solve(0, Substitution{});
    return std::move(s.answers);
}

AggTemplate parse_template(std::string_view text) {
    Term t = syntax::parse_term(text);
    std::vector<Term> cols;
    if (!t.list_elements(cols) || cols.empty())
        throw Error(Errc::Syntax, "template must be a non-empty list such as [DNO, sum(HOURS)]");
    AggTemplate out;
    for (const auto& c : cols) {
        if (c.is_var()) {
            out.columns.push_back({AggColumn::Fn::Group, c.name()});
            continue;
        }
        if (!c.is_compound() || c.arity() != 1 || !c.arg(0).is_var())
            throw Error(Errc::Syntax, "bad template column " + syntax::format_term(c));
        static const std::map<std::string, AggColumn::Fn> fns{{"sum", AggColumn::Fn::Sum},
                                                              {"count", AggColumn::Fn::Count},
                                                              {"min", AggColumn::Fn::Min},
                                                              {"max", AggColumn::Fn::Max},
                                                              {"avg", AggColumn::Fn::Avg}};
        auto f = fns.find(c.name());
        if (f == fns.end()) throw Error(Errc::Syntax, "unknown aggregate " + c.name());
        out.columns.push_back({f->second, c.arg(0).name()});
    }
    return out;
}

std::vector<Tuple> ddbase_aggregate(const AggTemplate& tmpl, const std::vector<GoalItem>& goal,
                                    const engine::FactStore& store, DocRegistry& docs,
                                    const std::set<PredKey>& defined) {
    auto vars = goal_vars(goal);
    for (const auto& c : tmpl.columns)
        if (!vars.count(c.var)) throw Error(Errc::TemplateVarUnbound, c.var + " does not occur in the goal");

    // group key -> one value list per aggregate column
    std::map<Tuple, std::vector<std::vector<Term>>, KeyLess> groups;
    std::size_t n_agg = 0;
    for (const auto& c : tmpl.columns) n_agg += c.fn != AggColumn::Fn::Group;

    for (const auto& ans : solve_goal(goal, store, docs, defined)) {
        Tuple key;
        std::vector<Term> vals;
        for (const auto& c : tmpl.columns) {
            Term v = apply(ans, Term::var(c.var));
            if (!v.is_ground()) throw Error(Errc::TemplateVarUnbound, c.var + " is unbound in an answer");
            (c.fn == AggColumn::Fn::Group ? key : vals).push_back(v);
        }
        auto& g = groups[key];
        if (g.empty()) g.resize(n_agg);
        for (std::size_t i = 0; i < n_agg; ++i) g[i].push_back(vals[i]);
    }

    std::vector<Tuple> out;
    for (const auto& [key, cols] : groups) {
        Tuple row;
        std::size_t gi = 0, ai = 0;
        for (const auto& c : tmpl.columns) {
            if (c.fn == AggColumn::Fn::Group) {
                row.push_back(key[gi++]);
            } else {
                row.push_back(aggregate(c, cols[ai]));
                ++ai;
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::string format_tuples(const std::vector<Tuple>& rows) {
    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < rows[i].size(); ++j) out += (j ? ", " : "") + syntax::format_term(rows[i][j]);
        out += "]";
    }
    return out + "]";
}

std::string tuples_to_json(const std::vector<Tuple>& rows) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        auto row = nlohmann::ordered_json::array();
        for (const auto& t : r) row.push_back(term_json(t));
        arr.push_back(row);
    }
    return arr.dump() + "\n";
}

double compensated_sum(const std::vector<double>& xs) {
    double sum = 0.0, c = 0.0;
    for (double x : xs) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    return sum + c;
}

}  // namespace ddlite::hybrid
