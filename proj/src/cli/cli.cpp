#include "ddlite/cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ddlite/engine/checks.hpp"
#include "ddlite/engine/evaluate.hpp"
#include "ddlite/engine/proof_tree.hpp"
#include "ddlite/error.hpp"
#include "ddlite/graphs/analysis.hpp"
#include "ddlite/hybrid/csv.hpp"
#include "ddlite/hybrid/query.hpp"
#include "ddlite/substitution.hpp"
#include "ddlite/syntax/parser.hpp"
#include "ddlite/syntax/printer.hpp"
#include "ddlite/syntax/swrl.hpp"

namespace ddlite::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string extension(const std::string& path) { return fs::path(path).extension().string(); }

std::string dir_of(const std::string& path) {
    auto d = fs::path(path).parent_path().string();
    return d.empty() ? "." : d;
}

std::pair<std::string, std::string> split_assign(const std::string& s, const char* flag) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
        throw Error(Errc::Usage, std::string(flag) + " expects name=path, got '" + s + "'");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

std::vector<syntax::SwrlRule> swrl_rules(const std::string& path, std::string* ontology = nullptr) {
    std::string text = read_file(path);
    auto ext = extension(path);
    if (ext == ".xml" || ext == ".ruleml" || ext == ".owl") {
        auto onto = syntax::parse_ruleml_xml(text, path);
        if (ontology) *ontology = onto.name;
        return onto.rules;
    }
    if (ontology) *ontology = fs::path(path).stem().string();
    return syntax::parse_swrl(text, path);
}

/// Datalog* text, or SWRL rules translated on the fly.
Program load_program(const std::string& path) {
    auto ext = extension(path);
    if (ext == ".swrl" || ext == ".ruleml") return syntax::swrl_to_datalog(swrl_rules(path));
    return syntax::parse_program(read_file(path), path);
}

struct Sources {
    std::vector<std::string> csv;
    std::vector<std::string> csv_numeric;
    std::vector<std::string> csv_no_header;
    std::vector<std::string> xml;

    void attach(CLI::App* sub) {
        sub->add_option("--csv", csv, "Load facts pred=file.csv")->take_all()->expected(1);
        sub->add_option("--csv-numeric", csv_numeric, "Numeric columns pred=1,3,... (1-based)")
            ->take_all()
            ->expected(1);
        sub->add_option("--csv-no-header", csv_no_header, "CSV for pred has no header row")->take_all()->expected(1);
        sub->add_option("--xml", xml, "Register document name=file.xml")->take_all()->expected(1);
    }

    /// Appends CSV facts and xml_document/2 facts; registers documents.
    void load(Program& p, hybrid::DocRegistry& docs, const std::vector<std::string>& search) const {
        for (const auto& d : search) docs.add_search_dir(d);
        std::map<std::string, std::set<std::size_t>> numeric;
        for (const auto& spec : csv_numeric) {
            auto [pred, cols] = split_assign(spec, "--csv-numeric");
            std::set<std::size_t>& s = numeric[pred];
            std::stringstream ss(cols);
            std::string c;
            while (std::getline(ss, c, ',')) {
                try {
                    auto k = std::stoul(c);
                    if (k == 0) throw std::invalid_argument("0");
                    s.insert(k - 1);
                } catch (const std::logic_error&) {
                    throw Error(Errc::Usage, "--csv-numeric: bad column '" + c + "'");
                }
            }
        }
        std::set<std::string> headerless(csv_no_header.begin(), csv_no_header.end());
        for (const auto& spec : csv) {
            auto [pred, path] = split_assign(spec, "--csv");
            std::optional<std::set<std::size_t>> cols;
            if (auto it = numeric.find(pred); it != numeric.end()) cols = it->second;
            auto facts = hybrid::load_facts_csv(path, pred,
                                                headerless.count(pred) ? hybrid::Header::Absent : hybrid::Header::Present,
                                                cols);
            p.add_facts(facts);
            docs.add_search_dir(dir_of(path));
        }
        std::vector<Atom> xml_facts;
        for (const auto& spec : xml) {
            auto [name, path] = split_assign(spec, "--xml");
            docs.add(name, path);
            xml_facts.push_back(Atom("xml_document", {Term::constant(name), hybrid::element_to_term(docs.get(name))}));
        }
        p.add_facts(xml_facts, "x");
    }
};

struct Limits {
    std::size_t max_iterations = 10000;
    std::size_t max_facts = 0;
    bool naive = false;
    bool parallel = false;

    void attach(CLI::App* sub) {
        sub->add_option("--max-iterations", max_iterations, "Iteration limit per stratum")->check(CLI::PositiveNumber);
        sub->add_option("--max-facts", max_facts, "Fact limit (default 1000000, or DDLITE_MAX_FACTS)")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--naive", naive, "Naive instead of semi-naive iteration");
        sub->add_flag("--parallel", parallel, "Fire rules on OpenMP threads");
    }

    engine::EvalOptions options() const {
        engine::EvalOptions o;
        o.max_iterations = max_iterations;
        if (max_facts) {
            o.max_facts = max_facts;
        } else if (const char* env = std::getenv("DDLITE_MAX_FACTS"); env && *env) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (*end != '\0' || v == 0) throw Error(Errc::Usage, std::string("bad DDLITE_MAX_FACTS: ") + env);
            o.max_facts = v;
        }
        o.semi_naive = !naive;
        o.parallel = parallel;
        return o;
    }
};

/// Instrumented programs keep one tree per atom, so they terminate whenever
/// the plain program does.
engine::FactStore run_engine(Program& p, bool instrument, const Limits& limits) {
    auto opts = limits.options();
    if (instrument) {
        opts.witness_predicates = engine::auto_pt_witnesses(p);
        p = engine::auto_pt(p);
    }
    return engine::evaluate(p, opts);
}

graphs::DepGraph program_graph(const Program& p, const std::string& kind, const graphs::GraphOptions& opts) {
    if (kind == "pdg") return graphs::build_pdg(p, opts);
    if (kind == "rpg") return graphs::build_rpg(p, opts);
    throw Error(Errc::Usage, "unknown graph kind " + kind);
}

std::string graph_text(const graphs::DepGraph& g) {
    std::string out = std::string("kind: ") + graphs::kind_name(g.kind) + "\nnodes:";
    for (const auto& n : g.nodes) out += " " + n.id();
    out += "\nedges:\n";
    for (const auto& e : g.edges)
        out += "  " + e.from.id() + " -> " + e.to.id() + (e.mark == graphs::EdgeMark::Not ? " [not]" : "") + "\n";
    return out;
}

std::set<PredKey> resolve_preds(const std::string& list, const std::vector<const Program*>& programs) {
    std::set<PredKey> all;
    for (const auto* p : programs) {
        for (const auto& r : p->rules) {
            all.insert(r.head.key());
            for (const auto& l : r.body) all.insert(l.atom.key());
        }
    }
    std::set<PredKey> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
        if (item.empty()) continue;
        auto slash = item.rfind('/');
        if (slash != std::string::npos) {
            try {
                out.insert(PredKey{"", item.substr(0, slash), std::stoul(item.substr(slash + 1))});
            } catch (const std::logic_error&) {
                throw Error(Errc::Usage, "bad predicate " + item);
            }
            continue;
        }
        bool found = false;
        for (const auto& k : all)
            if (k.prefix.empty() && k.name == item) out.insert(k), found = true;
        if (!found) out.insert(PredKey{"", item, 0});
    }
    return out;
}

bool threads_trees(const Program& p) {
    for (const auto& r : p.rules)
        for (const auto& l : r.body)
            if (l.atom.predicate == "pt" && l.atom.arity() == 2) return true;
    return false;
}

int exit_code(Errc c) {
    switch (c) {
        case Errc::Io:
        case Errc::Usage:
        case Errc::UnknownDocument: return 2;
        default: return 1;
    }
}

// ---- subcommands ----------------------------------------------------------

struct ParseCmd {
    std::string file, format = "text";

    int run(std::ostream& out, std::ostream& err) const {
        Program p = load_program(file);
        auto violations = engine::check_safety(p);
        std::optional<engine::Strata> strata;
        std::string cycle;
        try {
            strata = engine::stratify(p);
        } catch (const Error& e) {
            if (e.code() != Errc::Cycle) throw;
            cycle = e.what();
        }
        if (format == "json") {
            json j;
            j["file"] = file;
            j["rules"] = json::array();
            for (const auto& r : p.rules)
                j["rules"].push_back({{"name", r.name}, {"text", syntax::format_rule(r)}});
            j["safe"] = violations.empty();
            j["violations"] = json::array();
            for (const auto& v : violations)
                j["violations"].push_back({{"rule", v.rule}, {"variable", v.variable}, {"reason", v.reason}});
            j["stratified"] = strata.has_value();
            if (strata) {
                json s = json::object();
                for (const auto& [k, n] : strata->assignment) s[k.to_string()] = n;
                j["strata"] = s;
            } else {
                j["cycle"] = cycle;
            }
            out << j.dump(2) << "\n";
        } else {
            out << syntax::print_program(p);
            if (violations.empty() && strata) out << "% safe, stratified\n";
        }
        for (const auto& v : violations) err << "SafetyError: " << v.to_string() << "\n";
        if (!cycle.empty()) err << cycle << "\n";
        return violations.empty() && strata ? 0 : 1;
    }
};

struct GraphCmd {
    std::string file, kind = "pdg", format = "text", meta;
    bool no_attrs = false;

    int run(std::ostream& out, std::ostream&) const {
        graphs::DepGraph g;
        if (kind == "schema") {
            g = graphs::schema_graph(syntax::parse_xml(read_file(file), file), !no_attrs);
        } else {
            graphs::GraphOptions opts;
            if (!meta.empty()) opts.meta_predicates = graphs::parse_meta_list(meta);
            g = program_graph(load_program(file), kind, opts);
        }
        if (format == "json") out << graphs::to_json(g);
        else if (format == "dot") out << graphs::to_dot(g);
        else out << graph_text(g);
        return 0;
    }
};

struct DiffCmd {
    std::string left, right, kind = "pdg", format = "text", helpers, root;

    int run(std::ostream& out, std::ostream&) const {
        Program a = load_program(left), b = load_program(right);
        auto report = graphs::graph_diff(program_graph(a, kind, {}), program_graph(b, kind, {}));
        std::optional<bool> equivalent;
        if (!helpers.empty() || !root.empty()) {
            auto hs = resolve_preds(helpers, {&a, &b});
            std::set<PredKey> roots;
            if (!root.empty()) {
                roots = resolve_preds(root, {&a, &b});
            } else {
                auto ia = a.idb(), ib = b.idb();
                std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(), std::inserter(roots, roots.end()));
                for (const auto& h : hs) roots.erase(h);
            }
            bool eq = true;
            for (const auto& r : roots) eq = eq && graphs::equivalent_modulo_helpers(a, b, r, hs);
            equivalent = eq;
            if (eq) report.equivalent_modulo = hs;
        }
        if (format == "json") {
            auto j = json::parse(graphs::diff_to_json(report));
            if (equivalent) j["equivalent_modulo_helpers"] = *equivalent;
            out << j.dump(2) << "\n";
        } else {
            out << graphs::format_diff(report);
            if (equivalent) out << "equivalent modulo helpers: " << (*equivalent ? "true" : "false") << "\n";
        }
        return 0;
    }
};

struct EvalCmd {
    std::string file, format = "text";
    bool auto_pt = false;
    Sources sources;
    Limits limits;

    int run(std::ostream& out, std::ostream&) const {
        Program p = load_program(file);
        hybrid::DocRegistry docs;
        sources.load(p, docs, {dir_of(file)});
        auto store = run_engine(p, auto_pt, limits);
        out << (format == "json" ? engine::dump_facts_json(store) : engine::dump_facts(store));
        return 0;
    }
};

struct SwrlCmd {
    std::string file, emit = "datalog", format = "text";

    int run(std::ostream& out, std::ostream& err) const {
        std::string ontology;
        auto rules = swrl_rules(file, &ontology);
        std::size_t split = 0;
        for (const auto& r : rules) split += syntax::lloyd_topor(r).size();
        Program p = syntax::swrl_to_datalog(rules);
        auto violations = engine::check_safety(p);
        if (emit == "report") {
            if (format == "json") {
                json j;
                j["ontology"] = ontology;
                j["rules"] = rules.size();
                j["datalog_rules"] = split;
                j["safe"] = violations.empty();
                j["violations"] = json::array();
                for (const auto& v : violations)
                    j["violations"].push_back({{"rule", v.rule}, {"variable", v.variable}, {"reason", v.reason}});
                out << j.dump(2) << "\n";
            } else {
                out << "ontology: " << ontology << "\n";
                out << "swrl rules: " << rules.size() << "\n";
                out << "datalog rules: " << split << "\n";
                if (violations.empty()) out << "safety: ok\n";
                for (const auto& v : violations) out << "unsafe: " << v.to_string() << "\n";
            }
        } else {
            if (format == "json") {
                json j = json::array();
                for (const auto& r : p.rules) j.push_back({{"name", r.name}, {"text", syntax::format_rule(r)}});
                out << j.dump(2) << "\n";
            } else {
                out << syntax::print_program(p);
            }
            for (const auto& v : violations) err << "SafetyError: " << v.to_string() << "\n";
        }
        return violations.empty() ? 0 : 1;
    }
};

struct QueryCmd {
    std::string file, tmpl, goal, format = "text";
    bool auto_pt = false;
    Sources sources;
    Limits limits;

    int run(std::ostream& out, std::ostream&) const {
        Program p;
        std::vector<std::string> search;
        if (!file.empty()) {
            p = load_program(file);
            search.push_back(dir_of(file));
        }
        hybrid::DocRegistry docs;
        sources.load(p, docs, search);
        auto store = run_engine(p, auto_pt, limits);
        auto rows = hybrid::ddbase_aggregate(hybrid::parse_template(tmpl), hybrid::parse_query_goal(goal), store,
                                             docs, p.idb());
        out << (format == "json" ? hybrid::tuples_to_json(rows) : hybrid::format_tuples(rows) + "\n");
        return 0;
    }
};

struct ProveCmd {
    std::string file, atom, format = "term";
    bool all = false;
    Sources sources;
    Limits limits;

    int run(std::ostream& out, std::ostream& err) const {
        Program p = load_program(file);
        hybrid::DocRegistry docs;
        sources.load(p, docs, {dir_of(file)});
        Atom goal = syntax::parse_atom(atom);
        // Programs that already call pt/2 carry their trees in the last argument;
        // anything else is instrumented first.
        auto store = run_engine(p, !threads_trees(p), limits);

        PredKey full = goal.key();
        bool with_tree = p.idb().count(full) > 0;
        if (!with_tree) full.arity += 1;

        std::vector<engine::ProofTree> proofs;
        for (const auto& f : store.facts(full)) {
            if (f.args.empty()) continue;
            Atom head(f.predicate, {f.args.begin(), f.args.end() - (with_tree ? 0 : 1)}, f.prefix);
            Substitution s;
            if (!unify(goal, head, s)) continue;
            if (auto t = engine::ProofTree::from_term(f.args.back())) proofs.push_back(std::move(*t));
        }
        if (proofs.empty()) {
            err << "no proof for " << atom << "\n";
            return 1;
        }
        auto fmt = format == "ascii" ? engine::TreeFormat::Ascii
                   : format == "dot" ? engine::TreeFormat::Dot
                                     : engine::TreeFormat::Term;
        std::size_t n = all ? proofs.size() : 1;
        for (std::size_t i = 0; i < n; ++i) {
            std::string r = engine::render_proof_tree(proofs[i], fmt);
            out << r;
            if (r.empty() || r.back() != '\n') out << "\n";
        }
        return 0;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ddlite - rule analysis, bottom-up evaluation and hybrid queries"};
    app.name("ddlite");
    app.require_subcommand(1);

    ParseCmd parse;
    auto* c_parse = app.add_subcommand("parse", "Parse, pretty-print and check a program");
    c_parse->add_option("file", parse.file)->required();
    c_parse->add_option("--format", parse.format)->check(CLI::IsMember({"text", "json"}));

    GraphCmd graph;
    auto* c_graph = app.add_subcommand("graph", "Dependency or schema graph");
    c_graph->add_option("file", graph.file)->required();
    c_graph->add_option("--kind", graph.kind)->check(CLI::IsMember({"pdg", "rpg", "schema"}));
    c_graph->add_option("--format", graph.format)->check(CLI::IsMember({"text", "json", "dot"}));
    c_graph->add_flag("--no-attrs", graph.no_attrs, "Omit @attribute leaves in schema graphs");
    c_graph->add_option("--meta-list", graph.meta, "Meta predicates, e.g. not/1,findall/3:2");

    DiffCmd diff;
    auto* c_diff = app.add_subcommand("diff", "Compare the graphs of two programs");
    c_diff->add_option("left", diff.left)->required();
    c_diff->add_option("right", diff.right)->required();
    c_diff->add_option("--kind", diff.kind)->check(CLI::IsMember({"pdg", "rpg"}));
    c_diff->add_option("--helpers", diff.helpers, "Helper predicates h1,h2/2,...");
    c_diff->add_option("--root", diff.root, "Root predicates for the helper check");
    c_diff->add_option("--format", diff.format)->check(CLI::IsMember({"text", "json"}));

    EvalCmd eval;
    auto* c_eval = app.add_subcommand("eval", "Evaluate bottom-up and dump the facts");
    c_eval->add_option("file", eval.file)->required();
    c_eval->add_option("--format", eval.format)->check(CLI::IsMember({"text", "json"}));
    c_eval->add_flag("--auto-pt", eval.auto_pt, "Add proof-tree arguments before evaluating");
    eval.sources.attach(c_eval);
    eval.limits.attach(c_eval);

    SwrlCmd swrl;
    auto* c_swrl = app.add_subcommand("swrl", "Translate or check SWRL rules");
    c_swrl->add_option("file", swrl.file)->required();
    c_swrl->add_option("--emit", swrl.emit)->check(CLI::IsMember({"datalog", "report"}));
    c_swrl->add_option("--format", swrl.format)->check(CLI::IsMember({"text", "json"}));

    QueryCmd query;
    auto* c_query = app.add_subcommand("query", "Grouped aggregation over a goal");
    c_query->add_option("file", query.file, "Optional program");
    c_query->add_option("--template", query.tmpl)->required();
    c_query->add_option("--goal", query.goal)->required();
    c_query->add_option("--format", query.format)->check(CLI::IsMember({"text", "json"}));
    c_query->add_flag("--auto-pt", query.auto_pt);
    query.sources.attach(c_query);
    query.limits.attach(c_query);

    ProveCmd prove;
    auto* c_prove = app.add_subcommand("prove", "Show the proof tree of a derived atom");
    c_prove->add_option("file", prove.file)->required();
    c_prove->add_option("--atom", prove.atom)->required();
    c_prove->add_option("--format", prove.format)->check(CLI::IsMember({"term", "ascii", "dot"}));
    c_prove->add_flag("--all", prove.all, "Print a proof for every matching atom");
    prove.sources.attach(c_prove);
    prove.limits.attach(c_prove);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*c_parse) return parse.run(out, err);
        if (*c_graph) return graph.run(out, err);
        if (*c_diff) return diff.run(out, err);
        if (*c_eval) return eval.run(out, err);
        if (*c_swrl) return swrl.run(out, err);
        if (*c_query) return query.run(out, err);
        if (*c_prove) return prove.run(out, err);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code(e.code());
    }
    return 2;
}

}  // namespace ddlite::cli
