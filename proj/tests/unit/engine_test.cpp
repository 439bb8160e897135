#include <gtest/gtest.h>

#include "ddlite/engine/builtins.hpp"
#include "ddlite/engine/checks.hpp"
#include "ddlite/engine/evaluate.hpp"
#include "ddlite/engine/proof_tree.hpp"
#include "ddlite/syntax/parser.hpp"
#include "ddlite/syntax/printer.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ddlite;
using namespace ddlite::engine;
using syntax::format_term;
using syntax::parse_atom;
using syntax::parse_program;
using syntax::parse_term;

namespace {

Program load(const std::string& name) { return parse_program(slurp(fixture(name)), name); }

std::vector<std::string> dump_lines(const FactStore& s) {
    std::vector<std::string> out;
    for (const auto& a : s.sorted()) out.push_back(syntax::format_atom(a));
    return out;
}

}  // namespace

TEST(Arith, IntegersStayIntegral) {
    EXPECT_EQ(format_term(eval_arith(parse_term("15+280"))), "295");
    EXPECT_EQ(format_term(eval_arith(parse_term("7/2"))), "3.5");
    EXPECT_EQ(format_term(eval_arith(parse_term("8/2"))), "4");
    EXPECT_EQ(format_term(eval_arith(parse_term("-(3)*2"))), "-6");
    EXPECT_EQ(format_term(eval_arith(parse_term("1.5+1"))), "2.5");
    EXPECT_ERRC(eval_arith(parse_term("X+1")), Errc::Instantiation);
    EXPECT_ERRC(eval_arith(parse_term("a+1")), Errc::Type);
    EXPECT_ERRC(eval_arith(parse_term("1/0")), Errc::Type);
}

TEST(Builtins, Calls) {
    auto one = [](const std::string& g) { return call_builtin(parse_atom(g), {}); };
    auto is = one("L is 15+280");
    ASSERT_EQ(is.size(), 1u);
    EXPECT_EQ(format_term(apply(is[0], Term::var("L"))), "295");
    EXPECT_EQ(one("3 < 4").size(), 1u);
    EXPECT_TRUE(one("4 =< 3").empty());
    EXPECT_EQ(one("2 =:= 2.0").size(), 1u);
    EXPECT_TRUE(one("a \\= a").empty());
    EXPECT_EQ(one("a \\= b").size(), 1u);
    auto num = one("atom_number('12.5', H)");
    ASSERT_EQ(num.size(), 1u);
    EXPECT_EQ(format_term(apply(num[0], Term::var("H"))), "12.5");
    EXPECT_TRUE(one("atom_number('NULL', H)").empty());
    auto app = one("append([[a],[b,c]], Xs)");
    ASSERT_EQ(app.size(), 1u);
    EXPECT_EQ(format_term(apply(app[0], Term::var("Xs"))), "[a,b,c]");
    EXPECT_ERRC(one("X < 3"), Errc::Instantiation);
    EXPECT_ERRC(call_builtin(Atom("nosuch", {}, "prolog"), {}), Errc::UnknownBuiltin);
}

TEST(Builtins, SkolemIsDeterministic) {
    auto a = call_builtin(parse_atom("create_owl_thing(B, p, c, u)"), {});
    ASSERT_EQ(a.size(), 1u);
    Term b = apply(a[0], Term::var("B"));
    EXPECT_EQ(b, skolem_constant(Term::constant("p"), Term::constant("c"), Term::constant("u")));
    EXPECT_NE(b, skolem_constant(Term::constant("p"), Term::constant("c"), Term::constant("v")));
}

TEST(FactStore, InsertDedupAndIndex) {
    FactStore s;
    EXPECT_TRUE(s.insert(parse_atom("e(a,b)")));
    EXPECT_FALSE(s.insert(parse_atom("e(a,b)")));
    s.insert(parse_atom("e(a,c)"));
    s.insert(parse_atom("e(b,c)"));
    EXPECT_ERRC(s.insert(parse_atom("e(X,c)")), Errc::NonGroundHead);
    std::vector<const Atom*> out;
    s.candidates(parse_atom("e(a,X)"), FactStore::Range::Full, out);
    int matches = 0;
    for (auto* a : out) matches += a->args[0] == Term::constant("a");
    EXPECT_EQ(matches, 2);
    EXPECT_EQ(s.size(), 3u);
}

TEST(FactStore, DeltaRanges) {
    FactStore s;
    s.insert(parse_atom("e(1)"));
    s.advance();
    s.insert(parse_atom("e(2)"));
    s.advance();
    std::vector<const Atom*> old, delta;
    s.candidates(parse_atom("e(X)"), FactStore::Range::Old, old);
    s.candidates(parse_atom("e(X)"), FactStore::Range::Delta, delta);
    ASSERT_EQ(old.size(), 1u);
    ASSERT_EQ(delta.size(), 1u);
    EXPECT_EQ(format_term(old[0]->args[0]), "1");
    EXPECT_EQ(format_term(delta[0]->args[0]), "2");
}

TEST(Safety, Violations) {
    EXPECT_TRUE(check_safety(load("route.dl")).empty());
    auto v = check_safety(load("unsafe.dl"));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].variable, "Y");
    EXPECT_TRUE(check_safety(parse_program("p(X) :- q(X), not(r(X, _)).")).empty());
}

TEST(Safety, NegationOnlyVariable) {
    auto v = check_safety(parse_program("p(X) :- q(X), not(r(Y))."));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].variable, "Y");
}

TEST(Safety, BuiltinInputs) {
    EXPECT_TRUE(check_safety(parse_program("p(L) :- prolog:(L is N+1), q(N).")).empty());
    auto v = check_safety(parse_program("p(L) :- q(L), prolog:(M < 3)."));
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v[0].variable, "M");
}

TEST(Stratify, Levels) {
    auto s = stratify(parse_program("p(X) :- q(X), not(r(X)).\nr(X) :- s(X).\nt(X) :- p(X), not(u(X))."));
    EXPECT_EQ(s.of(PredKey{"", "r", 1}), 0);
    EXPECT_EQ(s.of(PredKey{"", "p", 1}), 1);
    EXPECT_EQ(s.of(PredKey{"", "t", 1}), 1);
    EXPECT_EQ(s.count(), 2);
}

TEST(Stratify, NegativeCycleNamesThePath) {
    try {
        stratify(load("negcycle.dl"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Cycle);
        EXPECT_NE(e.message().find("p/1"), std::string::npos);
        EXPECT_NE(e.message().find("q/1"), std::string::npos);
    }
}

TEST(Evaluate, RouteHasFiveFacts) {
    auto store = evaluate(load("route.dl"));
    EXPECT_EQ(store.size(), 5u);
}

TEST(Evaluate, TransitiveClosure) {
    auto p = parse_program(
        "tc(X,Y) :- e(X,Y).\ntc(X,Z) :- e(X,Y), tc(Y,Z).\ne(1,2).\ne(2,3).\ne(3,4).\ne(4,1).");
    EvalStats stats;
    auto store = evaluate(p, {}, &stats);
    EXPECT_EQ(store.facts(PredKey{"", "tc", 2}).size(), 16u);
    EXPECT_FALSE(stats.iterations_per_stratum.empty());
}

TEST(Evaluate, StratifiedNegation) {
    auto p = parse_program("n(1).\nn(2).\nn(3).\nodd(1).\nodd(3).\neven(X) :- n(X), not(odd(X)).");
    auto store = evaluate(p);
    ASSERT_EQ(store.facts(PredKey{"", "even", 1}).size(), 1u);
    EXPECT_EQ(format_term(store.facts(PredKey{"", "even", 1})[0].args[0]), "2");
}

TEST(Evaluate, AnonymousVariablesUnderNegationAreExistential) {
    auto p = parse_program("leaf(X) :- node(X), not(parent(X, _)).\nnode(a).\nnode(b).\nparent(a, b).");
    auto store = evaluate(p);
    auto leaves = store.facts(PredKey{"", "leaf", 1});
    ASSERT_EQ(leaves.size(), 1u);
    EXPECT_EQ(format_term(leaves[0].args[0]), "b");
}

TEST(Evaluate, RejectsUnsafeAndCyclic) {
    EXPECT_ERRC(evaluate(load("unsafe.dl")), Errc::Safety);
    EXPECT_ERRC(evaluate(load("negcycle.dl")), Errc::Cycle);
    EXPECT_ERRC(evaluate(parse_program("p(X) :- q(X), prolog:frob(X).\nq(1).")), Errc::UnknownBuiltin);
}

TEST(Evaluate, Limits) {
    auto nat = parse_program("n(0).\nn(Y) :- n(X), prolog:(Y is X+1).");
    EvalOptions o;
    o.max_iterations = 20;
    EXPECT_ERRC(evaluate(nat, o), Errc::ResourceLimitExceeded);
    EvalOptions f;
    f.max_facts = 50;
    EXPECT_ERRC(evaluate(nat, f), Errc::ResourceLimitExceeded);
}

TEST(Evaluate, RuntimeErrorsNameTheRule) {
    try {
        evaluate(parse_program("% name: div\np(Y) :- q(X), prolog:(Y is 1/X).\nq(0)."));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Type);
        EXPECT_NE(e.message().find("div"), std::string::npos);
    }
}

TEST(Evaluate, NaiveSemiNaiveParallelAgree) {
    auto p = load("route.dl");
    EvalOptions naive;
    naive.semi_naive = false;
    EvalOptions par;
    par.parallel = true;
    auto a = dump_lines(evaluate(p)), b = dump_lines(evaluate(p, naive)), c = dump_lines(evaluate(p, par));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}

TEST(TpStep, SerialAndParallelMatch) {
    auto p = parse_program("tc(X,Y) :- e(X,Y).\ntc(X,Z) :- e(X,Y), tc(Y,Z).\ne(1,2).\ne(2,3).");
    FactStore s;
    for (int i = 0; i < 3; ++i) {
        auto serial = tp_step(p, s, false), parallel = tp_step(p, s, true);
        ASSERT_EQ(serial, parallel);
        for (const auto& a : serial) s.insert(a);
        s.finalize();
    }
    EXPECT_EQ(s.facts(PredKey{"", "tc", 2}).size(), 3u);
}

TEST(Dump, TextAndJson) {
    auto store = evaluate(parse_program("p(a, 1).\np(b, 2.5)."));
    EXPECT_EQ(dump_facts(store), "p(a,1).\np(b,2.5).\n");
    auto j = nlohmann::json::parse(dump_facts_json(store));
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0]["pred"], "p");
    EXPECT_EQ(j[1]["args"][1], 2.5);
}

TEST(ProofTree, TermRoundTrip) {
    Term t = parse_term(
        "t(route('KT','Mue',295),r,t(street('KT','Wue',15),f1),t(route('Wue','Mue',280),e,"
        "t(street('Wue','Mue',280),f2)),(295 is 15+280))");
    auto pt = ProofTree::from_term(t);
    ASSERT_TRUE(pt);
    EXPECT_EQ(pt->tag, "r");
    EXPECT_EQ(pt->children.size(), 2u);
    EXPECT_EQ(pt->side_conditions.size(), 1u);
    EXPECT_EQ(pt->to_term(), t);
    EXPECT_FALSE(ProofTree::from_term(parse_term("foo(bar)")));
}

TEST(ProofTree, Renderings) {
    auto pt = *ProofTree::from_term(parse_term("t(a(1),r,t(b(1),f1),(1 < 2))"));
    EXPECT_EQ(render_proof_tree(pt, TreeFormat::Term), "t(a(1),r,t(b(1),f1),(1 < 2))");
    EXPECT_EQ(render_proof_tree(pt, TreeFormat::Ascii), "a(1)  [r]\n  b(1)  [f1]\n  { 1 < 2 }\n");
    std::string dot = render_proof_tree(pt, TreeFormat::Dot);
    EXPECT_EQ(dot.rfind("digraph proof {", 0), 0u);
    EXPECT_NE(dot.find("style=dashed"), std::string::npos);
}

TEST(AutoPt, InstrumentsAndReplays) {
    Program p = load("route_plain.dl");
    Program inst = auto_pt(p);
    auto store = evaluate(inst);
    auto routes = store.facts(PredKey{"", "route", 4});
    ASSERT_EQ(routes.size(), 3u);
    for (const auto& f : routes) {
        auto t = ProofTree::from_term(f.args.back());
        ASSERT_TRUE(t);
        EXPECT_EQ(ddlite::testing::replay_proof(p, store, *t), "");
    }
    auto hand = evaluate(load("route.dl"));
    EXPECT_EQ(dump_lines(store), dump_lines(hand));
}

TEST(AutoPt, ReplayRejectsForgedTrees) {
    Program p = load("route_plain.dl");
    auto store = evaluate(auto_pt(p));
    auto forged = *ProofTree::from_term(parse_term(
        "t(route('KT','Mue',300),r,t(street('KT','Wue',15),f1),t(route('Wue','Mue',280),e,"
        "t(street('Wue','Mue',280),f2)),(300 is 15+280))"));
    EXPECT_NE(ddlite::testing::replay_proof(p, store, forged), "");
    auto wrong_tag = *ProofTree::from_term(parse_term("t(street('KT','Wue',15),f2)"));
    EXPECT_NE(ddlite::testing::replay_proof(p, store, wrong_tag), "");
}

TEST(AutoPt, WitnessesKeepRecursionFinite) {
    // every tc atom has infinitely many trees; witnesses keep the first
    Program p = parse_program("tc(X,Y) :- e(X,Y).\ntc(X,Z) :- tc(X,Y), tc(Y,Z).\ne(a,b).\ne(b,a).");
    EvalOptions bounded;
    bounded.max_facts = 200;
    EXPECT_ERRC(evaluate(auto_pt(p), bounded), Errc::ResourceLimitExceeded);
    EvalOptions opts;
    opts.witness_predicates = auto_pt_witnesses(p);
    auto store = evaluate(auto_pt(p), opts);
    auto tcs = store.facts(PredKey{"", "tc", 3});
    EXPECT_EQ(tcs.size(), 4u);
    for (const auto& f : tcs) {
        auto t = ProofTree::from_term(f.args.back());
        ASSERT_TRUE(t);
        EXPECT_EQ(ddlite::testing::replay_proof(p, store, *t), "");
    }
}

TEST(AutoPt, ReplayChecksNegation) {
    Program p = parse_program("% name: lf\nleaf(X) :- node(X), not(parent(X, _)).\nnode(a).\nnode(b).\nparent(a, b).");
    auto store = evaluate(auto_pt(p));
    auto forged = *ProofTree::from_term(parse_term("t(leaf(a),lf,t(node(a),f2))"));
    forged.children[0].tag = p.rules[1].name;
    EXPECT_NE(ddlite::testing::replay_proof(p, store, forged).find("negated literal"), std::string::npos);
}
