#include <gtest/gtest.h>

#include <cmath>

#include "ddlite/engine/evaluate.hpp"
#include "ddlite/hybrid/csv.hpp"
#include "ddlite/hybrid/query.hpp"
#include "ddlite/syntax/parser.hpp"
#include "ddlite/syntax/printer.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ddlite;
using namespace ddlite::hybrid;
using syntax::format_term;

namespace {

engine::FactStore employees() {
    Program p;
    p.add_facts(load_facts_csv(fixture("employee.csv"), "employee"));
    return engine::evaluate(p);
}

const char* kPaperGoal =
    "employee(_, SSN, _,_,_,_, DNO), Row := doc('works_on.xml')/row::[@'ESSN'=SSN], "
    "H := Row@'HOURS', atom_number(H, HOURS)";

}  // namespace

TEST(Csv, Rfc4180) {
    auto rows = read_csv("a,\"b,c\",\"say \"\"hi\"\"\"\r\n\nx,\"multi\nline\",z\n");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0][1], "b,c");
    EXPECT_EQ(rows[0][2], "say \"hi\"");
    EXPECT_EQ(rows[1][1], "multi\nline");
    EXPECT_ERRC(read_csv("a,\"open\n"), Errc::Syntax);
}

TEST(Csv, InfersNumericColumnsAndNulls) {
    auto facts = load_facts_csv(fixture("employee.csv"), "employee");
    ASSERT_EQ(facts.size(), 4u);
    EXPECT_EQ(syntax::format_atom(facts[0]), "employee('Borg',11,'1927-11-10','M',55000,null,1)");
    EXPECT_TRUE(facts[1].args[5].is_int());  // null does not spoil the column
}

TEST(Csv, ExplicitColumnsAndErrors) {
    auto facts = facts_from_csv_text("1,2\n3,4\n", "p", Header::Absent, std::set<std::size_t>{1});
    ASSERT_EQ(facts.size(), 2u);
    EXPECT_TRUE(facts[0].args[0].is_const());
    EXPECT_TRUE(facts[0].args[1].is_int());
    EXPECT_ERRC(facts_from_csv_text("a,b\n1,x\n", "p", Header::Present, std::set<std::size_t>{1}), Errc::NumericParse);
    EXPECT_ERRC(facts_from_csv_text("a,b\n1\n", "p", Header::Present, std::nullopt), Errc::RaggedRow);
    EXPECT_ERRC(load_facts_csv(fixture("missing.csv"), "p"), Errc::Io);
}

TEST(Path, ParseForms) {
    auto path = parse_path(syntax::parse_term("doc('works_on.xml')/row::[@'ESSN'=SSN]"));
    ASSERT_EQ(path.steps.size(), 2u);
    EXPECT_EQ(path.steps[0].kind, PathStep::Kind::Child);
    EXPECT_EQ(path.steps[1].kind, PathStep::Kind::Filter);
    EXPECT_EQ(path.steps[1].name, "ESSN");
    auto attr = parse_path(syntax::parse_term("Row@'HOURS'"));
    EXPECT_TRUE(attr.source.is_var());
    EXPECT_EQ(attr.steps.back().kind, PathStep::Kind::Attr);
    EXPECT_ERRC(parse_path(syntax::parse_term("foo/bar")), Errc::Syntax);
}

TEST(Path, EvalFiltersAndAttributes) {
    XmlTerm doc = load_xml(fixture("works_on.xml"));
    Substitution env;
    env.bind("SSN", Term::integer(22));
    auto rows = path_eval(doc, parse_path(syntax::parse_term("doc(w)/row::[@'ESSN'=SSN]")), env);
    EXPECT_EQ(rows.size(), 2u);
    auto hours = path_eval(doc, parse_path(syntax::parse_term("doc(w)/row@'HOURS'")), env);
    EXPECT_EQ(hours.size(), 7u);
    EXPECT_EQ(*hours[0].value, "NULL");
    EXPECT_ERRC(path_eval(doc, parse_path(syntax::parse_term("doc(w)/row::[@'ESSN'=Q]")), {}),
                Errc::UnboundFilterVariable);
    XmlTerm text = XmlTerm::text_node("hello");
    EXPECT_ERRC(path_eval(text, parse_path(syntax::parse_term("X@a")), {}), Errc::AttrOnText);
}

TEST(Path, ElementTermRoundTrip) {
    XmlTerm doc = load_xml(fixture("people.xml"));
    auto back = term_to_element(element_to_term(doc));
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, doc);
}

TEST(Docs, Registry) {
    DocRegistry docs;
    docs.add_search_dir(DDLITE_FIXTURES);
    EXPECT_EQ(docs.get("works_on.xml").tag, "table");
    docs.add("w", fixture("works_on.xml"));
    EXPECT_EQ(docs.get("w").tag, "table");
    EXPECT_ERRC(docs.get("nowhere.xml"), Errc::UnknownDocument);
}

TEST(Query, SolveJoinsFactsAndDocuments) {
    auto store = employees();
    DocRegistry docs;
    docs.add_search_dir(DDLITE_FIXTURES);
    auto answers = solve_goal(parse_query_goal(kPaperGoal), store, docs);
    EXPECT_EQ(answers.size(), 5u);  // two NULL rows drop out in atom_number
}

TEST(Query, PaperShapedAggregate) {
    auto store = employees();
    DocRegistry docs;
    docs.add_search_dir(DDLITE_FIXTURES);
    auto rows = ddbase_aggregate(parse_template("[DNO, sum(HOURS)]"), parse_query_goal(kPaperGoal), store, docs);
    EXPECT_EQ(format_tuples(rows), "[[1, 12.5], [4, 30.0], [5, 47.5]]");

    auto oracle = ddlite::testing::employee_hours_oracle(fixture("employee.csv"), fixture("works_on.xml"));
    ASSERT_EQ(rows.size(), oracle.size());
    for (const auto& r : rows) {
        double want = oracle.at(r[0].int_value());
        EXPECT_LE(std::fabs(r[1].numeric_value() - want), 1e-9 * std::max(1.0, std::fabs(want)));
    }
}

TEST(Query, OtherAggregates) {
    auto store = employees();
    DocRegistry docs;
    docs.add_search_dir(DDLITE_FIXTURES);
    auto goal = parse_query_goal(kPaperGoal);
    EXPECT_EQ(format_tuples(ddbase_aggregate(parse_template("[DNO, count(HOURS), max(HOURS)]"), goal, store, docs)),
              "[[1, 1, 12.5], [4, 1, 30.0], [5, 3, 27.5]]");
    EXPECT_EQ(format_tuples(ddbase_aggregate(parse_template("[avg(HOURS)]"), goal, store, docs)), "[[18.0]]");
    EXPECT_EQ(format_tuples(ddbase_aggregate(parse_template("[sum(S)]"),
                                             parse_query_goal("employee(_, _, _, _, S, _, _)"), store, docs)),
              "[[168000]]");
}

TEST(Query, EmptyAndErrors) {
    auto store = employees();
    DocRegistry docs;
    EXPECT_EQ(format_tuples(ddbase_aggregate(parse_template("[D]"), parse_query_goal("employee(_,_,_,_,_,_,D), D > 9"),
                                             store, docs)),
              "[]");
    EXPECT_ERRC(ddbase_aggregate(parse_template("[Q]"), parse_query_goal("employee(_,_,_,_,_,_,D)"), store, docs),
                Errc::TemplateVarUnbound);
    EXPECT_ERRC(ddbase_aggregate(parse_template("[sum(N)]"), parse_query_goal("employee(N,_,_,_,_,_,_)"), store, docs),
                Errc::NonNumericAggregate);
    EXPECT_ERRC(parse_template("DNO"), Errc::Syntax);
    EXPECT_ERRC(parse_template("[median(X)]"), Errc::Syntax);
    EXPECT_ERRC(solve_goal(parse_query_goal("H := R@'HOURS'"), store, docs), Errc::Instantiation);
}

TEST(CompensatedSum, BeatsNaiveSummation) {
    std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
    EXPECT_DOUBLE_EQ(compensated_sum(xs), 2.0);
    std::vector<double> tenths(10, 0.1);
    EXPECT_DOUBLE_EQ(compensated_sum(tenths), 1.0);
}
