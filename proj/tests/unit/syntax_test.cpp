#include <gtest/gtest.h>

#include "ddlite/syntax/parser.hpp"
#include "ddlite/syntax/printer.hpp"
#include "ddlite/syntax/swrl.hpp"
#include "ddlite/syntax/xml.hpp"
#include "test_util.hpp"

using namespace ddlite;
using namespace ddlite::syntax;

TEST(Parser, RulesGetDirectiveOrPositionalNames) {
    Program p = parse_program("% name: base\na(X) :- b(X).\na(X) :- c(X).\n");
    ASSERT_EQ(p.rules.size(), 2u);
    EXPECT_EQ(p.rules[0].name, "base");
    EXPECT_EQ(p.rules[1].name, "r2");
}

TEST(Parser, DuplicateNamesRejected) {
    EXPECT_ERRC(parse_program("% name: x\na.\n% name: x\nb.\n"), Errc::DuplicateRuleName);
}

TEST(Parser, PrefixedAndParenthesizedBuiltins) {
    Program p = parse_program("r(L) :- s(N), t(M), prolog:(L is N+M).");
    const auto& lit = p.rules[0].body[2];
    EXPECT_EQ(lit.atom.prefix, "prolog");
    EXPECT_EQ(lit.atom.predicate, "is");
    EXPECT_EQ(format_term(lit.atom.args[1]), "N+M");
}

TEST(Parser, Negation) {
    Program p = parse_program("a(X) :- b(X), not(c(X)).\nd(X) :- b(X), \\+ c(X).");
    EXPECT_TRUE(p.rules[0].body[1].negated());
    EXPECT_TRUE(p.rules[1].body[1].negated());
    EXPECT_EQ(p.rules[1].body[1].atom.predicate, "c");
}

TEST(Parser, OperatorPrecedence) {
    EXPECT_EQ(format_term(parse_term("1+2*3")), "1+2*3");
    Term t = parse_term("(1+2)*3");
    EXPECT_EQ(t.name(), "*");
    EXPECT_EQ(parse_term("1-2-3").arg(0).name(), "-");  // left associative
    EXPECT_EQ(parse_term("a :- b, c").name(), ":-");
}

TEST(Parser, QuotedAtomsRoundTrip) {
    Term t = parse_term("street('KT', 'Wue', 15)");
    EXPECT_EQ(format_term(t), "street('KT','Wue',15)");
    Term q = parse_term("'it''s'");
    EXPECT_EQ(q.name(), "it's");
    EXPECT_EQ(parse_term(format_term(q)), q);
    EXPECT_EQ(format_term(parse_term("[a|T]")), "[a|T]");
}

TEST(Parser, SyntaxErrorHasPosition) {
    try {
        parse_program("a(X) :- b(X).\nc(X :- d.\n", "bad.dl");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Syntax);
        EXPECT_EQ(e.span().file, "bad.dl");
        EXPECT_EQ(e.span().line, 2);
    }
}

TEST(Parser, GoalConjuncts) {
    auto g = parse_goal("employee(_, SSN, _), Row := doc('w.xml')/row::[@'ESSN'=SSN], H := Row@'HOURS'");
    ASSERT_EQ(g.size(), 3u);
    EXPECT_EQ(g[1].term.name(), ":=");
    EXPECT_EQ(g[2].term.arg(1).name(), "@");
}

TEST(Printer, ProgramRoundTrip) {
    std::string src = slurp(fixture("route.dl"));
    Program p = parse_program(src);
    Program q = parse_program(print_program(p));
    ASSERT_EQ(p.rules.size(), q.rules.size());
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        EXPECT_TRUE(p.rules[i].same_clause(q.rules[i])) << format_rule(p.rules[i]);
        EXPECT_EQ(p.rules[i].name, q.rules[i].name);
    }
}

TEST(Printer, Numbers) {
    EXPECT_EQ(format_term(Term::real(30.0)), "30.0");
    EXPECT_EQ(format_term(Term::real(12.5)), "12.5");
    EXPECT_EQ(format_term(Term::integer(-3)), "-3");
}

TEST(Xml, ParseAndSerializeRoundTrip) {
    XmlTerm x = parse_xml(slurp(fixture("people.xml")));
    EXPECT_EQ(x.tag, "swrlx:Ontology");
    ASSERT_TRUE(x.attribute("swrlx:name"));
    EXPECT_EQ(*x.attribute("swrlx:name"), "people");
    EXPECT_EQ(x.elements().size(), 2u);
    EXPECT_EQ(parse_xml(serialize_xml(x)), x);
}

TEST(Xml, EntitiesAndErrors) {
    XmlTerm x = parse_xml("<a b=\"1 &lt; 2\">x &amp; y</a>");
    EXPECT_EQ(*x.attribute("b"), "1 < 2");
    EXPECT_EQ(x.inner_text(), "x & y");
    EXPECT_ERRC(parse_xml("<a><b></a>"), Errc::XmlSyntax);
    EXPECT_ERRC(parse_xml("<a>&nbsp;</a>"), Errc::UnsupportedConstruct);
}

TEST(Swrl, AbstractSyntax) {
    auto rules = parse_swrl(slurp(fixture("uncle.swrl")));
    ASSERT_EQ(rules.size(), 1u);
    EXPECT_EQ(rules[0].antecedent.size(), 2u);
    EXPECT_EQ(rules[0].consequent[0].name, "uncle");
    EXPECT_EQ(rules[0].consequent[0].kind, SwrlAtom::Kind::Property);
}

TEST(Swrl, RuleMlMatchesAbstractSyntax) {
    auto a = swrl_to_datalog(parse_swrl(slurp(fixture("uncle.swrl"))));
    auto b = swrl_to_datalog(parse_ruleml_xml(slurp(fixture("uncle_ruleml.xml"))).rules);
    ASSERT_EQ(a.rules.size(), 1u);
    ASSERT_EQ(b.rules.size(), 1u);
    EXPECT_EQ(format_rule(a.rules[0]), "uncle(X,Z) :- parent(X,Y), brother(Y,Z).");
    EXPECT_TRUE(a.rules[0].same_clause(b.rules[0]));
}

TEST(Swrl, LloydToporSplitsConsequents) {
    auto rules = parse_swrl(slurp(fixture("opm.swrl")));
    ASSERT_EQ(rules.size(), 1u);
    auto split = lloyd_topor(rules[0]);
    ASSERT_EQ(split.size(), 4u);
    for (const auto& r : split) {
        EXPECT_EQ(r.consequent.size(), 1u);
        EXPECT_EQ(r.antecedent, rules[0].antecedent);
    }
    SwrlRule empty = rules[0];
    empty.consequent.clear();
    EXPECT_ERRC(lloyd_topor(empty), Errc::EmptyConsequent);
}

TEST(Swrl, BuiltinsAndIdentityAtoms) {
    auto p = swrl_to_datalog(parse_swrl(
        "Implies(Antecedent(p(I-variable(x) I-variable(y)) sameAs(I-variable(x) I-variable(y))"
        " differentFrom(I-variable(x) bob)) Consequent(q(I-variable(x))))"));
    const auto& body = p.rules[0].body;
    EXPECT_EQ(body[1].atom.prefix, "prolog");
    EXPECT_EQ(body[1].atom.predicate, "same_as");
    EXPECT_EQ(body[2].atom.predicate, "different_from");
    EXPECT_EQ(format_term(body[2].atom.args[1]), "bob");
}

TEST(Swrl, VariableCollision) {
    EXPECT_ERRC(swrl_to_datalog(parse_swrl("Implies(Antecedent(p(I-variable(x) I-variable(X))) Consequent(q(I-variable(x))))")),
                Errc::VariableCollision);
}

TEST(Swrl, FormatRoundTrip) {
    auto rules = parse_swrl(slurp(fixture("opm.swrl")));
    auto again = parse_swrl(format_swrl(rules[0]));
    ASSERT_EQ(again.size(), 1u);
    EXPECT_EQ(again[0], rules[0]);
}
