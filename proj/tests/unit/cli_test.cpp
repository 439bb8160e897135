#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "ddlite/cli/cli.hpp"
#include "json.hpp"
#include "test_util.hpp"

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run ddlite_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = ddlite::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string F(const std::string& name) { return fixture(name); }

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(ddlite_run({}).code, 2);
    EXPECT_EQ(ddlite_run({"frobnicate"}).code, 2);
    EXPECT_EQ(ddlite_run({"graph", F("p1.dl"), "--kind", "bogus"}).code, 2);
    EXPECT_EQ(ddlite_run({"parse", F("nope.dl")}).code, 2);
    EXPECT_EQ(ddlite_run({"eval", F("uncle.dl"), "--csv", "parent"}).code, 2);
    auto help = ddlite_run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("eval"), std::string::npos);
}

TEST(Cli, Parse) {
    auto ok = ddlite_run({"parse", F("route.dl")});
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("% safe, stratified"), std::string::npos);
    auto unsafe = ddlite_run({"parse", F("unsafe.dl")});
    EXPECT_EQ(unsafe.code, 1);
    EXPECT_NE(unsafe.err.find("variable Y"), std::string::npos);
    auto cyc = ddlite_run({"parse", F("negcycle.dl"), "--format", "json"});
    EXPECT_EQ(cyc.code, 1);
    EXPECT_FALSE(nlohmann::json::parse(cyc.out)["stratified"].get<bool>());
    auto syn = ddlite_run({"parse", F("people.xml")});
    EXPECT_EQ(syn.code, 1);
}

TEST(Cli, Diff) {
    auto pdg = ddlite_run({"diff", F("p1.dl"), F("p2.dl")});
    EXPECT_EQ(pdg.code, 0);
    EXPECT_EQ(pdg.out, "no differences\n");
    auto rpg = ddlite_run({"diff", F("p1.dl"), F("p2.dl"), "--kind", "rpg"});
    EXPECT_EQ(rpg.code, 0);
    EXPECT_NE(rpg.out, "no differences\n");
    auto h = ddlite_run({"diff", F("helpers_a.dl"), F("helpers_b.dl"), "--helpers", "h", "--format", "json"});
    EXPECT_EQ(h.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(h.out)["equivalent_modulo_helpers"].get<bool>());
}

TEST(Cli, Eval) {
    auto r = ddlite_run({"eval", F("route.dl")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("route('KT','Mue',295,t(route('KT','Mue',295),r,"), std::string::npos);
    auto lim = ddlite_run({"eval", F("route.dl"), "--max-iterations", "1"});
    EXPECT_EQ(lim.code, 1);
    EXPECT_NE(lim.err.find("ResourceLimitExceeded"), std::string::npos);
    auto csv = ddlite_run({"eval", F("uncle.dl"), "--csv", "parent=" + F("parent.csv"), "--csv",
                           "brother=" + F("brother.csv")});
    EXPECT_EQ(csv.code, 0);
    EXPECT_NE(csv.out.find("uncle(a,c)."), std::string::npos);
    auto pt = ddlite_run({"eval", F("route_plain.dl"), "--auto-pt"});
    EXPECT_EQ(pt.out, r.out);
}

TEST(Cli, MaxFactsEnvironmentOverride) {
    ::setenv("DDLITE_MAX_FACTS", "3", 1);
    auto capped = ddlite_run({"eval", F("route.dl")});
    auto flag_wins = ddlite_run({"eval", F("route.dl"), "--max-facts", "100"});
    ::setenv("DDLITE_MAX_FACTS", "lots", 1);
    auto bad = ddlite_run({"eval", F("route.dl")});
    ::unsetenv("DDLITE_MAX_FACTS");
    EXPECT_EQ(capped.code, 1);
    EXPECT_NE(capped.err.find("more than 3 facts"), std::string::npos);
    EXPECT_EQ(flag_wins.code, 0);
    EXPECT_EQ(bad.code, 2);
}

TEST(Cli, Swrl) {
    auto u = ddlite_run({"swrl", F("uncle.swrl")});
    EXPECT_EQ(u.code, 0);
    EXPECT_EQ(u.out, "uncle(X,Z) :- parent(X,Y), brother(Y,Z).\n");
    EXPECT_EQ(ddlite_run({"swrl", F("uncle_ruleml.xml")}).out, u.out);
    auto opm = ddlite_run({"swrl", F("opm.swrl"), "--emit", "report", "--format", "json"});
    EXPECT_EQ(opm.code, 0);
    EXPECT_EQ(nlohmann::json::parse(opm.out)["datalog_rules"], 4);
    auto bad = ddlite_run({"swrl", F("unsafe.swrl"), "--emit", "report"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("variable Y"), std::string::npos);
}

TEST(Cli, Query) {
    auto q = ddlite_run({"query", "--csv", "employee=" + F("employee.csv"), "--template", "[DNO, sum(HOURS)]", "--goal",
                         "employee(_, SSN, _,_,_,_, DNO), Row := doc('works_on.xml')/row::[@'ESSN'=SSN], "
                         "H := Row@'HOURS', atom_number(H, HOURS)"});
    EXPECT_EQ(q.code, 0) << q.err;
    EXPECT_EQ(q.out, "[[1, 12.5], [4, 30.0], [5, 47.5]]\n");
    auto none = ddlite_run({"query", F("route.dl"), "--template", "[L]", "--goal", "route('KT','Nowhere',L,T)"});
    EXPECT_EQ(none.out, "[]\n");
    auto len = ddlite_run({"query", F("route.dl"), "--template", "[L]", "--goal", "route('KT','Mue',L,T)"});
    EXPECT_EQ(len.out, "[[295]]\n");
    auto missing = ddlite_run({"query", "--template", "[X]", "--goal", "R := doc('absent.xml')/row, X = R"});
    EXPECT_EQ(missing.code, 2);
}

TEST(Cli, Prove) {
    auto t = ddlite_run({"prove", F("route.dl"), "--atom", "route('KT','Mue',295,T)"});
    EXPECT_EQ(t.code, 0);
    EXPECT_EQ(t.out,
              "t(route('KT','Mue',295),r,t(street('KT','Wue',15),f1),t(route('Wue','Mue',280),e,"
              "t(street('Wue','Mue',280),f2)),(295 is 15+280))\n");
    auto plain = ddlite_run({"prove", F("route_plain.dl"), "--atom", "route('KT','Mue',295)"});
    EXPECT_EQ(plain.out, t.out);
    auto fact = ddlite_run({"prove", F("route_plain.dl"), "--atom", "street('KT','Wue',15)", "--format", "ascii"});
    EXPECT_EQ(fact.out, "street('KT','Wue',15)  [f1]\n");
    auto none = ddlite_run({"prove", F("route_plain.dl"), "--atom", "route('Mue','KT',L)"});
    EXPECT_EQ(none.code, 1);
    EXPECT_NE(none.err.find("no proof"), std::string::npos);
}

TEST(Cli, Graph) {
    auto dot = ddlite_run({"graph", F("ancestor.dl"), "--kind", "rpg", "--format", "dot"});
    EXPECT_EQ(dot.code, 0);
    EXPECT_NE(dot.out.find("\"findall/3#2\" -> \"parent/2\""), std::string::npos);
    auto schema = ddlite_run({"graph", F("people.xml"), "--kind", "schema", "--format", "json", "--no-attrs"});
    EXPECT_EQ(schema.code, 0);
    EXPECT_EQ(nlohmann::json::parse(schema.out)["kind"], "schema");
}

// Golden files pin the machine-facing formats only (JSON and DOT).
class Golden : public ::testing::TestWithParam<std::pair<const char*, std::vector<std::string>>> {};

TEST_P(Golden, Matches) {
    auto [name, args] = GetParam();
    for (auto& a : args)
        if (a.rfind("@", 0) == 0) a = F(a.substr(1));
    auto r = ddlite_run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, slurp(F(std::string("golden/") + name)));
}

INSTANTIATE_TEST_SUITE_P(
    Cli, Golden,
    ::testing::Values(
        std::make_pair("p1_pdg.json", std::vector<std::string>{"graph", "@p1.dl", "--format", "json"}),
        std::make_pair("ancestor_rpg.dot",
                       std::vector<std::string>{"graph", "@ancestor.dl", "--kind", "rpg", "--format", "dot"}),
        std::make_pair("p1_p2_rpg_diff.json",
                       std::vector<std::string>{"diff", "@p1.dl", "@p2.dl", "--kind", "rpg", "--format", "json"}),
        std::make_pair("route_eval.json", std::vector<std::string>{"eval", "@route.dl", "--format", "json"}),
        std::make_pair("route_proof.dot", std::vector<std::string>{"prove", "@route_plain.dl", "--atom",
                                                                    "route('KT','Mue',295)", "--format", "dot"}),
        std::make_pair("people_schema.dot",
                       std::vector<std::string>{"graph", "@people.xml", "--kind", "schema", "--format", "dot"})),
    [](const auto& info) {
        std::string n = info.param.first;
        for (auto& c : n)
            if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
        return n;
    });
