#include <gtest/gtest.h>

#include "properties.hpp"

using namespace ddlite::testing;

TEST(Properties, FixpointsAgree) { EXPECT_EQ(check_fixpoints(200, 1234), ""); }
TEST(Properties, RuleOrderIrrelevant) { EXPECT_EQ(check_rule_order(100, 99), ""); }
TEST(Properties, MguLaws) { EXPECT_EQ(check_mgu(1000, 7), ""); }
TEST(Properties, ProofTreesReplay) { EXPECT_EQ(check_proof_replay(100, 2024), ""); }
