#include <gtest/gtest.h>

#include <fstream>

#include "mintypes/json.hpp"
#include "mintypes/textio.hpp"

using namespace mintypes;

TEST(Json, DerivationRoundTrip) {
  for (auto sys : {SystemId::H, SystemId::Sw}) {
    auto ds = derive_search(parse_env("x:[[a] -> [] -> a], y:[a]"), parse_term("x y (\\z. z)"),
                            Goal{parse_type("a")}, sys);
    for (const auto& d : ds) {
      auto j = derivation_to_json(d);
      Derivation back = derivation_from_json(nlohmann::json::parse(j.dump()));
      EXPECT_EQ(derivation_key(back), derivation_key(d));
      EXPECT_TRUE(is_valid(back, sys));
    }
  }
}

TEST(Json, MalformedInputIsRejected) {
  EXPECT_THROW(derivation_from_json(nlohmann::json::parse(R"({"rule": "var"})")), Error);
  EXPECT_THROW(derivation_from_json(nlohmann::json::parse(
                   R"({"rule": "cut", "env": "", "subject": "x", "type": "a", "premises": []})")),
               Error);
  EXPECT_THROW(derivation_from_json(nlohmann::json::parse(
                   R"({"rule": "var", "env": "x:[a]", "subject": "x", "type": "[a] ->", "premises": []})")),
               ParseError);
}

TEST(Json, SubjectNamesAreKept) {
  auto j = nlohmann::json::parse(R"({"rule": "var", "env": "y:[a]", "subject": "y", "type": "a", "premises": []})");
  Derivation d = derivation_from_json(j);
  EXPECT_EQ(d.subject().name(), "y");
  EXPECT_EQ(d.rule, Rule::Var);
}

TEST(Json, ShippedHeDerivationIsValid) {
  std::ifstream in(MINTYPES_DATA_DIR "/he_redex.json");
  ASSERT_TRUE(in);
  auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("format"), 1);
  Derivation d = derivation_from_json(j.at("derivation"));
  EXPECT_TRUE(is_valid(d, SystemId::He));
  EXPECT_FALSE(is_valid(d, SystemId::H));
  EXPECT_EQ(print_env(d.env()), "x:[s]");
}

TEST(Json, RunsCarryMeasures) {
  Query q;
  q.goal = parse_type("[[a]->a]->[a]->a");
  auto sols = inhabit(q);
  ASSERT_EQ(sols.size(), 2u);
  auto j = solution_to_json(sols[0]);
  EXPECT_EQ(j.at("term"), "\\x. \\y. x y");
  EXPECT_EQ(j.at("run").at("rule"), "Abs");
  EXPECT_EQ(j.at("run").at("measure"), run_measure(*sols[0].run));
}
