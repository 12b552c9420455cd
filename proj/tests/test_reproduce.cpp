#include <gtest/gtest.h>

#include "pcpkit/errors.hpp"
#include "pcpkit/reproduce.hpp"

using namespace pcpkit;

class ScenarioTest : public ::testing::TestWithParam<std::string> {};

TEST_P(ScenarioTest, Passes) {
  const ScenarioReport r = reproduce(GetParam(), 1);
  EXPECT_FALSE(r.checks.empty());
  for (const CheckResult& c : r.checks)
    EXPECT_TRUE(c.pass) << c.name << ": expected " << c.expected << ", observed " << c.observed;
  EXPECT_TRUE(r.pass());
}

INSTANTIATE_TEST_SUITE_P(All, ScenarioTest, ::testing::ValuesIn(scenario_names()),
                         [](const auto& info) { return "scenario" + std::to_string(info.index); });

TEST(Reproduce, UnknownIdThrows) {
  EXPECT_THROW(reproduce("no-such-scenario"), InvalidInput);
}

TEST(Reproduce, JsonIsDeterministic) {
  const nlohmann::json a = to_json(reproduce("example1", 3));
  const nlohmann::json b = to_json(reproduce("example1", 3));
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_FALSE(a.contains("wall_seconds"));
  EXPECT_TRUE(to_json(reproduce("remark3", 3), true).contains("wall_seconds"));
  EXPECT_EQ(a["seed"], 3);
  EXPECT_EQ(a["scenario"], "example1");
}
