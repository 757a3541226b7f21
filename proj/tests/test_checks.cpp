#include "cdual/checks.hpp"
#include "cdual/group.hpp"
#include "cdual/words.hpp"

#include <gtest/gtest.h>

using namespace cdual;

namespace {

CheckOptions opts(const std::string& type, std::size_t trials = 6) {
  CheckOptions o;
  o.cartan_type = type;
  o.trials.trials = trials;
  o.trials.rng_seed = 3;
  return o;
}

}  // namespace

TEST(Checks, NamesAndLevels) {
  EXPECT_EQ(identity_names().size(), 16u);
  EXPECT_EQ(parse_level("matrix"), CheckLevel::Matrix);
  EXPECT_FALSE(parse_level("group").has_value());
  EXPECT_EQ(default_level(parse_cartan("A3")), CheckLevel::Matrix);
  EXPECT_EQ(default_level(parse_cartan("G2")), CheckLevel::Seed);
}

TEST(Checks, AvailabilityRules) {
  const CartanData a1 = parse_cartan("A1"), a2 = parse_cartan("A2"), g2 = parse_cartan("G2");
  EXPECT_EQ(unsupported_reason("TWIST", a2, CheckLevel::Matrix), "");
  EXPECT_NE(unsupported_reason("TWIST", g2, CheckLevel::Seed), "");
  EXPECT_NE(unsupported_reason("BRAID", g2, CheckLevel::Matrix), "");
  EXPECT_EQ(unsupported_reason("BRAID", g2, CheckLevel::Seed), "");
  EXPECT_NE(unsupported_reason("BRAID", a1, CheckLevel::Matrix), "");
  EXPECT_NE(unsupported_reason("PGL2_TABLE", a2, CheckLevel::Matrix), "");
  EXPECT_THROW(check_identity("PGL2_TABLE", opts("A2")), UnsupportedForType);
  CheckOptions m = opts("G2");
  m.level = CheckLevel::Matrix;
  EXPECT_THROW(check_identity("BRAID", m), UnsupportedForType);
  EXPECT_THROW(check_identity("NO_SUCH_IDENTITY", opts("A1")), InvalidParameter);
}

TEST(Checks, RankOneSuitePasses) {
  const SuiteResult r = check_all(opts("A1", 8));
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  EXPECT_EQ(r.reports.size() + r.not_applicable.size(), identity_names().size());
  for (const auto& rep : r.reports) {
    EXPECT_TRUE(rep.passed()) << rep.name;
    EXPECT_GT(rep.trials, 0u) << rep.name;
  }
}

TEST(Checks, RankTwoTypeASuitePasses) {
  const SuiteResult r = check_all(opts("A2", 4));
  for (const auto& rep : r.reports) EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
  EXPECT_EQ(r.reports.size(), 14u);
}

TEST(Checks, SeedLevelSuitesPassOutsideTypeA) {
  for (const char* t : {"B2", "G2", "A2"}) {
    CheckOptions o = opts(t, 4);
    o.level = CheckLevel::Seed;
    for (const char* name : {"FG_MUTATION", "TORMUT"}) {
      const CheckReport rep = check_identity(name, o);
      EXPECT_TRUE(rep.passed()) << t << " " << rep.to_json().dump(2);
    }
  }
  CheckOptions b2 = opts("B2", 4);
  const CheckReport braid = check_identity("BRAID", b2);
  EXPECT_TRUE(braid.passed()) << braid.to_json().dump(2);
  EXPECT_EQ(braid.level, "seed");
}

TEST(Checks, CallerWordsReplaceDefaults) {
  CheckOptions o = opts("A2");
  o.words = {parse_word("1,-2"), parse_word("-2,1")};
  const CheckReport rep = check_identity("FG_MUTATION", o);
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump(2);
  EXPECT_EQ(rep.words, (std::vector<std::string>{"1,-2", "-2,1"}));
  o.words = {parse_word("1,2")};
  EXPECT_THROW(check_identity("FG_MUTATION", o), InvalidParameter);
}

TEST(Checks, ReportsAreReproducible) {
  const auto a = check_identity("TWIST", opts("A2")).to_json().dump();
  const auto b = check_identity("TWIST", opts("A2")).to_json().dump();
  EXPECT_EQ(a, b);
  CheckOptions t = opts("A1");
  t.timing = true;
  EXPECT_TRUE(check_identity("TWIST", t).to_json().contains("elapsed_ms"));
  EXPECT_FALSE(check_identity("TWIST", opts("A1")).to_json().contains("elapsed_ms"));
}

TEST(Checks, BadTrialConfigurationIsRejected) {
  CheckOptions o = opts("A1");
  o.trials.prime = 1000003ULL * 1000033ULL;
  EXPECT_THROW(check_identity("TWIST", o), std::invalid_argument);
}
