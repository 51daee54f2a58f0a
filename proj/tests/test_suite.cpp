#include <gtest/gtest.h>

#include <set>

#include "ddwl/suite.hpp"

using namespace ddwl;

TEST(Suite, ReportIsDeterministicWithoutTimings) {
  SuiteOptions opts;
  const auto a = run_suite(3, opts).to_json(false).dump();
  const auto b = run_suite(3, opts).to_json(false).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("seconds"), std::string::npos);
}

TEST(Suite, EveryCheckOnceAtThree) {
  const RunReport rep = run_suite(3, {});
  std::set<std::string> names;
  for (const auto& c : rep.checks) EXPECT_TRUE(names.insert(c.name).second) << c.name;
  for (const char* n : {"field_group_axioms", "psi_group", "transversal", "structure_constants", "ddd_parameters",
                        "ddd_parameters_looped", "wl_closure", "psi_delta_fit", "wl_equivalence", "iso_classes",
                        "automorphisms", "algebraic_automorphisms", "design_iso", "one_point_extension",
                        "engine_properties"}) {
    EXPECT_TRUE(names.count(n)) << n;
  }
  for (const auto& c : rep.checks) {
    // The loopless digraph is the one known not to have the stated counts.
    if (c.name == "ddd_parameters") {
      EXPECT_EQ(c.status, CheckStatus::fail);
    } else {
      EXPECT_EQ(c.status, CheckStatus::pass) << c.name << ": " << c.data.dump();
    }
  }
  EXPECT_FALSE(rep.passed());
  const auto j = rep.to_json();
  EXPECT_EQ(j["tool"], "ddwl");
  EXPECT_EQ(j["version"], kVersion);
  EXPECT_EQ(j["field"]["p"], 3);
  EXPECT_EQ(j["field"]["modulus"], nlohmann::json::array({0}));
}

TEST(Suite, FastModeRecordsSeed) {
  SuiteOptions opts;
  opts.mode = SuiteMode::fast;
  const auto j = run_suite(3, opts).to_json(false);
  EXPECT_EQ(j["suite"], "fast");
  EXPECT_EQ(j["seed"], kDesignSeed);
}

TEST(Suite, AutomorphismOrderAtThree) {
  Context ctx(3);
  const auto r = check_automorphisms(ctx, {}, 27);
  EXPECT_EQ(r.status, CheckStatus::pass);
  EXPECT_EQ(r.data["orders"][0]["order"], 216);
}
