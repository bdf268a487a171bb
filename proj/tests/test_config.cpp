#include <gtest/gtest.h>

#include <sstream>

#include "scatdesign/config.hpp"

using namespace scatdesign;

namespace {

ScatteringConfig parse(const std::string& text, const std::filesystem::path& base = {}) {
  std::istringstream in(text);
  return parse_config(in, base);
}

std::vector<std::string> issues_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

}  // namespace

TEST(Config, MinimalFileGetsDefaults) {
  const auto c = parse("k = 1\nR = 1\ntarget = preset:Y00\n");
  EXPECT_EQ(c.k, 1.0);
  EXPECT_EQ(c.L_max, 8);
  EXPECT_EQ(c.sphere_degree, 20);
  EXPECT_EQ(c.n_radial, 24);
  EXPECT_FALSE(c.delta.has_value());
  EXPECT_EQ(c.solver_tol, 1e-8);
  EXPECT_EQ(c.alpha.theta(), 0.0);
}

TEST(Config, SphereDegreeFollowsLmax) {
  EXPECT_EQ(parse("k = 1\nR = 1\ntarget = preset:Y00\nL_max = 3\n").sphere_degree, 10);
}

TEST(Config, NegativeWavenumberNamesKey) {
  const auto issues = issues_of("k = -1\nR = 1\ntarget = preset:Y00\n");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_NE(issues[0].find("k:"), std::string::npos);
}

TEST(Config, AllProblemsReportedAtOnce) {
  const auto issues = issues_of("k = abc\nR = 0\nbogus = 3\nk = 2\nsphere_degree = 4\n");
  // bad k, duplicate k, unknown key, missing target, R > 0, sphere_degree >= 2 L_max.
  EXPECT_GE(issues.size(), 6u);
  bool has_line = false;
  for (const auto& i : issues) has_line |= i.rfind("line 3:", 0) == 0;
  EXPECT_TRUE(has_line);
}

TEST(Config, ParsesVectorsListsAndFlags) {
  const auto c = parse(
      "k = 2  # wavenumber\nR = 0.5\ntarget = preset:Y21\nalpha = 0, 0.6, 0.8\ndelta = 0.03\n"
      "delta_sweep = 0.1, 0.05\nverify_tail = true\nexport_fields = yes\nmollify_width = 0.1\n");
  EXPECT_NEAR(c.alpha.cartesian()[1], 0.6, 1e-15);
  ASSERT_TRUE(c.delta.has_value());
  EXPECT_EQ(*c.delta, 0.03);
  ASSERT_EQ(c.delta_sweep.size(), 2u);
  EXPECT_TRUE(c.verify_tail);
  EXPECT_TRUE(c.export_fields);
}

TEST(Config, AutoDeltaAndNonUnitAlpha) {
  EXPECT_FALSE(parse("k = 1\nR = 1\ntarget = preset:Y00\ndelta = auto\n").delta.has_value());
  EXPECT_FALSE(issues_of("k = 1\nR = 1\ntarget = preset:Y00\nalpha = 1, 1, 0\n").empty());
}

TEST(Config, RelativePathsResolveAgainstConfigDirectory) {
  const auto c = parse("k = 1\nR = 1\ntarget = coeffs:f.txt\noutput_dir = out\n", "/data/run");
  EXPECT_EQ(c.target, "coeffs:/data/run/f.txt");
  EXPECT_EQ(c.output_dir, std::filesystem::path("/data/run/out"));
}

TEST(Config, UnknownPresetRejected) {
  EXPECT_FALSE(issues_of("k = 1\nR = 1\ntarget = preset:Y99\n").empty());
  EXPECT_FALSE(issues_of("k = 1\nR = 1\ntarget = Y00\n").empty());
}

TEST(Config, DeltaList) {
  EXPECT_EQ(parse_delta_list("0.1,0.05, 0.025").size(), 3u);
  EXPECT_THROW(parse_delta_list("0.1,-1"), ConfigError);
  EXPECT_THROW(parse_delta_list("x"), ConfigError);
}

TEST(Config, MissingFile) {
  EXPECT_THROW(load_config("/nonexistent/config.txt"), ConfigError);
}
