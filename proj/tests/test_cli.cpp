#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "svf/cli.hpp"

namespace {

using json = nlohmann::ordered_json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = svf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(SVF_FIXTURES_DIR) + "/" + name; }

TEST(Cli, VerifySadowska) {
  const CliRun r = run({"verify", "sadowska", "--no-timing"});
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = r.report();
  EXPECT_EQ(j["status"], "pass");
  EXPECT_NEAR(j["map"]["c"][0].get<double>(), -2.0, 1e-9);
  EXPECT_NEAR(j["map"]["c"][1].get<double>(), 1.0, 1e-9);
  EXPECT_NEAR(j["map"]["d"][0].get<double>(), 1.0, 1e-9);
  EXPECT_NEAR(j["map"]["d"][1].get<double>(), -1.0, 1e-9);
  EXPECT_EQ(j["unique"], true);
  EXPECT_EQ(j["with_f4"], "infeasible");
  EXPECT_FALSE(j.contains("duration_ms"));
}

TEST(Cli, SolveSandwichFixture) {
  const CliRun r = run({"solve-sandwich", fixture("triangle_sandwich.json")});
  ASSERT_EQ(r.code, 0);
  const json j = r.report();
  EXPECT_NEAR(j["alpha"].get<double>(), 0.0, 1e-9);
  EXPECT_NEAR(j["beta"].get<double>(), 1.0, 1e-9);
  EXPECT_TRUE(j.contains("duration_ms"));
}

TEST(Cli, SingletonViolationExitsTwo) {
  const CliRun r = run({"check-cond2", fixture("singleton_violation.json"), "--combos"});
  ASSERT_EQ(r.code, 2);
  const json j = r.report();
  EXPECT_EQ(j["status"], "violation");
  EXPECT_EQ(j["witness"]["x"], 0.0);
  EXPECT_EQ(j["witness"]["y"], 2.0);
  EXPECT_EQ(j["witness"]["t"], 0.5);
}

TEST(Cli, RejectionFixtures) {
  for (const char* name : {"reject_unbounded.json", "reject_open_interval.json"}) {
    for (const char* cmd : {"validate", "solve-sandwich"}) {
      const CliRun r = run({cmd, fixture(name)});
      EXPECT_EQ(r.code, 1) << name;
      const json j = r.report();
      EXPECT_EQ(j["status"], "invalid");
      EXPECT_FALSE(j.contains("map"));
    }
  }
  const json j = run({"validate", fixture("reject_open_interval.json")}).report();
  EXPECT_EQ(j["violations"][0]["rule"], "domain must be a compact interval");
}

TEST(Cli, UsageErrors) {
  const CliRun unknown = run({"frobnicate", "x"});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_TRUE(unknown.out.empty());

  const CliRun flag = run({"validate", fixture("sadowska.json"), "--bogus"});
  EXPECT_EQ(flag.code, 1);
  EXPECT_NE(flag.err.find("Usage"), std::string::npos);

  const CliRun missing = run({"validate", "/nonexistent/file.json"});
  EXPECT_EQ(missing.code, 1);
}

TEST(Cli, ExitCodesPerOutcome) {
  EXPECT_EQ(run({"check-convex", "builtin:tetra_convex"}).code, 0);
  EXPECT_EQ(run({"check-convex", "builtin:sadowska", "--combos"}).code, 2);
  EXPECT_EQ(run({"check-cond1", "builtin:triangle_sandwich", "--grid", "4"}).code, 0);
  EXPECT_EQ(run({"solve-affine", "builtin:tetra_convex"}).code, 0);
  EXPECT_EQ(run({"transversal", "builtin:sadowska"}).code, 2);
  EXPECT_EQ(run({"transversal", "builtin:sadowska", "--at", "0,1,2,3"}).code, 0);
  EXPECT_EQ(run({"fixed-point", "builtin:singleton_violation"}).code, 1);
  const json fp = run({"fixed-point", fixture("halfstrip_fixed.json"), "--objective", "chebyshev"}).report();
  EXPECT_NEAR(fp["x_star"].get<double>(), 0.5, 1e-9);
}

TEST(Cli, EpsPrecedence) {
  ::setenv("SVF_EPS", "1e-6", 1);
  const json env = run({"validate", "builtin:sadowska"}).report();
  const json flag = run({"validate", "builtin:sadowska", "--eps", "1e-4"}).report();
  ::unsetenv("SVF_EPS");
  EXPECT_EQ(env["tolerances"]["eps"], 1e-6);
  EXPECT_EQ(flag["tolerances"]["eps"], 1e-4);
  EXPECT_EQ(run({"validate", "builtin:sadowska"}).report()["tolerances"]["eps"], 1e-9);
}

TEST(Cli, ReportKeyOrderAndDeterminism) {
  const CliRun a = run({"verify", "sadowska", "--no-timing", "--seed", "7"});
  const CliRun b = run({"verify", "sadowska", "--no-timing", "--seed", "7"});
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j.begin().key(), "command");
  EXPECT_EQ(j["tolerances"]["seed"], 7);
}

TEST(Cli, EmitPlot) {
  const std::string csv = ::testing::TempDir() + "halfstrip.csv";
  const std::string svg = ::testing::TempDir() + "halfstrip.svg";
  const CliRun r = run({"emit-plot", fixture("halfstrip_fixed.json"), "--with-selection", "--out", csv, "--svg", svg});
  ASSERT_EQ(r.code, 0) << r.out;
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,lower,upper,h\r");
  int rows = 0;
  while (std::getline(in, line)) {
    double x, lo, hi, h;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &lo, &hi, &h), 4);
    EXPECT_NEAR(h, 0.5 * x + 0.25, 1e-12);
    EXPECT_LE(lo, h);
    EXPECT_LE(h, hi);
    ++rows;
  }
  EXPECT_EQ(rows, 101);
  std::ifstream s(svg);
  std::stringstream ss;
  ss << s.rdbuf();
  EXPECT_NE(ss.str().find("<svg"), std::string::npos);
  EXPECT_NE(ss.str().find("data-series=\"h\""), std::string::npos);
}

TEST(Cli, EmitPlotWithoutMapHasThreeColumns) {
  const std::string csv = ::testing::TempDir() + "triangle.csv";
  ASSERT_EQ(run({"emit-plot", fixture("triangle_sandwich.json"), "--out", csv}).code, 0);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,lower,upper\r");
  EXPECT_EQ(run({"emit-plot", "builtin:sadowska", "--out", csv}).code, 1);
}

TEST(Cli, EmitPlotTriangleSelectionBetweenEnvelopes) {
  const std::string csv = ::testing::TempDir() + "triangle_h.csv";
  ASSERT_EQ(run({"emit-plot", fixture("triangle_sandwich.json"), "--with-selection", "--out", csv}).code, 0);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    double x, lo, hi, h;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &lo, &hi, &h), 4);
    EXPECT_DOUBLE_EQ(h, 1.0);
    EXPECT_LE(lo, 1.0);
    EXPECT_GE(hi, 1.0);
  }
}

}  // namespace
