#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pla_cli/cli.hpp"

namespace {

std::string data(const std::string& name) { return std::string(PLA_TEST_DATA_DIR) + "/" + name; }

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = pla::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

TEST(Check, PrNetworkAndFormula) {
  auto r = run({"check", "--net", data("pr.json"), "--formula", "am[R(y) : y : distinct]"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "ranks: P=0 R=1; aggregation-free: yes");
  EXPECT_NE(r.out.find("function rank: 1"), std::string::npos);
  EXPECT_NE(r.out.find("free variables: (none)"), std::string::npos);
}

TEST(Check, RemarkNetworkIsNotAggregationFree) {
  auto r = run({"check", "--net", data("remark.json")});
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("aggregation-free: no"), std::string::npos);
}

TEST(Check, FormulaFromFile) {
  auto r = run({"check", "--net", data("pr.json"), "--formula", data("average.formula"),
                "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["function_rank"], 1);
  EXPECT_EQ(j["ranks"]["R"], 1);
}

TEST(Check, DiagnosticsCarryLineAndColumn) {
  auto r = run({"check", "--net", data("bad_theta.json")});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("ParseError: 5:"), std::string::npos) << r.err;
  auto c = run({"check", "--net", data("cycle.json")});
  EXPECT_EQ(c.status, 1);
  EXPECT_NE(c.err.find("CycleDetected"), std::string::npos);
}

TEST(Infer, ExactSingleElement) {
  auto r = run({"infer", "exact", "--net", data("pr.json"), "--n", "1", "--formula", "R(x)",
                "--value-set", "1"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["probability"].get<double>(), 0.55, 1e-12);
  EXPECT_EQ(j["worlds"], 4);
}

TEST(Infer, WorldCapFromEnvironment) {
  ::setenv("PLA_WORLD_CAP", "8", 1);
  auto r = run({"infer", "exact", "--net", data("pr.json"), "--n", "2", "--formula", "R(x)"});
  ::unsetenv("PLA_WORLD_CAP");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("TooManyWorlds"), std::string::npos) << r.err;
}

TEST(Infer, MonteCarloNeedsSeedAndIsReproducible) {
  std::vector<std::string> base = {"infer", "mc", "--net", data("mixed.json"), "--n", "6",
                                   "--formula", "am[E(x,y) : y : distinct]", "--value-set",
                                   "0.3:1", "--samples", "500"};
  EXPECT_EQ(run(base).status, 2);
  auto with_seed = base;
  with_seed.insert(with_seed.end(), {"--seed", "11"});
  auto a = run(with_seed);
  auto b = run(with_seed);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Eliminate, AverageDocument) {
  auto r = run({"eliminate", "--net", data("pr.json"), "--formula", "am[R(y) : y : distinct]"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["output"], "0.55");
  EXPECT_EQ(j["checks"]["alpha_sums"], "pass");
  auto t = run({"eliminate", "--net", data("pr.json"), "--formula", "am[R(y) : y : distinct]",
                "--format", "text"});
  EXPECT_EQ(t.out, "0.55\n");
}

TEST(Eliminate, RejectsNetworksWithAggregation) {
  auto r = run({"eliminate", "--net", data("remark.json"), "--formula", "R(x)"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("NetworkHasAggregation"), std::string::npos);
}

TEST(Converge, RemarkNetworkFinalColumn) {
  auto r = run({"converge", "--net", data("remark.json"), "--formula", "max[R(x) : x : x=x]",
                "--n-grid", "50,100,200", "--value-set", "1", "--samples", "4000", "--seed", "3"});
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream in(r.out);
  std::string line, last;
  std::getline(in, line);
  EXPECT_EQ(line, "n,epsilon,p_exceed,ci_exceed,ci_value_set,p_value_set");
  while (std::getline(in, line)) last = line;
  const double p = std::stod(last.substr(last.rfind(',') + 1));
  EXPECT_NEAR(p, 1.0 - std::exp(-1.0), 0.04);
  EXPECT_EQ(last.substr(0, 4), "200,");
}

TEST(Converge, ByteIdenticalWithOneWorker) {
  std::vector<std::string> args = {"converge", "--net", data("pr.json"), "--formula",
                                   "am[R(y) : y : distinct]", "--n-grid", "10,40",
                                   "--samples", "300", "--seed", "9", "--workers", "1"};
  auto a = run(args);
  auto b = run(args);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')),
            "n,epsilon,p_exceed,ci_exceed,d_1,p_near_1,ci_1,ci_value_set,p_value_set");
}

TEST(Sample, WritesStructureDocument) {
  const auto path = std::filesystem::temp_directory_path() / "pla_cli_sample.json";
  auto r = run({"sample", "--net", data("pr.json"), "--n", "4", "--seed", "5", "--out", path.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  auto j = nlohmann::json::parse(ss.str());
  EXPECT_EQ(j["domain_size"], 4);
  auto again = run({"sample", "--net", data("pr.json"), "--n", "4", "--seed", "5"});
  EXPECT_EQ(again.out, ss.str());
  std::filesystem::remove(path);
}

TEST(Eval, OnStructureFile) {
  auto r = run({"eval", "--net", data("pr.json"), "--structure", data("two_points.json"),
                "--formula", "P(x) & !R(x)", "--format", "csv"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "x,value\n1,1\n2,0\n3,0\n");
  auto s = run({"eval", "--net", data("pr.json"), "--structure", data("two_points.json"),
                "--formula", "am[P(y) : y : distinct]"});
  ASSERT_EQ(s.status, 0) << s.err;
  auto j = nlohmann::json::parse(s.out);
  EXPECT_NEAR(j["values"][0]["value"].get<double>(), 2.0 / 3.0, 1e-15);
  auto at = run({"eval", "--net", data("pr.json"), "--structure", data("two_points.json"),
                 "--formula", "P(x)", "--at", "x=2"});
  EXPECT_EQ(nlohmann::json::parse(at.out)["values"][0]["value"], 0.0);
}

TEST(Admissible, NoisyOrCounterexample) {
  auto r = run({"admissible", "--function", "noisy-or", "--spectrum", "0:1", "--n-grid", "10000",
                "--seed", "1", "--samples", "3"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_NEAR(j["final_max_gap"].get<double>(), 1.0 - std::exp(-1.0), 0.01);
}

TEST(Admissible, AveragePassesOnRandomSpectra) {
  auto r = run({"admissible", "--function", "am", "--seed", "4", "--samples", "5"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["pass"].get<bool>());
}

TEST(Usage, Errors) {
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  EXPECT_EQ(run({"infer", "approx", "--net", data("pr.json"), "--n", "1", "--formula", "R(x)"}).status, 2);
  EXPECT_EQ(run({"eliminate", "--net", data("pr.json"), "--formula", "am[R(y) : y"}).status, 1);
  EXPECT_EQ(run({"--help"}).status, 0);
}

}  // namespace
