#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polymc/errors.hpp"
#include "polymc/graph_io.hpp"
#include "polymc_cli/cli.hpp"

namespace polymc::cli {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(POLYMC_TEST_DATA) + "/" + name; }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("polymc_cli_" + name);
}

/// Sets an environment variable for one scope.
class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

TEST(Oracle, PathHardcorePrintsFive) {
  const auto r = run({"oracle", "--graph", data("p3.g"), "--lambda", "1", "hardcore"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("Z = 5\n", 0), 0u) << r.out;
}

TEST(Oracle, PottsAndPolymerTargets) {
  const auto potts = run({"oracle", "--graph", data("k2.g"), "--q", "3", "--beta", "0", "potts", "--out", "json"});
  ASSERT_EQ(potts.code, kExitOk) << potts.err;
  EXPECT_DOUBLE_EQ(Json::parse(potts.out)["outputs"]["Z"].get<double>(), 9.0);
  const auto poly = run({"oracle", "--graph", data("p3.g"), "--model", "monomer", "--lambda", "1", "polymer",
                         "--out", "json"});
  ASSERT_EQ(poly.code, kExitOk) << poly.err;
  EXPECT_DOUBLE_EQ(Json::parse(poly.out)["outputs"]["Z"].get<double>(), 5.0);
}

TEST(CountPotts, RepeatedRunsAreIdentical) {
  const std::vector<std::string> args{"count-potts", "--graph", data("k2.g"), "--q", "2", "--beta", "5",
                                      "--epsilon", "0.2", "--seed", "1"};
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("log_z_hat = "), std::string::npos);
}

TEST(CheckConditions, BelowThresholdListsViolationsButSucceeds) {
  const auto r = run({"check-conditions", "--graph", data("c4.g"), "--model", "potts", "--q", "2", "--beta", "1",
                      "--alpha", "1", "--kmax", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("sampling.violation_count = 8"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("sampling.violations[0] = "), std::string::npos);
}

TEST(Strict, HypothesisFailureExitsFour) {
  const auto r = run({"check-conditions", "--graph", data("c4.g"), "--model", "potts", "--q", "2", "--beta", "1",
                      "--alpha", "1", "--strict"});
  EXPECT_EQ(r.code, kExitStrict);
  const auto ok = run({"check-expansion", "--graph", data("k33.g"), "--kind", "vertex", "--alpha", "0.5",
                       "--strict"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
}

TEST(Usage, ErrorsExitTwo) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"no-such-command"}).code, kExitUsage);
  EXPECT_EQ(run({"oracle", "--graph", data("p3.g")}).code, kExitUsage);
  EXPECT_EQ(run({"oracle", "--graph", data("p3.g"), "--bogus", "hardcore"}).code, kExitUsage);
  EXPECT_EQ(run({"oracle", "--graph", data("p3.g"), "--out", "yaml", "hardcore"}).code, kExitUsage);
  EXPECT_EQ(run({"oracle", "--graph", data("p3.g"), "--seed", "x", "hardcore"}).code, kExitUsage);
}

TEST(Validation, ErrorsExitThree) {
  EXPECT_EQ(run({"oracle", "--graph", data("self_loop.g"), "hardcore"}).code, kExitValidation);
  EXPECT_EQ(run({"oracle", "--graph", data("missing.g"), "hardcore"}).code, kExitValidation);
  EXPECT_EQ(run({"oracle", "hardcore"}).code, kExitValidation);
  EXPECT_EQ(run({"polymer-sample", "--graph", data("p3.g"), "--model", "monomer", "--lambda", "0.01", "--tau", "abc"})
                .code,
            kExitValidation);
  EXPECT_EQ(run({"polymer-sample", "--graph", data("p3.g"), "--model", "ising"}).code, kExitValidation);
  EXPECT_EQ(run({"count-potts", "--graph", data("k2.g"), "--epsilon", "1.5"}).code, kExitValidation);
}

TEST(Records, JsonRoundTripAndReplay) {
  const auto r = run({"polymer-sample", "--graph", data("c4.g"), "--model", "potts", "--q", "2", "--beta", "5",
                      "--alpha", "1", "--seed", "3", "--out", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  const RunRecord back = RunRecord::from_json(j);
  EXPECT_EQ(back.to_json(), j);
  EXPECT_TRUE(same_run(execute(back.params).to_json(), j));

  const auto path = temp_file("record.json");
  std::ofstream(path) << r.out;
  const auto replayed = run({"replay", "--record", path.string()});
  EXPECT_EQ(replayed.code, kExitOk) << replayed.err;

  Json tampered = j;
  tampered["outputs"]["log_weight"] = 123.0;
  std::ofstream(path) << tampered.dump();
  EXPECT_EQ(run({"replay", "--record", path.string()}).code, kExitMismatch);

  tampered = j;
  tampered["schema_version"] = kSchemaVersion + 1;
  std::ofstream(path) << tampered.dump();
  EXPECT_EQ(run({"replay", "--record", path.string()}).code, kExitValidation);
  std::filesystem::remove(path);
}

TEST(Records, SameRunIgnoresOnlyWallTime) {
  Json a{{"command", "x"}, {"wall_time_s", 1.0}, {"outputs", {{"v", 1}}}};
  Json b = a;
  b["wall_time_s"] = 2.0;
  EXPECT_TRUE(same_run(a, b));
  b["outputs"]["v"] = 2;
  EXPECT_FALSE(same_run(a, b));
}

TEST(Records, ParamsRoundTrip) {
  Params p;
  p.command = "glauber";
  p.cap = 3;
  p.delta = 0.1;
  p.tau = "auto";
  p.steps = 77;
  const Params back = params_from_json(params_to_json(p));
  EXPECT_EQ(params_to_json(back), params_to_json(p));
  EXPECT_THROW(params_from_json(Json{{"seed", "abc"}}), ParseError);
}

TEST(Threads, DoNotChangeEstimates) {
  std::vector<std::string> args{"anneal-count", "--graph", data("p3.g"), "--model", "monomer", "--lambda",
                                "0.05", "--epsilon", "0.3", "--seed", "5", "--out", "json"};
  const auto one = run(args);
  args.insert(args.end(), {"--threads", "3"});
  const auto three = run(args);
  ASSERT_EQ(one.code, kExitOk) << one.err;
  EXPECT_EQ(Json::parse(one.out)["outputs"], Json::parse(three.out)["outputs"]);
}

TEST(Env, BudgetOverrides) {
  {
    ScopedEnv env("POLYMC_STATE_BUDGET", "2");
    EXPECT_EQ(run({"oracle", "--graph", data("p3.g"), "--model", "monomer", "--lambda", "1", "polymer"}).code,
              kExitValidation);
  }
  {
    ScopedEnv env("POLYMC_GLAUBER_CEILING", "10");
    const std::vector<std::string> args{"glauber", "--graph", data("c4.g"), "--model", "potts", "--q", "2",
                                        "--beta", "1", "--cap", "2"};
    EXPECT_EQ(run(args).code, kExitValidation);
    auto with_steps = args;
    with_steps.insert(with_steps.end(), {"--steps", "100"});
    EXPECT_EQ(run(with_steps).code, kExitOk);
  }
  {
    ScopedEnv env("POLYMC_ENUM_BUDGET", "zero");
    EXPECT_EQ(run({"oracle", "--graph", data("p3.g"), "--lambda", "1", "hardcore"}).code, kExitValidation);
  }
}

TEST(GenGraph, DeterministicAndLoadable) {
  const std::vector<std::string> args{"gen-graph", "--n-per-side", "6", "--degree", "3", "--seed", "4"};
  const auto a = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, run(args).out);
  const HostGraph g = parse_graph_string(a.out);
  EXPECT_EQ(g.size(), 12u);
  EXPECT_EQ(g.max_degree(), 3u);
  EXPECT_TRUE(g.is_bipartite());

  const auto path = temp_file("gen.g");
  auto write = args;
  write.insert(write.end(), {"--write", path.string()});
  ASSERT_EQ(run(write).code, kExitOk);
  EXPECT_EQ(load_graph(path), g);
  std::filesystem::remove(path);
}

TEST(Hardcore, AutoTauRunsOnSmallFugacity) {
  const auto r = run({"sample-hardcore", "--graph", data("c4.g"), "--lambda", "50", "--tau", "auto",
                      "--count-epsilon", "0.1", "--count-delta", "0.5", "--seed", "4", "--out", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j["hypotheses"]["threshold_met"].get<bool>());
  const auto set = j["outputs"]["set"].get<std::vector<Vertex>>();
  const HostGraph g = load_graph(data("c4.g"));
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) EXPECT_FALSE(g.has_edge(set[a], set[b]));
  }
  // Without the override the claimed τ = α ln λ leaves no positive size-draw rate.
  EXPECT_EQ(run({"count-hardcore", "--graph", data("c4.g"), "--lambda", "50"}).code, kExitValidation);
}

}  // namespace
}  // namespace polymc::cli
