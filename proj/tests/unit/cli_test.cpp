#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "json.hpp"

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = entropia::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, ConstantsContainCTwo) {
  const Outcome o = run({"constants", "--n", "2..6"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("c_n,0.398942"), std::string::npos);
  EXPECT_NE(o.out.find("formula_id"), std::string::npos);
}

TEST(Cli, VerovicRow) {
  const Outcome o = run({"verovic", "--k", "2"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("c_bh,0.9306"), std::string::npos);
  EXPECT_NE(o.out.find("c_ht,0.8408"), std::string::npos);
}

TEST(Cli, CollapseIsByteIdentical) {
  const Outcome a = run({"collapse", "--steps", "8", "--seed", "3"});
  const Outcome b = run({"collapse", "--steps", "8", "--seed", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("gamma_times_vol_pow"), std::string::npos);
}

TEST(Cli, ConfigHashTracksSeed) {
  const auto hash_of = [](const std::string& text) { return text.substr(text.rfind(',') + 1); };
  const Outcome a = run({"constants", "--n", "2"});
  const Outcome b = run({"constants", "--n", "2", "--seed", "1"});
  const Outcome c = run({"--seed", "0", "constants", "--n", "2"});
  EXPECT_NE(hash_of(a.out), hash_of(b.out));
  EXPECT_EQ(hash_of(a.out), hash_of(c.out));
}

TEST(Cli, ThreadCapDoesNotChangeBytes) {
  setenv("ENTROPIA_THREADS", "1", 1);
  const Outcome a = run({"estimate", "--system", "cat", "--what", "htop", "--candidates", "4000"});
  setenv("ENTROPIA_THREADS", "4", 1);
  const Outcome b = run({"estimate", "--system", "cat", "--what", "htop", "--candidates", "4000"});
  unsetenv("ENTROPIA_THREADS");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, JsonMirrorsCsv) {
  const Outcome csv = run({"sl3"});
  const Outcome json = run({"sl3", "--format", "json"});
  ASSERT_EQ(json.code, 0);
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j.size(), 6u);
  EXPECT_NE(csv.out.find(j[0]["value"].get<std::string>()), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"constants", "--bogus"}).code, 1);
  EXPECT_EQ(run({"estimate", "--system", "hyperbolic", "--what", "gamma"}).code, 1);
  const Outcome rejected = run({"spectrum", "--vbar", "0.5", "--h", "1", "--n", "2", "--c", "0.5", "--format", "json"});
  EXPECT_EQ(rejected.code, 2);
  const auto j = nlohmann::json::parse(rejected.out);
  EXPECT_EQ(j["error"]["kind"], "TargetBelowRange");
  EXPECT_EQ(j["error"]["exit_code"], 2);
}

TEST(Cli, BodyFilesAndValidationFailures) {
  const std::string path = testing::TempDir() + "cli_body.json";
  {
    std::ofstream f(path);
    f << R"({"dim": 2, "radial": [)";
    for (int i = 0; i < 720; ++i) f << (i ? "," : "") << 1.0;
    f << "]}";
  }
  const Outcome ok = run({"bodies", "--body", path});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("sigma_upper"), std::string::npos);
  const Outcome sigma = run({"bounds", "--weyl-max", "0", "--sigma", "0.5", "--format", "json"});
  EXPECT_EQ(sigma.code, 2);
  EXPECT_EQ(nlohmann::json::parse(sigma.out)["error"]["kind"], "SigmaBelowOne");
  EXPECT_EQ(run({"bodies", "--tol.fit", "-0.5"}).code, 1);
  std::remove(path.c_str());
}

TEST(Cli, OutWritesFile) {
  const std::string path = testing::TempDir() + "cli_out.csv";
  const Outcome o = run({"constants", "--n", "2", "--out", path});
  EXPECT_EQ(o.code, 0);
  EXPECT_TRUE(o.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_NE(ss.str().find("c_n,0.398942"), std::string::npos);
  std::remove(path.c_str());
}

}  // namespace
