// Copyright 2026 The virtbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "virtbench/cli.hpp"

namespace virtbench {
namespace {

namespace fs = std::filesystem;

CliArgs parse(std::vector<std::string> args) {
  args.insert(args.begin(), "virtbench");
  return parse_args(args);
}

struct Invocation {
  int code;
  std::string out, err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "virtbench");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("virtbench_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(ParseArgs, IterationsAndDefaults) {
  auto a = parse({"--system", "native", "--iterations", "200"});
  EXPECT_EQ(a.system, sim::SystemMode::kNative);
  EXPECT_EQ(a.iterations, 200);
  EXPECT_EQ(a.warmup, 10);
  EXPECT_EQ(a.processes, 1);
  EXPECT_EQ(a.seed, 42u);
  EXPECT_FALSE(a.metrics);
  EXPECT_EQ(a.output_prefix(), fs::path("results/native-42"));
}

TEST(ParseArgs, LimitsAndTenants) {
  auto a = parse({"--system", "hami", "--memory-limit", "2048", "--compute-limit", "30", "--processes", "4"});
  auto c = a.run_config();
  EXPECT_EQ(c.system, sim::SystemMode::kHami);
  EXPECT_EQ(c.memory_limit_mb, 2048);
  EXPECT_EQ(c.compute_limit_percent, 30);
  EXPECT_EQ(c.tenants, 4);
}

TEST(ParseArgs, MetricList) {
  auto a = parse({"--system", "fcsp", "--metrics", "LLM-001,LLM-004"});
  ASSERT_TRUE(a.metrics);
  ASSERT_EQ(a.metrics->size(), 2u);
  EXPECT_EQ((*a.metrics)[1].str(), "LLM-004");
}

TEST(ParseArgs, UsageErrors) {
  EXPECT_THROW(parse({"--system", "bogus"}), UsageError);
  EXPECT_THROW(parse({}), UsageError);
  EXPECT_THROW(parse({"--system", "hami", "--iterations", "0"}), UsageError);
  EXPECT_THROW(parse({"--system", "hami", "--compute-limit", "120"}), UsageError);
  EXPECT_THROW(parse({"--system", "hami", "--frobnicate"}), UsageError);
  EXPECT_THROW(parse({"--system", "hami", "--metrics", "OH-1"}), UsageError);
  EXPECT_THROW(parse({"--system", "hami", "--metrics", "OH-099"}), UsageError);
  EXPECT_THROW(parse({"--system", "hami", "--iterations", "many"}), UsageError);
}

TEST(ParseArgs, MalformedAndUnknownIdsAreDistinguished) {
  try {
    parse_metric_list("OH-1");
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("malformed"), std::string::npos);
  }
  try {
    parse_metric_list("OH-099");
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown"), std::string::npos);
  }
}

TEST(Main, HelpAndUsageExitCodes) {
  auto help = run({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("--compute-limit"), std::string::npos);
  EXPECT_EQ(run({"--system", "bogus"}).code, kExitUsage);
}

TEST_F(CliFiles, HappyPathWritesThreeFiles) {
  auto prefix = dir_ / "hami";
  auto r = run({"--system", "hami", "--iterations", "20", "--warmup", "2", "--output", prefix.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* ext : {".json", ".csv", ".txt"}) EXPECT_TRUE(fs::exists(prefix.string() + ext)) << ext;
  EXPECT_NE(r.out.find("Grade:"), std::string::npos);
}

TEST_F(CliFiles, MissingCompareBaselineExitsTwo) {
  auto missing = dir_ / "missing.json";
  auto r = run({"--system", "native", "--metrics", "OH-001", "--compare", missing.string(), "--output",
                (dir_ / "x").string()});
  EXPECT_EQ(r.code, kExitRunError);
  EXPECT_NE(r.err.find(missing.string()), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "x.json"));
}

TEST_F(CliFiles, CompareAgainstEarlierRun) {
  auto base = dir_ / "base";
  ASSERT_EQ(run({"--system", "hami", "--metrics", "OH-001,OH-002", "--output", base.string()}).code, kExitOk);
  auto cur = dir_ / "cur";
  auto r = run({"--system", "fcsp", "--metrics", "OH-001,OH-002", "--compare", base.string() + ".json",
                "--output", cur.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto cmp = ojson::parse(slurp(cur.string() + ".compare.json"));
  EXPECT_EQ(cmp["baseline_system"], "hami");
  EXPECT_EQ(cmp["metrics"][0]["status"], "improved");
}

TEST_F(CliFiles, SameSeedTwiceIsIdentical) {
  auto a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(run({"--system", "hami", "--metrics", "OH-001", "--seed", "7", "--output", a.string()}).code, kExitOk);
  ASSERT_EQ(run({"--system", "hami", "--metrics", "OH-001", "--seed", "7", "--output", b.string()}).code, kExitOk);
  EXPECT_EQ(normalize_timestamp(slurp(a.string() + ".json")), normalize_timestamp(slurp(b.string() + ".json")));
  EXPECT_EQ(slurp(a.string() + ".csv"), slurp(b.string() + ".csv"));
}

TEST_F(CliFiles, CalibrationFileOverridesBaseline) {
  auto calib = dir_ / "override.calib";
  std::ofstream(calib) << "OH-001.mig_expected = 15.3\n";
  auto prefix = dir_ / "o";
  ASSERT_EQ(run({"--system", "hami", "--metrics", "OH-001", "--calibration", calib.string(), "--output",
                 prefix.string()}).code,
            kExitOk);
  auto j = ojson::parse(slurp(prefix.string() + ".json"));
  EXPECT_EQ(j["metrics"][0]["mig_comparison"]["mig_expected"].get<double>(), 15.3);

  std::ofstream(calib) << "OH-001.mig_expected = 1\nOH-001.mig_expected = 2\n";
  auto bad = run({"--system", "hami", "--metrics", "OH-001", "--calibration", calib.string(), "--output",
                  prefix.string()});
  EXPECT_EQ(bad.code, kExitRunError);
  EXPECT_NE(bad.err.find("duplicate"), std::string::npos);
}

}  // namespace
}  // namespace virtbench
