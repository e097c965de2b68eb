// Copyright 2026 The setsize Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "setsize/bench.h"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult RunCli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" SETSIZE_CLI "' " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path Scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("setsize_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CliTest, ListNamesEveryEstimator) {
  const auto r = RunCli("list");
  EXPECT_EQ(r.code, 0);
  for (const char* id : {"collision", "exact_recover", "interval_query_na",
                         "interval_sample_adaptive", "grid_sample_adaptive",
                         "cube_sample_adaptive", "unrestricted_adaptive"}) {
    EXPECT_NE(r.out.find(id), std::string::npos) << id;
  }
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(RunCli("").code, 2);
  EXPECT_EQ(RunCli("bench --n 100 --w 5").code, 2);
  EXPECT_EQ(RunCli("bench --estimator nope --n 100 --w 5").code, 2);
  EXPECT_EQ(RunCli("bench --estimator collision --n 100 --w 500").code, 2);
  EXPECT_EQ(RunCli("bench --estimator collision --n 100 --w 5 --eps 0").code, 2);
  EXPECT_EQ(RunCli("bench --estimator cube_sample_adaptive --n 100 --w 5").code, 2);
  EXPECT_EQ(RunCli("bench --estimator collision --n 100 --w 5 --format xml").code, 2);
  EXPECT_EQ(RunCli("verify --only 9").code, 2);
  EXPECT_EQ(RunCli("--help").code, 0);
}

TEST(CliTest, BenchWritesSummaryToStdout) {
  const auto r = RunCli("bench --estimator exact_recover --n 64 --w 0,3 --trials 2");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("estimator,n,w,epsilon,trials,", 0), 0u);
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 2);
}

TEST(CliTest, BenchOutputIsDeterministicAndLoadable) {
  const auto a = Scratch("a");
  const auto b = Scratch("b");
  const std::string args =
      "bench --estimator interval_sample_adaptive --n 4096 --w 1,64 "
      "--eps 0.5 --trials 5 --out ";
  ASSERT_EQ(RunCli(args + a.string(), "SETSIZE_SEED=9").code, 0);
  ASSERT_EQ(RunCli(args + b.string() + " --seed 9 --threads 3").code, 0);
  EXPECT_EQ(ReadFile(a / "reports.csv"), ReadFile(b / "reports.csv"));
  EXPECT_EQ(ReadFile(a / "summary.csv"), ReadFile(b / "summary.csv"));
  const auto reports = setsize::LoadReportsCsv(a / "reports.csv");
  ASSERT_EQ(reports.size(), 10u);
  EXPECT_EQ(reports[0].seed, setsize::TrialSeed(9, 0, 0));

  ASSERT_EQ(RunCli(args + b.string() + " --seed 10").code, 0);
  EXPECT_NE(ReadFile(a / "reports.csv"), ReadFile(b / "reports.csv"));
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST(CliTest, BenchJsonAndGridShape) {
  const auto dir = Scratch("json");
  const auto r = RunCli("bench --estimator grid_sample_adaptive --dims 16,16 "
                     "--w 10 --trials 2 --format json --out " + dir.string());
  ASSERT_EQ(r.code, 0);
  const std::string text = ReadFile(dir / "summary.json");
  EXPECT_NE(text.find("\"grid_sample_adaptive\""), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "reports.json"));
  std::filesystem::remove_all(dir);
}

TEST(CliTest, EstimateFromSetFile) {
  const auto dir = Scratch("estimate");
  const auto set = dir / "set.txt";
  std::ofstream(set) << "# n=100\n3\n17\n42\n99\n";
  auto r = RunCli("estimate --estimator exact_recover --set " + set.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("status ok"), std::string::npos);
  EXPECT_NE(r.out.find("estimate 4"), std::string::npos);
  EXPECT_NE(r.out.find("true_size 4"), std::string::npos);
  r = RunCli("estimate --estimator collision --json --set " + set.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"w\": 4"), std::string::npos);
  std::ofstream(set) << "# n=10\n11\n";
  EXPECT_EQ(RunCli("estimate --estimator collision --set " + set.string()).code, 2);
  EXPECT_EQ(RunCli("estimate --estimator collision --set /nonexistent").code, 2);
  std::filesystem::remove_all(dir);
}

TEST(CliTest, HardInstanceFiles) {
  const auto dir = Scratch("hard");
  const auto stem = (dir / "pair").string();
  auto r = RunCli("hard-instance interval-query --n 4096 --w-tilde 16 --seed 3 --out " + stem);
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(std::filesystem::exists(stem + ".s1.txt"));
  EXPECT_TRUE(std::filesystem::exists(stem + ".s2.txt"));
  EXPECT_TRUE(std::filesystem::exists(stem + ".meta.json"));
  const std::string first = ReadFile(stem + ".s1.txt");
  ASSERT_EQ(RunCli("hard-instance interval-query --n 4096 --w-tilde 16 --out " + stem,
                "SETSIZE_SEED=3").code, 0);
  EXPECT_EQ(ReadFile(stem + ".s1.txt"), first);
  r = RunCli("hard-instance mse --n 8 --w-tilde 5 --seed 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"positions\""), std::string::npos);
  EXPECT_EQ(RunCli("hard-instance bogus --n 8").code, 2);
  EXPECT_EQ(RunCli("hard-instance collision --n 8 --w-tilde 2").code, 2);
  std::filesystem::remove_all(dir);
}

TEST(CliTest, ConfigFile) {
  const auto dir = Scratch("config");
  const auto cfg = dir / "bench.toml";
  std::ofstream(cfg) << "[bench]\nestimator = \"exact_recover\"\nn = 32\n"
                        "w = [2, 4]\ntrials = 1\n";
  const auto r = RunCli("--config " + cfg.string() + " bench");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("exact_recover,32,4,"), std::string::npos);
  std::filesystem::remove_all(dir);
}

}  // namespace
