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
#include "setsize/bench.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

namespace setsize {
namespace {

const std::filesystem::path kFixtures =
    std::filesystem::path(SETSIZE_SOURCE_DIR) / "tests" / "fixtures";

BenchConfig GoldenConfig() {
  BenchConfig c;
  c.estimator = "interval_query_adaptive";
  c.shape = DomainShape::Line(256);
  c.ws = {0, 1, 5, 40};
  c.epsilons = {0.5, 1.0};
  c.trials = 3;
  c.seed = 42;
  return c;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TrialReport Report(Index w, std::int64_t queries, std::int64_t samples,
                   EstimateStatus status, bool success) {
  TrialReport r{.estimator = "x", .n = 100, .w = w, .epsilon = 0.5,
                .queries = queries, .samples = samples, .status = status,
                .success = success};
  if (status == EstimateStatus::kOk) r.estimate = 1.0;
  return r;
}

TEST(ValidateBenchConfigTest, RejectsBadConfigs) {
  EXPECT_NO_THROW(ValidateBenchConfig(GoldenConfig()));
  auto c = GoldenConfig();
  c.ws.clear();
  EXPECT_THROW(ValidateBenchConfig(c), ConfigError);
  c = GoldenConfig();
  c.ws = {257};
  EXPECT_THROW(ValidateBenchConfig(c), ConfigError);
  c = GoldenConfig();
  c.epsilons = {0.0};
  EXPECT_THROW(ValidateBenchConfig(c), ConfigError);
  c.epsilons = {1.5};
  EXPECT_THROW(ValidateBenchConfig(c), ConfigError);
  c = GoldenConfig();
  c.trials = 0;
  EXPECT_THROW(ValidateBenchConfig(c), ConfigError);
  c = GoldenConfig();
  c.estimator = "unknown";
  EXPECT_THROW(ValidateBenchConfig(c), ConfigError);
  c = GoldenConfig();
  c.estimator = "cube_sample_adaptive";
  EXPECT_THROW(ValidateBenchConfig(c), ConfigError);
  c = GoldenConfig();
  c.family = SubsetFamily::kUniverseOnly;
  EXPECT_THROW(ValidateBenchConfig(c), ConfigError);
  EXPECT_THROW(RunTrials(c), ConfigError);
}

TEST(TrialSeedTest, DistinctAcrossCellsAndTrials) {
  std::set<std::uint64_t> seeds;
  for (int cell = 0; cell < 50; ++cell) {
    for (int t = 0; t < 50; ++t) seeds.insert(TrialSeed(7, cell, t));
  }
  EXPECT_EQ(seeds.size(), 2500u);
  EXPECT_NE(TrialSeed(7, 0, 0), TrialSeed(8, 0, 0));
}

TEST(RunTrialsTest, ExactRecoverySingleTrial) {
  BenchConfig c;
  c.estimator = "exact_recover";
  c.shape = DomainShape::Line(1024);
  c.ws = {17};
  c.epsilons = {1.0};
  const auto reports = RunTrials(c);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].status, EstimateStatus::kOk);
  EXPECT_TRUE(reports[0].success);
  EXPECT_EQ(reports[0].estimate, 17.0);
  EXPECT_FALSE(reports[0].wall_ms.has_value());
}

TEST(RunTrialsTest, OrderAndSeeds) {
  const auto c = GoldenConfig();
  const auto reports = RunTrials(c);
  ASSERT_EQ(reports.size(), 4u * 2 * 3);
  std::size_t k = 0;
  for (std::size_t wi = 0; wi < c.ws.size(); ++wi) {
    for (std::size_t ei = 0; ei < c.epsilons.size(); ++ei) {
      for (std::int64_t t = 0; t < c.trials; ++t, ++k) {
        EXPECT_EQ(reports[k].w, c.ws[wi]);
        EXPECT_EQ(reports[k].epsilon, c.epsilons[ei]);
        EXPECT_EQ(reports[k].trial, t);
        EXPECT_EQ(reports[k].seed,
                  TrialSeed(c.seed, static_cast<std::int64_t>(wi * 2 + ei), t));
      }
    }
  }
}

TEST(RunTrialsTest, ThreadCountDoesNotChangeReports) {
  auto c = GoldenConfig();
  c.estimator = "interval_sample_adaptive";
  c.trials = 20;
  const auto serial = RunTrials(c);
  c.threads = 4;
  EXPECT_EQ(RunTrials(c), serial);
  EXPECT_EQ(RunTrials(c), serial);
}

TEST(RunTrialsTest, AuditAgreesWithTallies) {
  for (const char* id : {"collision", "interval_sample_na",
                         "unrestricted_adaptive"}) {
    auto c = GoldenConfig();
    c.estimator = id;
    c.audit = true;
    EXPECT_NO_THROW(RunTrials(c)) << id;
  }
}

TEST(RunTrialsTest, TimingIsOptIn) {
  auto c = GoldenConfig();
  c.timing = true;
  for (const auto& r : RunTrials(c)) EXPECT_TRUE(r.wall_ms.has_value());
}

TEST(RunTrialsTest, CollisionCellMeetsContract) {
  BenchConfig c;
  c.estimator = "collision";
  c.shape = DomainShape::Line(1 << 16);
  c.ws = {256};
  c.epsilons = {0.5};
  c.trials = 500;
  c.seed = 2;
  const auto cells = Summarize(RunTrials(c));
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_GE(cells[0].success_rate, 0.66);
}

TEST(SummarizeTest, SingleReport) {
  const auto cells = Summarize({Report(3, 7, 2, EstimateStatus::kOk, true)});
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].median_cost, 9.0);
  EXPECT_EQ(cells[0].mean_cost, 9.0);
  EXPECT_EQ(cells[0].p95_cost, 9.0);
  EXPECT_EQ(cells[0].success_rate, 1.0);
}

// Costs 10, 20, ..., 80 with two failures and one cap.
TEST(SummarizeTest, HandComputedFixture) {
  std::vector<TrialReport> reports;
  for (int k = 1; k <= 8; ++k) {
    EstimateStatus status = EstimateStatus::kOk;
    if (k == 2 || k == 5) status = EstimateStatus::kFailed;
    if (k == 8) status = EstimateStatus::kCapExceeded;
    const bool success = status == EstimateStatus::kOk && k != 3;
    reports.push_back(Report(4, 10 * k - k, k, status, success));
  }
  reports.push_back(Report(9, 1, 0, EstimateStatus::kOk, true));
  const auto cells = Summarize(reports);
  ASSERT_EQ(cells.size(), 2u);
  const CellSummary& c = cells[0];
  EXPECT_EQ(c.w, 4);
  EXPECT_EQ(c.trials, 8);
  EXPECT_EQ(c.completed, 5);
  EXPECT_EQ(c.successes, 4);
  EXPECT_EQ(c.failed, 2);
  EXPECT_EQ(c.capped, 1);
  EXPECT_DOUBLE_EQ(c.success_rate, 0.8);
  EXPECT_DOUBLE_EQ(c.contract_rate, 0.5);
  EXPECT_DOUBLE_EQ(c.median_cost, 45.0);
  EXPECT_DOUBLE_EQ(c.mean_cost, 45.0);
  EXPECT_DOUBLE_EQ(c.p95_cost, 80.0);
  EXPECT_DOUBLE_EQ(c.median_queries, 40.5);
  EXPECT_DOUBLE_EQ(c.median_samples, 4.5);
  EXPECT_EQ(cells[1].w, 9);
}

TEST(SummarizeTest, PercentileHelpers) {
  EXPECT_EQ(Median({}), 0.0);
  EXPECT_EQ(Median({3, 1, 2}), 2.0);
  EXPECT_EQ(Median({4, 1, 2, 3}), 2.5);
  std::vector<double> v;
  for (int k = 1; k <= 20; ++k) v.push_back(k);
  EXPECT_EQ(NearestRankPercentile(v, 95), 19.0);
  EXPECT_EQ(NearestRankPercentile(v, 25), 5.0);
  EXPECT_EQ(NearestRankPercentile(v, 100), 20.0);
  EXPECT_EQ(NearestRankPercentile(v, 0), 1.0);
}

TEST(ReportsCsvTest, RoundTrip) {
  auto c = GoldenConfig();
  c.estimator = "interval_sample_adaptive";
  c.timing = true;
  const auto reports = RunTrials(c);
  std::stringstream buf;
  WriteReportsCsv(buf, reports);
  EXPECT_EQ(ParseReportsCsv(buf), reports);
}

TEST(ReportsCsvTest, MalformedInput) {
  std::istringstream no_header("x,y\n");
  EXPECT_THROW(ParseReportsCsv(no_header), IoError);
  std::ostringstream good;
  WriteReportsCsv(good, {});
  std::istringstream short_row(good.str() + "a,1,2\n");
  EXPECT_THROW(ParseReportsCsv(short_row), IoError);
  std::istringstream bad_status(good.str() +
                                "a,1,1,0.5,0,1,1,1,0,maybe,1,\n");
  EXPECT_THROW(ParseReportsCsv(bad_status), IoError);
  EXPECT_THROW(LoadReportsCsv("/nonexistent/reports.csv"), IoError);
}

TEST(EmitResultsTest, GoldenFiles) {
  const auto reports = RunTrials(GoldenConfig());
  const auto cells = Summarize(reports);
  const auto dir = std::filesystem::temp_directory_path() / "setsize_golden";
  std::filesystem::remove_all(dir);
  EmitResults(dir, OutputFormat::kCsv, reports, cells);
  EXPECT_EQ(ReadFile(dir / "reports.csv"),
            ReadFile(kFixtures / "golden_reports.csv"));
  EXPECT_EQ(ReadFile(dir / "summary.csv"),
            ReadFile(kFixtures / "golden_summary.csv"));
  EmitResults(dir, OutputFormat::kJson, reports, cells);
  EXPECT_TRUE(std::filesystem::exists(dir / "reports.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.json"));
  EXPECT_EQ(LoadReportsCsv(dir / "reports.csv"), reports);
  std::filesystem::remove_all(dir);
}

TEST(ParseFormatTest, Names) {
  EXPECT_EQ(ParseFormat("csv"), OutputFormat::kCsv);
  EXPECT_EQ(ParseFormat("json"), OutputFormat::kJson);
  EXPECT_THROW(ParseFormat("xml"), ConfigError);
}

}  // namespace
}  // namespace setsize
