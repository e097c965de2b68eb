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

// Seeded trial batteries: run an estimator over a grid of (w, ε) cells,
// summarize each cell, and write CSV or JSON.

#ifndef SETSIZE_BENCH_H_
#define SETSIZE_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "setsize/calibration.h"
#include "setsize/domain.h"
#include "setsize/estimate.h"

namespace setsize {

struct BenchConfig {
  std::string estimator;
  // Defaults to the estimator's own family.
  std::optional<SubsetFamily> family;
  DomainShape shape = DomainShape::Line(1);
  std::vector<Index> ws;
  std::vector<double> epsilons;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  // Record wall time per trial (makes output machine dependent).
  bool timing = false;
  // Cross-check reported costs against recorded oracle transcripts.
  bool audit = false;
  Calibration calibration;
};

// Throws ConfigError on any inconsistency; called before any trial runs.
void ValidateBenchConfig(const BenchConfig& config);

struct TrialReport {
  std::string estimator;
  Index n = 0;
  Index w = 0;
  double epsilon = 0.0;
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  std::optional<double> estimate;  // present iff status == ok
  std::int64_t queries = 0;
  std::int64_t samples = 0;
  EstimateStatus status = EstimateStatus::kOk;
  // Within (1+ε), or exact recovery for exact estimators.
  bool success = false;
  std::optional<double> wall_ms;

  std::int64_t cost() const { return queries + samples; }
  bool operator==(const TrialReport&) const = default;
};

struct CellSummary {
  std::string estimator;
  Index n = 0;
  Index w = 0;
  double epsilon = 0.0;
  std::int64_t trials = 0;
  std::int64_t completed = 0;   // status ok
  std::int64_t successes = 0;
  double success_rate = 0.0;    // successes / completed
  double contract_rate = 0.0;   // successes / trials
  double median_cost = 0.0;
  double mean_cost = 0.0;
  double p95_cost = 0.0;
  double median_queries = 0.0;
  double median_samples = 0.0;
  std::int64_t failed = 0;
  std::int64_t capped = 0;
};

// Trial seed for (cell, trial) under the master seed.
std::uint64_t TrialSeed(std::uint64_t master, std::int64_t cell,
                        std::int64_t trial);

// A single trial: hidden set of size w drawn uniformly from the instance
// stream, oracle and estimator on their own streams.
TrialReport RunTrial(const BenchConfig& config, Index w, double epsilon,
                     std::int64_t trial, std::uint64_t seed);

// Reports ordered cell-major (w outer, ε inner), trial-minor.
std::vector<TrialReport> RunTrials(const BenchConfig& config);

// One summary per cell, in first-appearance order.
std::vector<CellSummary> Summarize(const std::vector<TrialReport>& reports);

// Median averages the two middle values; p95 is nearest-rank.
double Median(std::vector<double> values);
double NearestRankPercentile(std::vector<double> values, double percent);

enum class OutputFormat { kCsv, kJson };
OutputFormat ParseFormat(const std::string& name);

void WriteReportsCsv(std::ostream& out, const std::vector<TrialReport>& reports);
void WriteSummaryCsv(std::ostream& out, const std::vector<CellSummary>& cells);
void WriteReportsJson(std::ostream& out,
                      const std::vector<TrialReport>& reports);
void WriteSummaryJson(std::ostream& out, const std::vector<CellSummary>& cells);

// Writes reports.<ext> and summary.<ext> under `dir` (created if needed).
void EmitResults(const std::filesystem::path& dir, OutputFormat format,
                 const std::vector<TrialReport>& reports,
                 const std::vector<CellSummary>& cells);

// Reads a file written by WriteReportsCsv. Throws IoError.
std::vector<TrialReport> LoadReportsCsv(const std::filesystem::path& path);
std::vector<TrialReport> ParseReportsCsv(std::istream& in);

}  // namespace setsize

#endif  // SETSIZE_BENCH_H_
