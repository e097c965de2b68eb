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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "setsize/hard_instances.h"
#include "setsize/oracle.h"
#include "setsize/registry.h"

namespace setsize {
namespace {

constexpr const char* kReportHeader =
    "estimator,n,w,epsilon,trial,seed,estimate,queries,samples,status,"
    "success,wall_ms";
constexpr const char* kSummaryHeader =
    "estimator,n,w,epsilon,trials,completed,successes,success_rate,"
    "contract_rate,median_cost,mean_cost,p95_cost,median_queries,"
    "median_samples,failed,capped";

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
T ParseNumber(std::string_view field, std::size_t line) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw IoError("reports CSV line " + std::to_string(line) + ": bad number '" +
                  std::string(field) + "'");
  }
  return value;
}

EstimateStatus ParseStatus(std::string_view name, std::size_t line) {
  for (auto s : {EstimateStatus::kOk, EstimateStatus::kFailed,
                 EstimateStatus::kCapExceeded}) {
    if (StatusName(s) == name) return s;
  }
  throw IoError("reports CSV line " + std::to_string(line) + ": bad status '" +
                std::string(name) + "'");
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

nlohmann::ordered_json OptionalNumber(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

void Audit(const OracleSession& session, const Estimate& result) {
  std::int64_t queries = 0;
  std::int64_t samples = 0;
  for (const TranscriptEntry& e : session.tally().transcript) {
    (e.call == OracleCall::kQuery ? queries : samples) += 1;
  }
  if (queries != session.tally().queries || samples != session.tally().samples ||
      queries != result.queries || samples != result.samples) {
    throw Error("cost accounting mismatch between transcript and report");
  }
}

}  // namespace

void ValidateBenchConfig(const BenchConfig& config) {
  const EstimatorInfo& info = FindEstimator(config.estimator);
  CheckCompatible(info, config.shape, config.family.value_or(info.family));
  if (config.ws.empty()) throw ConfigError("no w values given");
  if (config.epsilons.empty()) throw ConfigError("no epsilon values given");
  if (config.trials < 1) throw ConfigError("trials must be at least 1");
  if (config.threads < 1) throw ConfigError("threads must be at least 1");
  for (Index w : config.ws) {
    if (w < 0 || w > config.shape.size()) {
      throw ConfigError("w = " + std::to_string(w) + " outside [0, n = " +
                        std::to_string(config.shape.size()) + "]");
    }
  }
  for (double eps : config.epsilons) {
    if (!(eps > 0.0 && eps <= 1.0)) {
      throw ConfigError("epsilon must lie in (0, 1], got " + FormatDouble(eps));
    }
  }
}

std::uint64_t TrialSeed(std::uint64_t master, std::int64_t cell,
                        std::int64_t trial) {
  return DeriveSeed(DeriveSeed(master, static_cast<std::uint64_t>(cell)),
                    static_cast<std::uint64_t>(trial));
}

TrialReport RunTrial(const BenchConfig& config, Index w, double epsilon,
                     std::int64_t trial, std::uint64_t seed) {
  const EstimatorInfo& info = FindEstimator(config.estimator);
  const Index n = config.shape.size();
  Rng instance_rng(DeriveSeed(seed, StreamTag::kInstance));
  HiddenSet hidden(UniformSubset(n, w, instance_rng), n);
  const std::vector<Index> truth(hidden.elements().begin(),
                                 hidden.elements().end());
  OracleSession session(config.shape, std::move(hidden),
                        config.family.value_or(info.family),
                        DeriveSeed(seed, StreamTag::kOracle));
  session.set_recording(config.audit);
  Rng estimator_rng(DeriveSeed(seed, StreamTag::kEstimator));

  const auto start = std::chrono::steady_clock::now();
  const Estimate result =
      info.run(session, epsilon, config.calibration, estimator_rng);
  const auto stop = std::chrono::steady_clock::now();
  if (config.audit) Audit(session, result);

  TrialReport report{.estimator = config.estimator,
                     .n = n,
                     .w = w,
                     .epsilon = epsilon,
                     .trial = trial,
                     .seed = seed,
                     .queries = result.queries,
                     .samples = result.samples,
                     .status = result.status};
  if (result.ok()) {
    report.estimate = result.value;
    report.success = info.exact
                         ? (result.recovered && *result.recovered == truth)
                         : WithinFactor(result.value, static_cast<double>(w),
                                        epsilon);
  }
  if (config.timing) {
    report.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
  }
  return report;
}

std::vector<TrialReport> RunTrials(const BenchConfig& config) {
  ValidateBenchConfig(config);
  struct Job {
    Index w;
    double epsilon;
    std::int64_t cell;
    std::int64_t trial;
  };
  std::vector<Job> jobs;
  std::int64_t cell = 0;
  for (Index w : config.ws) {
    for (double eps : config.epsilons) {
      for (std::int64_t t = 0; t < config.trials; ++t) {
        jobs.push_back({w, eps, cell, t});
      }
      ++cell;
    }
  }
  std::vector<TrialReport> reports(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const Job& job = jobs[k];
      try {
        reports[k] = RunTrial(config, job.w, job.epsilon, job.trial,
                              TrialSeed(config.seed, job.cell, job.trial));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(jobs.size());
      }
    }
  };
  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return reports;
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size();
  return k % 2 ? values[k / 2] : 0.5 * (values[k / 2 - 1] + values[k / 2]);
}

double NearestRankPercentile(std::vector<double> values, double percent) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(percent / 100.0 * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

std::vector<CellSummary> Summarize(const std::vector<TrialReport>& reports) {
  std::vector<CellSummary> cells;
  std::vector<std::vector<const TrialReport*>> members;
  for (const TrialReport& r : reports) {
    auto it = std::find_if(cells.begin(), cells.end(), [&](const CellSummary& c) {
      return c.estimator == r.estimator && c.n == r.n && c.w == r.w &&
             c.epsilon == r.epsilon;
    });
    if (it == cells.end()) {
      cells.push_back(
          CellSummary{.estimator = r.estimator, .n = r.n, .w = r.w, .epsilon = r.epsilon});
      members.emplace_back();
      it = cells.end() - 1;
    }
    members[it - cells.begin()].push_back(&r);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CellSummary& c = cells[i];
    std::vector<double> cost, queries, samples;
    double total = 0.0;
    for (const TrialReport* r : members[i]) {
      ++c.trials;
      c.completed += r->status == EstimateStatus::kOk;
      c.successes += r->success;
      c.failed += r->status == EstimateStatus::kFailed;
      c.capped += r->status == EstimateStatus::kCapExceeded;
      cost.push_back(static_cast<double>(r->cost()));
      queries.push_back(static_cast<double>(r->queries));
      samples.push_back(static_cast<double>(r->samples));
      total += static_cast<double>(r->cost());
    }
    c.success_rate = c.completed ? static_cast<double>(c.successes) / c.completed : 0.0;
    c.contract_rate = static_cast<double>(c.successes) / c.trials;
    c.mean_cost = total / c.trials;
    c.median_cost = Median(cost);
    c.p95_cost = NearestRankPercentile(cost, 95.0);
    c.median_queries = Median(queries);
    c.median_samples = Median(samples);
  }
  return cells;
}

OutputFormat ParseFormat(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ConfigError("unknown format '" + name + "' (expected csv or json)");
}

void WriteReportsCsv(std::ostream& out, const std::vector<TrialReport>& reports) {
  out << kReportHeader << '\n';
  for (const TrialReport& r : reports) {
    out << r.estimator << ',' << r.n << ',' << r.w << ',' << FormatDouble(r.epsilon)
        << ',' << r.trial << ',' << r.seed << ','
        << (r.estimate ? FormatDouble(*r.estimate) : "") << ',' << r.queries
        << ',' << r.samples << ',' << StatusName(r.status) << ','
        << (r.success ? 1 : 0) << ','
        << (r.wall_ms ? FormatDouble(*r.wall_ms) : "") << '\n';
  }
}

void WriteSummaryCsv(std::ostream& out, const std::vector<CellSummary>& cells) {
  out << kSummaryHeader << '\n';
  for (const CellSummary& c : cells) {
    out << c.estimator << ',' << c.n << ',' << c.w << ',' << FormatDouble(c.epsilon)
        << ',' << c.trials << ',' << c.completed << ',' << c.successes << ','
        << FormatDouble(c.success_rate) << ',' << FormatDouble(c.contract_rate)
        << ',' << FormatDouble(c.median_cost) << ',' << FormatDouble(c.mean_cost)
        << ',' << FormatDouble(c.p95_cost) << ','
        << FormatDouble(c.median_queries) << ','
        << FormatDouble(c.median_samples) << ',' << c.failed << ',' << c.capped
        << '\n';
  }
}

void WriteReportsJson(std::ostream& out,
                      const std::vector<TrialReport>& reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const TrialReport& r : reports) {
    doc.push_back({{"estimator", r.estimator},
                   {"n", r.n},
                   {"w", r.w},
                   {"epsilon", r.epsilon},
                   {"trial", r.trial},
                   {"seed", r.seed},
                   {"estimate", OptionalNumber(r.estimate)},
                   {"queries", r.queries},
                   {"samples", r.samples},
                   {"status", StatusName(r.status)},
                   {"success", r.success},
                   {"wall_ms", OptionalNumber(r.wall_ms)}});
  }
  out << doc.dump(2) << '\n';
}

void WriteSummaryJson(std::ostream& out, const std::vector<CellSummary>& cells) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const CellSummary& c : cells) {
    doc.push_back({{"estimator", c.estimator},
                   {"n", c.n},
                   {"w", c.w},
                   {"epsilon", c.epsilon},
                   {"trials", c.trials},
                   {"completed", c.completed},
                   {"successes", c.successes},
                   {"success_rate", c.success_rate},
                   {"contract_rate", c.contract_rate},
                   {"median_cost", c.median_cost},
                   {"mean_cost", c.mean_cost},
                   {"p95_cost", c.p95_cost},
                   {"median_queries", c.median_queries},
                   {"median_samples", c.median_samples},
                   {"failed", c.failed},
                   {"capped", c.capped}});
  }
  out << doc.dump(2) << '\n';
}

void EmitResults(const std::filesystem::path& dir, OutputFormat format,
                 const std::vector<TrialReport>& reports,
                 const std::vector<CellSummary>& cells) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const std::string ext = format == OutputFormat::kCsv ? ".csv" : ".json";
  auto write = [&](const std::string& name, auto&& body) {
    const std::filesystem::path path = dir / (name + ext);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    body(out);
    if (!out) throw IoError("write failed: " + path.string());
  };
  write("reports", [&](std::ostream& out) {
    format == OutputFormat::kCsv ? WriteReportsCsv(out, reports)
                                 : WriteReportsJson(out, reports);
  });
  write("summary", [&](std::ostream& out) {
    format == OutputFormat::kCsv ? WriteSummaryCsv(out, cells)
                                 : WriteSummaryJson(out, cells);
  });
}

std::vector<TrialReport> ParseReportsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kReportHeader) {
    throw IoError("reports CSV: missing or unexpected header");
  }
  std::vector<TrialReport> reports;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = SplitCommas(line);
    if (f.size() != 12) {
      throw IoError("reports CSV line " + std::to_string(number) +
                    ": expected 12 fields");
    }
    TrialReport r;
    r.estimator = std::string(f[0]);
    r.n = ParseNumber<Index>(f[1], number);
    r.w = ParseNumber<Index>(f[2], number);
    r.epsilon = ParseNumber<double>(f[3], number);
    r.trial = ParseNumber<std::int64_t>(f[4], number);
    r.seed = ParseNumber<std::uint64_t>(f[5], number);
    if (!f[6].empty()) r.estimate = ParseNumber<double>(f[6], number);
    r.queries = ParseNumber<std::int64_t>(f[7], number);
    r.samples = ParseNumber<std::int64_t>(f[8], number);
    r.status = ParseStatus(f[9], number);
    r.success = ParseNumber<int>(f[10], number) != 0;
    if (!f[11].empty()) r.wall_ms = ParseNumber<double>(f[11], number);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<TrialReport> LoadReportsCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ParseReportsCsv(in);
}

}  // namespace setsize
