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

// setsize: benchmark batteries, one-shot estimates, hard-instance export and
// the acceptance suite.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "setsize/acceptance.h"
#include "setsize/bench.h"
#include "setsize/hard_instances.h"
#include "setsize/hidden_set_io.h"
#include "setsize/oracle.h"
#include "setsize/registry.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAcceptance = 1;
constexpr int kExitConfig = 2;

struct ShapeFlags {
  std::optional<setsize::Index> n;
  std::vector<setsize::Index> dims;
  std::optional<int> cube_d;

  void Register(CLI::App& cmd) {
    auto* n_opt = cmd.add_option("--n", n, "line universe [1, n]");
    auto* dims_opt = cmd.add_option("--dims", dims, "grid side lengths, e.g. 256,256")
                         ->delimiter(',');
    auto* cube_opt = cmd.add_option("--cube-d", cube_d, "hypercube dimension");
    n_opt->excludes(dims_opt)->excludes(cube_opt);
    dims_opt->excludes(cube_opt);
  }

  std::optional<setsize::DomainShape> Shape() const {
    if (n) return setsize::DomainShape::Line(*n);
    if (!dims.empty()) return setsize::DomainShape::Grid(dims);
    if (cube_d) return setsize::DomainShape::Hypercube(*cube_d);
    return std::nullopt;
  }
};

setsize::Calibration LoadCalibration(const std::string& path) {
  return path.empty() ? setsize::Calibration::Defaults()
                      : setsize::Calibration::LoadFile(path);
}

std::filesystem::path SelfPath(const char* argv0) {
  std::error_code ec;
  auto p = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) return p;
  return std::filesystem::absolute(argv0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-size estimation from subset queries and subset samples"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML/INI file");

  // bench
  auto* bench = app.add_subcommand("bench", "run a seeded trial battery");
  std::string bench_estimator;
  std::string bench_family;
  ShapeFlags bench_shape;
  std::vector<setsize::Index> bench_ws;
  std::vector<double> bench_eps = {1.0};
  std::int64_t bench_trials = 100;
  std::uint64_t bench_seed = 0;
  std::string bench_out;
  std::string bench_format = "csv";
  int bench_threads = 1;
  bool bench_timing = false;
  bool bench_audit = false;
  std::string bench_calibration;
  bench->add_option("--estimator", bench_estimator, "estimator id")->required();
  bench->add_option("--family", bench_family,
                    "subset family (universe, intervals, subgrids, subcubes, "
                    "unrestricted)");
  bench_shape.Register(*bench);
  bench->add_option("--w", bench_ws, "hidden-set sizes")->delimiter(',')->required();
  bench->add_option("--eps", bench_eps, "accuracy parameters")->delimiter(',');
  bench->add_option("--trials", bench_trials, "trials per cell");
  bench->add_option("--seed", bench_seed, "master seed")->envname("SETSIZE_SEED");
  bench->add_option("--out", bench_out,
                    "output directory (reports.* and summary.*); stdout if omitted");
  bench->add_option("--format", bench_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--threads", bench_threads, "worker threads");
  bench->add_flag("--timing", bench_timing, "record wall time per trial");
  bench->add_flag("--audit", bench_audit,
                  "cross-check costs against recorded transcripts");
  bench->add_option("--calibration", bench_calibration, "calibration JSON file");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "estimate |S| for a hidden-set file");
  std::string est_estimator;
  std::string est_family;
  std::string est_set;
  ShapeFlags est_shape;
  double est_eps = 1.0;
  std::uint64_t est_seed = 0;
  std::string est_calibration;
  bool est_json = false;
  estimate->add_option("--estimator", est_estimator, "estimator id")->required();
  estimate->add_option("--set", est_set, "hidden-set file")->required();
  estimate->add_option("--family", est_family, "subset family");
  est_shape.Register(*estimate);
  estimate->add_option("--eps", est_eps, "accuracy parameter");
  estimate->add_option("--seed", est_seed, "seed")->envname("SETSIZE_SEED");
  estimate->add_option("--calibration", est_calibration, "calibration JSON file");
  estimate->add_flag("--json", est_json, "print JSON");

  // hard-instance
  auto* hard = app.add_subcommand("hard-instance", "write a hard instance pair");
  std::string hard_kind;
  setsize::Index hard_n = 0;
  setsize::Index hard_w = 0;
  std::uint64_t hard_seed = 0;
  std::string hard_out;
  hard->add_option("kind", hard_kind, "construction")
      ->required()
      ->check(CLI::IsMember({"interval-query", "interval-adaptive",
                             "interval-sample", "unrestricted", "collision",
                             "mse"}));
  hard->add_option("--n", hard_n, "universe size (mse: string count b)")->required();
  hard->add_option("--w-tilde", hard_w, "size parameter (mse: string length m)");
  hard->add_option("--seed", hard_seed, "seed")->envname("SETSIZE_SEED");
  hard->add_option("--out", hard_out,
                   "output stem: <stem>.s1.txt, <stem>.s2.txt, <stem>.meta.json");

  // verify
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  setsize::AcceptanceOptions verify_options;
  std::string verify_calibration;
  verify->add_option("--seed", verify_options.seed, "master seed");
  verify->add_option("--threads", verify_options.threads, "worker threads");
  verify->add_option("--only", verify_options.only, "criteria to run")
      ->delimiter(',')
      ->check(CLI::Range(1, 8));
  verify->add_option("--calibration", verify_calibration, "calibration JSON file");

  // list
  auto* list = app.add_subcommand("list", "list estimator ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*list) {
      for (const auto& info : setsize::Estimators()) {
        std::cout << info.id << "\t" << setsize::FamilyName(info.family) << "\t"
                  << info.summary << "\n";
      }
      return kExitOk;
    }

    if (*bench) {
      setsize::BenchConfig config;
      config.estimator = bench_estimator;
      if (!bench_family.empty()) config.family = setsize::ParseFamily(bench_family);
      const auto shape = bench_shape.Shape();
      if (!shape) throw setsize::ConfigError("one of --n, --dims, --cube-d is required");
      config.shape = *shape;
      config.ws = bench_ws;
      config.epsilons = bench_eps;
      config.trials = bench_trials;
      config.seed = bench_seed;
      config.threads = bench_threads;
      config.timing = bench_timing;
      config.audit = bench_audit;
      config.calibration = LoadCalibration(bench_calibration);
      const setsize::OutputFormat format = setsize::ParseFormat(bench_format);
      setsize::ValidateBenchConfig(config);
      const auto reports = setsize::RunTrials(config);
      const auto cells = setsize::Summarize(reports);
      if (bench_out.empty()) {
        if (format == setsize::OutputFormat::kCsv) {
          setsize::WriteSummaryCsv(std::cout, cells);
        } else {
          setsize::WriteSummaryJson(std::cout, cells);
        }
      } else {
        setsize::EmitResults(bench_out, format, reports, cells);
      }
      return kExitOk;
    }

    if (*estimate) {
      const setsize::EstimatorInfo& info = setsize::FindEstimator(est_estimator);
      const auto loaded = setsize::LoadHiddenSetFile(est_set);
      auto shape = est_shape.Shape();
      if (!shape) {
        if (!loaded.universe_size) {
          throw setsize::ConfigError("the set file has no '# n=' header; pass --n");
        }
        shape = setsize::DomainShape::Line(*loaded.universe_size);
      }
      const setsize::SubsetFamily family =
          est_family.empty() ? info.family : setsize::ParseFamily(est_family);
      setsize::CheckCompatible(info, *shape, family);
      setsize::HiddenSet hidden(loaded.elements, shape->size());
      const setsize::Index w = hidden.size();
      setsize::OracleSession session(
          *shape, std::move(hidden), family,
          setsize::DeriveSeed(est_seed, setsize::StreamTag::kOracle));
      setsize::Rng rng(setsize::DeriveSeed(est_seed, setsize::StreamTag::kEstimator));
      const setsize::Estimate e =
          info.run(session, est_eps, LoadCalibration(est_calibration), rng);
      if (est_json) {
        nlohmann::ordered_json doc{{"estimator", info.id},
                                   {"n", shape->size()},
                                   {"w", w},
                                   {"epsilon", est_eps},
                                   {"status", setsize::StatusName(e.status)},
                                   {"estimate", e.ok() ? nlohmann::ordered_json(e.value)
                                                       : nlohmann::ordered_json(nullptr)},
                                   {"queries", e.queries},
                                   {"samples", e.samples}};
        std::cout << doc.dump(2) << "\n";
      } else {
        std::cout << "status " << setsize::StatusName(e.status) << "\n";
        if (e.ok()) std::cout << "estimate " << e.value << "\n";
        if (!e.note.empty()) std::cout << "note " << e.note << "\n";
        std::cout << "queries " << e.queries << "\nsamples " << e.samples
                  << "\ntrue_size " << w << "\n";
      }
      return kExitOk;
    }

    if (*hard) {
      setsize::Rng rng(setsize::DeriveSeed(hard_seed, setsize::StreamTag::kInstance));
      if (hard_kind == "mse") {
        const auto mse = setsize::GenMseInstance(hard_n, hard_w, rng);
        nlohmann::ordered_json doc{{"b", mse.b}, {"m", mse.m}, {"positions", mse.positions}};
        std::cout << doc.dump(2) << "\n";
        return kExitOk;
      }
      if (hard_out.empty()) throw setsize::ConfigError("--out is required for pairs");
      setsize::InstancePair pair;
      if (hard_kind == "interval-query") {
        pair = setsize::GenIntervalQueryPair(hard_n, hard_w, rng);
      } else if (hard_kind == "interval-adaptive") {
        pair = setsize::GenIntervalAdaptivePair(hard_n, hard_w, rng);
      } else if (hard_kind == "interval-sample") {
        pair = setsize::GenIntervalSamplePair(hard_n, hard_w, rng);
      } else if (hard_kind == "unrestricted") {
        pair = setsize::GenUnrestrictedPair(hard_n, rng);
      } else {
        pair = setsize::GenCollisionPair(hard_n, hard_w, rng);
      }
      setsize::SaveInstancePair(hard_out, pair);
      std::cout << "wrote " << hard_out << ".{s1.txt,s2.txt,meta.json} (|S1|="
                << pair.s1.size() << ", |S2|=" << pair.s2.size() << ")\n";
      return kExitOk;
    }

    if (*verify) {
      verify_options.calibration = LoadCalibration(verify_calibration);
      verify_options.cli = SelfPath(argv[0]);
      const auto results = setsize::RunAcceptance(verify_options, std::cout, &std::cerr);
      return setsize::AllPassed(results) ? kExitOk : kExitAcceptance;
    }
  } catch (const setsize::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const setsize::InvalidParams& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const setsize::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const setsize::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
