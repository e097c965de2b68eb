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
// Python bindings for the setsize core library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "setsize/bench.h"
#include "setsize/calibration.h"
#include "setsize/domain.h"
#include "setsize/errors.h"
#include "setsize/estimate.h"
#include "setsize/hard_instances.h"
#include "setsize/hidden_set_io.h"
#include "setsize/oracle.h"
#include "setsize/registry.h"
#include "setsize/rng.h"

namespace py = pybind11;

namespace setsize {
namespace {

template <typename Writer, typename Rows>
std::string ToText(Writer writer, const Rows& rows) {
  std::ostringstream out;
  writer(out, rows);
  return out.str();
}

Estimate RunEstimator(const std::string& id, OracleSession& session,
                      double epsilon, std::uint64_t seed,
                      const Calibration& calibration) {
  const EstimatorInfo& info = FindEstimator(id);
  CheckCompatible(info, session.shape(), session.family());
  Rng rng(DeriveSeed(seed, StreamTag::kEstimator));
  return info.run(session, epsilon, calibration, rng);
}

InstancePair GeneratePair(const std::string& kind, Index n, Index w_tilde,
                          std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, StreamTag::kInstance));
  if (kind == "interval-query") return GenIntervalQueryPair(n, w_tilde, rng);
  if (kind == "interval-adaptive") return GenIntervalAdaptivePair(n, w_tilde, rng);
  if (kind == "interval-sample") return GenIntervalSamplePair(n, w_tilde, rng);
  if (kind == "unrestricted") return GenUnrestrictedPair(n, rng);
  if (kind == "collision") return GenCollisionPair(n, w_tilde, rng);
  throw ConfigError("unknown instance kind: " + kind);
}

}  // namespace
}  // namespace setsize

PYBIND11_MODULE(_core, m) {
  using namespace setsize;
  m.doc() = "Set-size estimation from subset queries and subset samples";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidSpec>(m, "InvalidSpec", error.ptr());
  py::register_exception<FamilyViolation>(m, "FamilyViolation", error.ptr());
  py::register_exception<InvalidParams>(m, "InvalidParams", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());

  py::class_<DomainShape>(m, "DomainShape")
      .def_static("line", &DomainShape::Line, py::arg("n"))
      .def_static("grid", &DomainShape::Grid, py::arg("dims"))
      .def_static("hypercube", &DomainShape::Hypercube, py::arg("d"))
      .def_property_readonly("size", &DomainShape::size)
      .def_property_readonly("dimension", &DomainShape::dimension)
      .def_property_readonly("dims", &DomainShape::dims)
      .def_property_readonly("is_cube", &DomainShape::is_cube)
      .def("to_coordinates", &DomainShape::ToCoordinates)
      .def("from_coordinates",
           [](const DomainShape& s, const std::vector<Index>& c) {
             return s.FromCoordinates(c);
           })
      .def("__eq__", &DomainShape::operator==)
      .def("__repr__", &DomainShape::ToString);

  py::enum_<SubsetFamily>(m, "SubsetFamily")
      .value("UNIVERSE_ONLY", SubsetFamily::kUniverseOnly)
      .value("INTERVALS", SubsetFamily::kIntervals)
      .value("SUBGRIDS", SubsetFamily::kSubGrids)
      .value("SUBCUBES", SubsetFamily::kSubCubes)
      .value("UNRESTRICTED", SubsetFamily::kUnrestricted);
  m.def("parse_family", [](const std::string& s) { return ParseFamily(s); });

  py::class_<WholeSpec>(m, "WholeSpec").def(py::init<>());
  py::class_<IntervalSpec>(m, "IntervalSpec")
      .def(py::init([](Index lo, Index hi) { return IntervalSpec{lo, hi}; }),
           py::arg("lo"), py::arg("hi"))
      .def_readwrite("lo", &IntervalSpec::lo)
      .def_readwrite("hi", &IntervalSpec::hi);
  py::class_<SubGridSpec>(m, "SubGridSpec")
      .def(py::init([](std::vector<Index> lo, std::vector<Index> hi) {
             return SubGridSpec{std::move(lo), std::move(hi)};
           }),
           py::arg("lo"), py::arg("hi"))
      .def_readwrite("lo", &SubGridSpec::lo)
      .def_readwrite("hi", &SubGridSpec::hi);
  py::class_<SubCubeSpec>(m, "SubCubeSpec")
      .def(py::init([](const std::map<int, int>& fixed) {
             return SubCubeSpec::FromRestrictions(fixed);
           }),
           py::arg("fixed") = std::map<int, int>{})
      .def("restrictions", &SubCubeSpec::Restrictions);
  py::class_<ExplicitSpec>(m, "ExplicitSpec")
      .def(py::init([](const std::vector<Index>& elements, Index n) {
             return ExplicitSpec::FromElements(elements, n);
           }),
           py::arg("elements"), py::arg("n"));
  py::class_<RandomSubsetSpec>(m, "RandomSubsetSpec")
      .def(py::init([](std::uint64_t seed, double p) {
             return RandomSubsetSpec{seed, p};
           }),
           py::arg("seed"), py::arg("p"));

  m.def("spec_allowed", &SpecAllowed);
  m.def("spec_cardinality", &SpecCardinality);
  m.def("describe_spec", &DescribeSpec);

  py::class_<HiddenSet>(m, "HiddenSet")
      .def(py::init([](std::vector<Index> elements, Index n) {
             return HiddenSet::FromUnsorted(std::move(elements), n);
           }),
           py::arg("elements"), py::arg("n"))
      .def_property_readonly("elements", [](const HiddenSet& s) {
        return std::vector<Index>(s.elements().begin(), s.elements().end());
      })
      .def_property_readonly("universe_size", &HiddenSet::universe_size)
      .def("__len__", &HiddenSet::size)
      .def("__contains__", &HiddenSet::Contains);
  m.def("load_hidden_set", [](const std::filesystem::path& path) {
    const auto loaded = LoadHiddenSetFile(path);
    return py::make_tuple(loaded.elements, loaded.universe_size);
  });
  m.def("uniform_subset", [](Index n, Index k, std::uint64_t seed) {
    Rng rng(seed);
    return UniformSubset(n, k, rng);
  });

  py::class_<OracleSession>(m, "OracleSession")
      .def(py::init<DomainShape, HiddenSet, SubsetFamily, std::uint64_t>(),
           py::arg("shape"), py::arg("hidden"), py::arg("family"),
           py::arg("seed") = 0)
      .def("query", &OracleSession::Query)
      .def("sample", &OracleSession::Sample)
      .def("intersection_size", &OracleSession::IntersectionSize)
      .def_property_readonly("queries",
                             [](const OracleSession& s) { return s.tally().queries; })
      .def_property_readonly("samples",
                             [](const OracleSession& s) { return s.tally().samples; })
      .def_property_readonly("shape", &OracleSession::shape)
      .def_property_readonly("family", &OracleSession::family);

  py::enum_<EstimateStatus>(m, "EstimateStatus")
      .value("OK", EstimateStatus::kOk)
      .value("FAILED", EstimateStatus::kFailed)
      .value("CAP_EXCEEDED", EstimateStatus::kCapExceeded);

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("status", &Estimate::status)
      .def_readonly("value", &Estimate::value)
      .def_readonly("queries", &Estimate::queries)
      .def_readonly("samples", &Estimate::samples)
      .def_readonly("note", &Estimate::note)
      .def_readonly("recovered", &Estimate::recovered)
      .def_property_readonly("ok", &Estimate::ok)
      .def_property_readonly("cost", &Estimate::cost);

  py::class_<Calibration>(m, "Calibration")
      .def(py::init<>())
      .def_static("load", &Calibration::LoadFile)
      .def_readwrite("collision_kappa", &Calibration::collision_kappa)
      .def_readwrite("singleton_kappa", &Calibration::singleton_kappa)
      .def_readwrite("iteration_kappa", &Calibration::iteration_kappa)
      .def_readwrite("grid_kappa", &Calibration::grid_kappa)
      .def_readwrite("cube_kappa", &Calibration::cube_kappa)
      .def_readwrite("probe_c", &Calibration::probe_c)
      .def_readwrite("window_c_prime", &Calibration::window_c_prime);

  m.def("estimators", [] {
    py::list out;
    for (const EstimatorInfo& info : Estimators()) {
      py::dict d;
      d["id"] = std::string(info.id);
      d["family"] = info.family;
      d["exact"] = info.exact;
      d["summary"] = std::string(info.summary);
      out.append(d);
    }
    return out;
  });
  m.def("estimate", &RunEstimator, py::arg("estimator"), py::arg("session"),
        py::arg("epsilon"), py::arg("seed") = 0,
        py::arg("calibration") = Calibration{});

  py::class_<TrialReport>(m, "TrialReport")
      .def_readonly("estimator", &TrialReport::estimator)
      .def_readonly("n", &TrialReport::n)
      .def_readonly("w", &TrialReport::w)
      .def_readonly("epsilon", &TrialReport::epsilon)
      .def_readonly("trial", &TrialReport::trial)
      .def_readonly("seed", &TrialReport::seed)
      .def_readonly("estimate", &TrialReport::estimate)
      .def_readonly("queries", &TrialReport::queries)
      .def_readonly("samples", &TrialReport::samples)
      .def_readonly("status", &TrialReport::status)
      .def_readonly("success", &TrialReport::success)
      .def_readonly("wall_ms", &TrialReport::wall_ms)
      .def("__eq__", &TrialReport::operator==);

  py::class_<CellSummary>(m, "CellSummary")
      .def_readonly("estimator", &CellSummary::estimator)
      .def_readonly("n", &CellSummary::n)
      .def_readonly("w", &CellSummary::w)
      .def_readonly("epsilon", &CellSummary::epsilon)
      .def_readonly("trials", &CellSummary::trials)
      .def_readonly("completed", &CellSummary::completed)
      .def_readonly("successes", &CellSummary::successes)
      .def_readonly("success_rate", &CellSummary::success_rate)
      .def_readonly("contract_rate", &CellSummary::contract_rate)
      .def_readonly("median_cost", &CellSummary::median_cost)
      .def_readonly("mean_cost", &CellSummary::mean_cost)
      .def_readonly("p95_cost", &CellSummary::p95_cost)
      .def_readonly("failed", &CellSummary::failed)
      .def_readonly("capped", &CellSummary::capped);

  m.def(
      "run_trials",
      [](const std::string& estimator, const DomainShape& shape,
         std::vector<Index> ws, std::vector<double> epsilons,
         std::int64_t trials, std::uint64_t seed, int threads,
         std::optional<SubsetFamily> family, const Calibration& calibration) {
        BenchConfig config{.estimator = estimator,
                           .family = family,
                           .shape = shape,
                           .ws = std::move(ws),
                           .epsilons = std::move(epsilons),
                           .trials = trials,
                           .seed = seed,
                           .threads = threads,
                           .calibration = calibration};
        py::gil_scoped_release release;
        return RunTrials(config);
      },
      py::arg("estimator"), py::arg("shape"), py::arg("ws"),
      py::arg("epsilons") = std::vector<double>{1.0}, py::arg("trials") = 1,
      py::arg("seed") = 0, py::arg("threads") = 1,
      py::arg("family") = std::nullopt, py::arg("calibration") = Calibration{});
  m.def("summarize", &Summarize);
  m.def("trial_seed", &TrialSeed);
  m.def("reports_csv", [](const std::vector<TrialReport>& r) {
    return ToText(WriteReportsCsv, r);
  });
  m.def("reports_json", [](const std::vector<TrialReport>& r) {
    return ToText(WriteReportsJson, r);
  });
  m.def("summary_csv", [](const std::vector<CellSummary>& c) {
    return ToText(WriteSummaryCsv, c);
  });
  m.def("summary_json", [](const std::vector<CellSummary>& c) {
    return ToText(WriteSummaryJson, c);
  });
  m.def("parse_reports_csv", [](const std::string& text) {
    std::istringstream in(text);
    return ParseReportsCsv(in);
  });

  py::class_<InstancePair>(m, "InstancePair")
      .def_readonly("kind", &InstancePair::kind)
      .def_readonly("s1", &InstancePair::s1)
      .def_readonly("s2", &InstancePair::s2)
      .def_readonly("params", &InstancePair::params)
      .def_readonly("positions", &InstancePair::positions);
  m.def("hard_instance", &GeneratePair, py::arg("kind"), py::arg("n"),
        py::arg("w_tilde") = 0, py::arg("seed") = 0);
  m.def("save_instance_pair", &SaveInstancePair);
}
