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

#include "setsize/acceptance.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>

#include "setsize/bench.h"
#include "setsize/hard_instances.h"
#include "setsize/interval_estimators.h"
#include "setsize/oracle.h"
#include "setsize/registry.h"
#include "setsize/structured.h"
#include "setsize/unrestricted.h"

namespace setsize {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fixed(double v, int digits = 3) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

std::uint64_t Tag(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return h;
}

std::vector<CellSummary> Battery(const AcceptanceOptions& options,
                                 std::string_view estimator,
                                 const DomainShape& shape,
                                 std::vector<Index> ws,
                                 std::vector<double> epsilons,
                                 std::int64_t trials) {
  BenchConfig config;
  config.estimator = std::string(estimator);
  config.shape = shape;
  config.ws = std::move(ws);
  config.epsilons = std::move(epsilons);
  config.trials = trials;
  config.threads = options.threads;
  config.calibration = options.calibration;
  config.seed = DeriveSeed(options.seed, Tag(std::string(estimator) + "/" +
                                             shape.ToString()));
  return Summarize(RunTrials(config));
}

double MedianCostAt(const std::vector<CellSummary>& cells, Index w) {
  for (const CellSummary& c : cells) {
    if (c.w == w) return c.median_cost;
  }
  return std::nan("");
}

std::vector<DomainShape> ContractShapes(ShapeRequirement shape) {
  switch (shape) {
    case ShapeRequirement::kGrid:
      return {DomainShape::Grid({64, 64}), DomainShape::Grid({256, 256}),
              DomainShape::Grid({1024, 1024})};
    case ShapeRequirement::kCube:
      return {DomainShape::Hypercube(12), DomainShape::Hypercube(16),
              DomainShape::Hypercube(20)};
    case ShapeRequirement::kAny:
    case ShapeRequirement::kLine:
      break;
  }
  return {DomainShape::Line(Index{1} << 12), DomainShape::Line(Index{1} << 16),
          DomainShape::Line(Index{1} << 20)};
}

}  // namespace

CriterionResult CheckSuccessContract(const AcceptanceOptions& options,
                                     std::ostream* log) {
  constexpr double kThreshold = 0.60;
  constexpr double kBudgetSeconds = 300.0;
  CriterionResult result{.number = 1, .title = "success contract", .passed = true};
  for (const EstimatorInfo& info : Estimators()) {
    const auto start = Clock::now();
    double worst = 1.0;
    std::string worst_cell;
    for (const DomainShape& shape : ContractShapes(info.shape)) {
      std::vector<Index> ws;
      for (Index w : {1, 4, 16, 256, 4096}) {
        if (w <= shape.size()) ws.push_back(w);
      }
      const auto cells = Battery(options, info.id, shape, ws, {0.5, 1.0}, 500);
      for (const CellSummary& c : cells) {
        if (worst_cell.empty() || c.contract_rate < worst) {
          worst = c.contract_rate;
          worst_cell = shape.ToString() + " w=" + std::to_string(c.w) +
                       " eps=" + Fixed(c.epsilon, 1);
        }
        if (c.contract_rate < kThreshold) {
          result.passed = false;
          result.details.push_back(std::string(info.id) + " below threshold at " +
                                   shape.ToString() + " w=" + std::to_string(c.w) +
                                   " eps=" + Fixed(c.epsilon, 1) + ": " +
                                   Fixed(c.contract_rate));
        }
      }
    }
    const double seconds = SecondsSince(start);
    const bool in_budget = seconds <= kBudgetSeconds;
    result.passed = result.passed && in_budget;
    std::string line = std::string(info.id) + ": min rate " + Fixed(worst) +
                       " (" + worst_cell + "), " + Fixed(seconds, 1) + " s" +
                       (in_budget ? "" : " OVER BUDGET");
    if (log) *log << "  [1] " << line << std::endl;
    result.details.push_back(std::move(line));
  }
  return result;
}

CriterionResult CheckExactRecovery(const AcceptanceOptions& options) {
  CriterionResult result{.number = 2, .title = "exact recovery", .passed = true};
  Rng rng(DeriveSeed(options.seed, Tag("exact-recovery")));
  std::int64_t checked = 0;
  std::int64_t bad = 0;
  auto check = [&](Index n, std::vector<Index> elements) {
    HiddenSet hidden(std::move(elements), n);
    const std::vector<Index> truth(hidden.elements().begin(),
                                   hidden.elements().end());
    OracleSession session(DomainShape::Line(n), std::move(hidden),
                          SubsetFamily::kIntervals, rng.NextU64());
    const Estimate e = ExactRecoverBinarySearch(session);
    const auto w = static_cast<std::int64_t>(truth.size());
    const std::int64_t bound =
        2 * w * (std::bit_width(static_cast<std::uint64_t>(n)) - 1 + 1) + 1;
    ++checked;
    if (!e.recovered || *e.recovered != truth || e.queries > bound) {
      ++bad;
      if (bad <= 5) {
        result.details.push_back("mismatch at n=" + std::to_string(n) +
                                 " w=" + std::to_string(w) + " queries=" +
                                 std::to_string(e.queries));
      }
    }
  };
  for (int i = 0; i < 1000; ++i) {
    const Index n = rng.UniformIndex(1, Index{1} << 12);
    const Index w = i % 2 ? rng.UniformIndex(0, std::min<Index>(n, 64))
                          : rng.UniformIndex(0, n);
    check(n, UniformSubset(n, w, rng));
  }
  for (Index n : {1, 2, 3, 7, 8, 100, 1024, 4096}) {
    check(n, {});
    check(n, {rng.UniformIndex(1, n)});
    std::vector<Index> all(n);
    std::iota(all.begin(), all.end(), 1);
    check(n, std::move(all));
  }
  result.passed = bad == 0;
  result.details.push_back(std::to_string(checked) + " instances, " +
                           std::to_string(bad) + " violations");
  return result;
}

CriterionResult CheckScalingLaws(const AcceptanceOptions& options,
                                 std::ostream* log) {
  CriterionResult result{.number = 3, .title = "scaling laws", .passed = true};
  const DomainShape line20 = DomainShape::Line(Index{1} << 20);
  const std::vector<Index> ladder = {16, 64, 256, 1024, 4096};
  auto note = [&](bool ok, std::string line) {
    result.passed = result.passed && ok;
    line = std::string(ok ? "ok   " : "FAIL ") + line;
    if (log) *log << "  [3] " << line << std::endl;
    result.details.push_back(std::move(line));
  };
  auto ratio_band = [&](std::string_view id, double lo, double hi) {
    const auto cells = Battery(options, id, line20, ladder, {1.0}, 300);
    for (std::size_t k = 0; k + 1 < ladder.size(); ++k) {
      const double r =
          MedianCostAt(cells, ladder[k + 1]) / MedianCostAt(cells, ladder[k]);
      note(r >= lo && r <= hi,
           std::string(id) + " cost(" + std::to_string(ladder[k + 1]) +
               ")/cost(" + std::to_string(ladder[k]) + ") = " + Fixed(r) +
               " in [" + Fixed(lo, 2) + ", " + Fixed(hi, 2) + "]");
    }
  };
  ratio_band("collision", 1.4, 2.8);
  ratio_band("interval_query_na", 0.15, 0.45);

  {
    const std::vector<Index> ws = {16, 256, 4096};
    const auto small = Battery(options, "interval_sample_adaptive",
                               DomainShape::Line(Index{1} << 16), ws, {1.0}, 300);
    const auto large = Battery(options, "interval_sample_adaptive",
                               DomainShape::Line(Index{1} << 24), ws, {1.0}, 300);
    for (Index w : ws) {
      const double r = MedianCostAt(large, w) / MedianCostAt(small, w);
      note(r >= 0.6 && r <= 1.6,
           "interval_sample_adaptive cost(n=2^24)/cost(n=2^16) at w=" +
               std::to_string(w) + " = " + Fixed(r) + " in [0.60, 1.60]");
    }
    const auto growth =
        Battery(options, "interval_sample_adaptive", line20,
                {Index{1} << 4, Index{1} << 16}, {1.0}, 300);
    const double r =
        MedianCostAt(growth, Index{1} << 16) / MedianCostAt(growth, Index{1} << 4);
    note(r <= 50.0, "interval_sample_adaptive cost(2^16)/cost(2^4) = " +
                        Fixed(r) + " <= 50");
  }

  {
    const Index w1 = Index{1} << 7;
    const Index w2 = Index{1} << 14;
    const auto na = Battery(options, "unrestricted_na", line20, {w1, w2}, {1.0}, 300);
    const auto ad =
        Battery(options, "unrestricted_adaptive", line20, {w2}, {1.0}, 300);
    const double c_na = MedianCostAt(na, w2);
    const double c_ad = MedianCostAt(ad, w2);
    note(c_ad < c_na, "unrestricted adaptive median " + Fixed(c_ad, 1) +
                          " < non-adaptive median " + Fixed(c_na, 1) +
                          " at w=2^14");
    const double r = c_na / MedianCostAt(na, w1);
    note(r >= 1.5 && r <= 3.0,
         "unrestricted_na cost(2^14)/cost(2^7) = " + Fixed(r) + " in [1.50, 3.00]");
  }
  return result;
}

CriterionResult CheckExactTelescoping(const AcceptanceOptions& options) {
  CriterionResult result{.number = 4, .title = "exact-mode telescoping",
                         .passed = true};
  Rng rng(DeriveSeed(options.seed, Tag("telescoping")));
  NestedOptions nested = NestedOptionsFrom(options.calibration, 0.5);
  nested.exact_ratios = true;

  struct Tally {
    int single_terminal = 0;
    int mismatches = 0;
    int other_terminal = 0;
    int not_ok = 0;
  };
  auto record = [&](Tally& t, OracleSession& session, const Estimate& e,
                    const SubsetSpec& terminal, Index w) {
    if (!e.ok()) {
      ++t.not_ok;
      return;
    }
    if (session.IntersectionSize(terminal) == 1) {
      ++t.single_terminal;
      if (e.value != static_cast<double>(w)) ++t.mismatches;
    } else {
      ++t.other_terminal;
    }
  };
  auto report = [&](std::string_view name, const Tally& t) {
    result.passed = result.passed && t.mismatches == 0 && t.not_ok == 0;
    result.details.push_back(
        std::string(name) + ": " + std::to_string(t.single_terminal) +
        " single-element terminals, " + std::to_string(t.mismatches) +
        " mismatches, " + std::to_string(t.not_ok) + " failed runs, " +
        std::to_string(t.other_terminal) + " early terminals");
  };

  Tally intervals;
  for (int i = 0; i < 1000; ++i) {
    const Index n = rng.UniformIndex(2, Index{1} << 12);
    const Index w = rng.UniformIndex(1, std::min<Index>(n, 256));
    OracleSession session(DomainShape::Line(n),
                          HiddenSet(UniformSubset(n, w, rng), n),
                          SubsetFamily::kIntervals, rng.NextU64());
    NestedTrace<IntervalSpec> trace;
    const Estimate e = EstimateIntervalSampleAdaptive(session, nested, &trace);
    record(intervals, session, e,
           trace.regions.empty() ? SubsetSpec{WholeSpec{}} : SubsetSpec{trace.regions.back()},
           w);
  }
  report("intervals", intervals);

  Tally grids;
  for (int i = 0; i < 1000; ++i) {
    const DomainShape shape =
        DomainShape::Grid({rng.UniformIndex(1, 64), rng.UniformIndex(2, 64)});
    const Index n = shape.size();
    const Index w = rng.UniformIndex(1, std::min<Index>(n, 256));
    OracleSession session(shape, HiddenSet(UniformSubset(n, w, rng), n),
                          SubsetFamily::kSubGrids, rng.NextU64());
    NestedTrace<SubGridSpec> trace;
    const Estimate e = EstimateGridSampleAdaptive(
        session, nested, options.calibration.grid_kappa, &trace);
    record(grids, session, e,
           trace.regions.empty() ? SubsetSpec{WholeSpec{}} : SubsetSpec{trace.regions.back()},
           w);
  }
  report("grids", grids);

  Tally cubes;
  for (int i = 0; i < 1000; ++i) {
    const int d = static_cast<int>(rng.UniformIndex(2, 12));
    const DomainShape shape = DomainShape::Hypercube(d);
    const Index n = shape.size();
    const Index w = rng.UniformIndex(1, std::min<Index>(n, 256));
    OracleSession session(shape, HiddenSet(UniformSubset(n, w, rng), n),
                          SubsetFamily::kSubCubes, rng.NextU64());
    NestedTrace<SubCubeSpec> trace;
    const Estimate e = EstimateHypercubeSampleAdaptive(
        session, nested, options.calibration.cube_kappa, &trace);
    record(cubes, session, e,
           trace.regions.empty() ? SubsetSpec{WholeSpec{}} : SubsetSpec{trace.regions.back()},
           w);
  }
  report("cubes", cubes);
  return result;
}

namespace {

// -ln(rho) - 1 for e = 2^(i-1), summed as a series in x = 1/e so that
// adjacent levels stay distinguishable long after rho itself rounds to 1/e.
double RhoLogExcess(int i) {
  const double x = std::ldexp(1.0, 1 - i);
  double sum = 0.0;
  double power = 1.0;
  for (int k = 2; k < 200; ++k) {
    power *= x;
    const double term = power / k;
    if (term < sum * 1e-18) break;
    sum += term;
  }
  return sum;
}

}  // namespace

CriterionResult CheckWindowMathematics() {
  CriterionResult result{.number = 5, .title = "window mathematics",
                         .passed = true};
  const double inv_e = std::exp(-1.0);
  double min_low_gap = 1.0;
  double min_high_gap = 1.0;
  double max_mismatch = 0.0;
  double previous_excess = 0.0;
  for (int i = 2; i <= 64; ++i) {
    const double excess = RhoLogExcess(i);
    const double rho = std::exp(-1.0 - excess);
    if (i <= 62) {
      max_mismatch = std::max(max_mismatch,
                              std::abs(rho - Rho(Hypothesis(i, 1.0))));
    }
    const bool monotone = i == 2 || excess < previous_excess;
    const bool bounded = rho >= 0.25 - 1e-15 && rho <= inv_e;
    const double low_gap = std::pow(rho, std::sqrt(2.0)) - rho * rho;
    const double high_gap = std::sqrt(rho) - std::pow(rho, 1.0 / std::sqrt(2.0));
    min_low_gap = std::min(min_low_gap, low_gap);
    min_high_gap = std::min(min_high_gap, high_gap);
    if (!monotone || !bounded || low_gap <= 0.04 || high_gap <= 0.04) {
      result.passed = false;
      result.details.push_back("violation at i=" + std::to_string(i));
    }
    previous_excess = excess;
  }
  if (Rho(Hypothesis(2, 1.0)) != 0.25) {
    result.passed = false;
    result.details.push_back("rho(2) != 1/4");
  }
  if (max_mismatch > 1e-12) {
    result.passed = false;
    result.details.push_back("series and Rho() disagree by " +
                             std::to_string(max_mismatch));
  }
  result.details.push_back("i in [2, 64]: min lower gap " + Fixed(min_low_gap, 4) +
                           ", min upper gap " + Fixed(min_high_gap, 4));
  return result;
}

CriterionResult CheckIndistinguishability(const AcceptanceOptions& options) {
  CriterionResult result{.number = 6, .title = "indistinguishability fixtures",
                         .passed = true};
  Rng rng(DeriveSeed(options.seed, Tag("indistinguishability")));

  // (a) Fixed interval query sets against interval-query pairs.
  {
    const Index n = Index{1} << 16;
    const Index w_tilde = Index{1} << 6;
    const Index q = n / (24 * w_tilde);
    const DomainShape shape = DomainShape::Line(n);
    std::vector<std::vector<SubsetSpec>> query_sets;
    for (int k = 0; k < 4; ++k) {
      std::vector<SubsetSpec> specs;
      for (Index j = 0; j < q; ++j) {
        Index a = rng.UniformIndex(1, n);
        Index b = rng.UniformIndex(1, n);
        if (a > b) std::swap(a, b);
        specs.push_back(IntervalSpec{a, b});
      }
      query_sets.push_back(std::move(specs));
    }
    std::vector<SubsetSpec> spread;
    for (Index j = 0; j < q; ++j) {
      const Index lo = 1 + j * (n / q);
      spread.push_back(IntervalSpec{lo, std::min(n, lo + w_tilde / 2)});
    }
    query_sets.push_back(std::move(spread));
    double worst = 1.0;
    for (const auto& specs : query_sets) {
      int same = 0;
      for (int draw = 0; draw < 2000; ++draw) {
        const InstancePair pair = GenIntervalQueryPair(n, w_tilde, rng);
        same += !TranscriptDistinguishable(shape, specs, pair.s1, pair.s2);
      }
      worst = std::min(worst, same / 2000.0);
    }
    const bool ok = worst >= 2.0 / 3.0;
    result.passed = result.passed && ok;
    result.details.push_back("(a) " + std::to_string(query_sets.size()) +
                             " fixed sets of " + std::to_string(q) +
                             " interval queries: min identical-transcript rate " +
                             Fixed(worst));
  }

  // (b) Collision pairs under floor(sqrt(w~/6)) samples of U.
  {
    const Index n = Index{1} << 16;
    const Index w_tilde = Index{1} << 12;
    const auto s = static_cast<int>(std::floor(std::sqrt(w_tilde / 6.0)));
    const DomainShape shape = DomainShape::Line(n);
    int hits[2] = {0, 0};
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
      const InstancePair pair = GenCollisionPair(n, w_tilde, rng);
      const HiddenSet* sets[2] = {&pair.s1, &pair.s2};
      for (int k = 0; k < 2; ++k) {
        OracleSession session(shape, *sets[k], SubsetFamily::kUniverseOnly,
                              rng.NextU64());
        std::vector<Index> seen;
        bool collided = false;
        for (int i = 0; i < s && !collided; ++i) {
          const Index x = *session.Sample(WholeSpec{});
          collided = std::find(seen.begin(), seen.end(), x) != seen.end();
          seen.push_back(x);
        }
        hits[k] += collided;
      }
    }
    const double r1 = static_cast<double>(hits[0]) / trials;
    const double r2 = static_cast<double>(hits[1]) / trials;
    const bool ok = r1 <= 1.0 / 3.0 && r2 <= 1.0 / 3.0;
    result.passed = result.passed && ok;
    result.details.push_back("(b) " + std::to_string(s) +
                             " samples: collision rate " + Fixed(r1) +
                             " (small set), " + Fixed(r2) + " (large set)");
  }
  return result;
}

namespace {

// 6×6 grid cells as bits 6·(row−1) + (col−1).
std::uint64_t BoxMask(Index r0, Index r1, Index c0, Index c1) {
  std::uint64_t m = 0;
  for (Index r = r0; r <= r1; ++r) {
    for (Index c = c0; c <= c1; ++c) m |= std::uint64_t{1} << (6 * (r - 1) + (c - 1));
  }
  return m;
}

struct Box {
  Index r0, r1, c0, c1;
  std::uint64_t mask;
};

std::vector<Box> BoxesWithin(Index r0, Index r1, Index c0, Index c1) {
  std::vector<Box> out;
  for (Index a = r0; a <= r1; ++a)
    for (Index b = a; b <= r1; ++b)
      for (Index c = c0; c <= c1; ++c)
        for (Index d = c; d <= c1; ++d) out.push_back({a, b, c, d, BoxMask(a, b, c, d)});
  return out;
}

// Independent check: some strict sub-box holds between 1/4 and 3/4.
bool GridClaimHolds(const std::vector<Box>& inner, std::uint64_t region,
                    std::uint64_t s) {
  const int total = std::popcount(s);
  for (const Box& b : inner) {
    if (b.mask == region) continue;
    const int k = std::popcount(s & b.mask);
    if (4 * k >= total && 4 * k <= 3 * total) return true;
  }
  return false;
}

bool GridCutValid(const Box& region, std::uint64_t s) {
  std::vector<std::vector<Index>> points;
  for (std::uint64_t m = s; m; m &= m - 1) {
    const int bit = std::countr_zero(m);
    points.push_back({bit / 6 + 1, bit % 6 + 1});
  }
  const SubGridSpec r{{region.r0, region.c0}, {region.r1, region.c1}};
  const SubGridSpec cut = ChooseGridCut(r, points);
  if (cut == r) return false;
  if (cut.lo[0] < r.lo[0] || cut.hi[0] > r.hi[0] || cut.lo[1] < r.lo[1] ||
      cut.hi[1] > r.hi[1] || cut.lo[0] > cut.hi[0] || cut.lo[1] > cut.hi[1]) {
    return false;
  }
  const int k =
      std::popcount(s & BoxMask(cut.lo[0], cut.hi[0], cut.lo[1], cut.hi[1]));
  const int total = std::popcount(s);
  return 4 * k >= total && 4 * k <= 3 * total;
}

}  // namespace

CriterionResult CheckSplittingLemmas() {
  CriterionResult result{.number = 7, .title = "splitting lemmas", .passed = true};

  // Grid, all sub-grids R of 6×6. Regions of area ≤ 20 enumerate every S
  // inside R; larger ones enumerate every vector of row counts, which fixes
  // the outcome of the prefix-then-row argument, realised by left-aligned
  // and right-aligned sets.
  constexpr int kExhaustiveArea = 20;
  std::int64_t sets = 0;
  std::int64_t vectors = 0;
  std::int64_t counterexamples = 0;
  for (const Box& region : BoxesWithin(1, 6, 1, 6)) {
    const Index h = region.r1 - region.r0 + 1;
    const Index w = region.c1 - region.c0 + 1;
    const auto inner = BoxesWithin(region.r0, region.r1, region.c0, region.c1);
    std::vector<int> cells;
    for (std::uint64_t m = region.mask; m; m &= m - 1) cells.push_back(std::countr_zero(m));
    if (h * w <= kExhaustiveArea) {
      const std::uint64_t limit = std::uint64_t{1} << cells.size();
      for (std::uint64_t sub = 0; sub < limit; ++sub) {
        if (std::popcount(sub) < 2) continue;
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < cells.size(); ++k) {
          if (sub >> k & 1) s |= std::uint64_t{1} << cells[k];
        }
        ++sets;
        const bool ok = GridClaimHolds(inner, region.mask, s) &&
                        (h * w > 16 || GridCutValid(region, s));
        counterexamples += !ok;
      }
      continue;
    }
    std::vector<Index> counts(h, 0);
    for (;;) {
      const Index total = std::accumulate(counts.begin(), counts.end(), Index{0});
      if (total >= 2) {
        for (int align = 0; align < 2; ++align) {
          std::uint64_t s = 0;
          for (Index r = 0; r < h; ++r) {
            for (Index k = 0; k < counts[r]; ++k) {
              const Index col = align == 0 ? region.c0 + k : region.c1 - k;
              s |= std::uint64_t{1} << (6 * (region.r0 + r - 1) + (col - 1));
            }
          }
          ++vectors;
          const bool ok = GridClaimHolds(inner, region.mask, s) &&
                          GridCutValid(region, s);
          counterexamples += !ok;
        }
      }
      Index r = 0;
      while (r < h && counts[r] == w) counts[r++] = 0;
      if (r == h) break;
      ++counts[r];
    }
  }
  result.details.push_back("grid: " + std::to_string(sets) + " exhaustive sets, " +
                           std::to_string(vectors) + " row-count sets, " +
                           std::to_string(counterexamples) + " counterexamples");
  result.passed = counterexamples == 0;

  // Cube, Hypercube(4): every sub-cube C and every S ⊆ U with |C ∩ S| ≥ 2.
  constexpr int d = 4;
  std::int64_t cube_cases = 0;
  std::int64_t cube_bad = 0;
  auto cube_mask = [&](const SubCubeSpec& c) {
    std::uint32_t m = 0;
    for (std::uint64_t off = 0; off < 16; ++off) {
      bool in = true;
      for (int k = 1; k <= d; ++k) {
        if ((c.mask >> (k - 1) & 1) &&
            ((off >> (d - k)) & 1) != ((c.value >> (k - 1)) & 1)) {
          in = false;
        }
      }
      if (in) m |= 1u << off;
    }
    return m;
  };
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    for (std::uint64_t value = 0; value < 16; ++value) {
      if ((value & ~mask) != 0) continue;
      const SubCubeSpec cube{mask, value};
      const std::uint32_t c_mask = cube_mask(cube);
      std::vector<int> free_coords;
      for (int k = 1; k <= d; ++k) {
        if (!(mask >> (k - 1) & 1)) free_coords.push_back(k);
      }
      // All prefix-restriction sub-cubes of C.
      std::vector<std::uint32_t> prefixes;
      for (std::size_t t = 1; t <= free_coords.size(); ++t) {
        for (std::uint64_t bits = 0; bits < (1u << t); ++bits) {
          SubCubeSpec sub = cube;
          for (std::size_t k = 0; k < t; ++k) {
            sub = RestrictCube(sub, free_coords[k], (bits >> k) & 1);
          }
          prefixes.push_back(cube_mask(sub));
        }
      }
      for (std::uint32_t s = 0; s < (1u << 16); ++s) {
        const int total = std::popcount(s & c_mask);
        if (total < 2) continue;
        ++cube_cases;
        bool exists = false;
        for (std::uint32_t p : prefixes) {
          const int k = std::popcount(s & p);
          if (3 * k >= total && 3 * k <= 2 * total) {
            exists = true;
            break;
          }
        }
        std::vector<std::uint64_t> offsets;
        for (std::uint32_t m = s & c_mask; m; m &= m - 1) {
          offsets.push_back(static_cast<std::uint64_t>(std::countr_zero(m)));
        }
        const auto cands = CubeCandidates(d, cube, offsets, 0.25, 0.75);
        bool cands_ok = !cands.empty() && cands.size() <= 2;
        for (const SubCubeSpec& c : cands) {
          const std::uint32_t cm = cube_mask(c);
          const int k = std::popcount(s & cm);
          cands_ok = cands_ok && (cm & ~c_mask) == 0 && cm != c_mask &&
                     4 * k >= total && 4 * k <= 3 * total;
        }
        cube_bad += !(exists && cands_ok);
      }
    }
  }
  result.details.push_back("cube: " + std::to_string(cube_cases) + " cases, " +
                           std::to_string(cube_bad) + " counterexamples");
  result.passed = result.passed && cube_bad == 0;
  return result;
}

CriterionResult CheckDeterminism(const AcceptanceOptions& options) {
  CriterionResult result{.number = 8, .title = "determinism", .passed = true};
  if (options.cli.empty() || !std::filesystem::exists(options.cli)) {
    result.passed = false;
    result.details.push_back("command-line tool not found: " + options.cli.string());
    return result;
  }
  const std::filesystem::path base =
      options.work_dir / ("setsize-determinism-" + std::to_string(options.seed));
  std::filesystem::remove_all(base);
  struct Run {
    std::string args;
    std::string format;
  };
  const std::vector<Run> runs = {
      {"--estimator collision --n 65536 --w 16,256,4096 --eps 0.5,1 "
       "--trials 60 --seed 11",
       "csv"},
      {"--estimator unrestricted_adaptive --n 65536 --w 1,64,4096 --eps 0.5,1 "
       "--trials 40 --seed 12",
       "json"},
      {"--estimator cube_sample_adaptive --cube-d 12 --w 16,256 --eps 1 "
       "--trials 40 --seed 13",
       "csv"},
  };
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto dir = base / (std::to_string(k) + "-" + std::to_string(rep));
      const std::string cmd = "'" + options.cli.string() + "' bench " +
                              runs[k].args + " --threads 4 --format " +
                              runs[k].format + " --out '" + dir.string() +
                              "' > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) {
        result.passed = false;
        result.details.push_back("bench run failed: " + cmd);
        continue;
      }
      outputs[rep] = slurp(dir / ("reports." + runs[k].format)) +
                     slurp(dir / ("summary." + runs[k].format));
    }
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
    result.passed = result.passed && same;
    result.details.push_back(std::string(same ? "identical" : "DIFFERENT") +
                             " output (" + std::to_string(outputs[0].size()) +
                             " bytes): " + runs[k].args);
  }
  std::filesystem::remove_all(base);
  return result;
}

std::vector<CriterionResult> RunAcceptance(const AcceptanceOptions& options,
                                           std::ostream& out,
                                           std::ostream* log) {
  std::vector<CriterionResult> results;
  auto selected = [&](int k) {
    return options.only.empty() ||
           std::find(options.only.begin(), options.only.end(), k) !=
               options.only.end();
  };
  for (int k = 1; k <= 8; ++k) {
    if (!selected(k)) continue;
    const auto start = Clock::now();
    CriterionResult r;
    switch (k) {
      case 1: r = CheckSuccessContract(options, log); break;
      case 2: r = CheckExactRecovery(options); break;
      case 3: r = CheckScalingLaws(options, log); break;
      case 4: r = CheckExactTelescoping(options); break;
      case 5: r = CheckWindowMathematics(); break;
      case 6: r = CheckIndistinguishability(options); break;
      case 7: r = CheckSplittingLemmas(); break;
      case 8: r = CheckDeterminism(options); break;
    }
    r.seconds = SecondsSince(start);
    out << (r.passed ? "PASS" : "FAIL") << " criterion " << r.number << ": "
        << r.title << " (" << Fixed(r.seconds, 1) << " s)\n";
    for (const std::string& line : r.details) out << "    " << line << '\n';
    out.flush();
    results.push_back(std::move(r));
  }
  return results;
}

bool AllPassed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

}  // namespace setsize
