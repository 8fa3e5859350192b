/*
 * Copyright 2026 The ranknull authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Release gate for the library: ten standalone checks, each printing
// exactly one PASS or FAIL line. Everything an assertion depends on is
// recomputed here from first principles (exhaustive enumeration,
// quadrature, long double summation); nothing trusts the code under
// test for its own expected values.
//
//   acceptance              runs every criterion
//   acceptance --criterion N   runs one (repeatable)
//
// Exit status is 0 only if every selected criterion passes.

#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cinttypes>
#include <cstdarg>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "core/adjustments.hpp"
#include "core/constants_db.hpp"
#include "core/error.hpp"
#include "core/metrics.hpp"
#include "core/null_models.hpp"
#include "core/power_mean.hpp"
#include "core/ranking.hpp"
#include "core/report.hpp"
#include "core/simulate.hpp"

#include "oracles.hpp"

namespace {

using ranknull::find_metric;
using ranknull::MetricDefinition;
using ranknull::MetricValue;
using ranknull::MrrMode;
using ranknull::NullStatistics;
using ranknull::RankingTask;
using ranknull::RankSet;
using ranknull::SyntheticRankerSpec;

struct CriterionResult {
  bool pass = false;
  std::string detail;
};

CriterionResult pass_with(std::string detail) { return {true, std::move(detail)}; }
CriterionResult fail_with(std::string detail) { return {false, std::move(detail)}; }

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return buffer;
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

RankSet uniform_random_set(std::mt19937_64& rng, std::int64_t max_tasks,
                           std::int64_t min_size, std::int64_t max_size) {
  const std::int64_t n = testoracle::rand_int(rng, 1, max_tasks);
  std::vector<RankingTask> tasks;
  tasks.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t size = testoracle::rand_int(rng, min_size, max_size);
    tasks.push_back(
        {static_cast<double>(testoracle::rand_int(rng, 1, size)), size});
  }
  return RankSet(std::move(tasks));
}

/* ------------------------------------------------------------------ */
/* 1: closed-form moments equal exhaustive enumeration                 */

// Exact moments of mr, mrr, hits@1, hits@3 and hits@10 under uniform
// ranks, by one sweep over all prod(N_i) rank combinations with the
// naive textbook formulas. Deliberately shares no code with the
// library it checks.
struct EnumeratedMoments {
  std::array<double, 5> expectation{};
  std::array<double, 5> variance{};
};

EnumeratedMoments enumerate_null_moments(
    const std::vector<std::int64_t>& sizes) {
  const std::size_t n = sizes.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> ranks(n, 1.0);

  std::array<long double, 5> sum{};
  std::array<long double, 5> sum_sq{};
  std::uint64_t total = 0;
  while (true) {
    double rank_sum = 0.0;
    double reciprocal_sum = 0.0;
    double at_1 = 0.0;
    double at_3 = 0.0;
    double at_10 = 0.0;
    for (const double r : ranks) {
      rank_sum += r;
      reciprocal_sum += 1.0 / r;
      if (r <= 1.0) at_1 += 1.0;
      if (r <= 3.0) at_3 += 1.0;
      if (r <= 10.0) at_10 += 1.0;
    }
    const std::array<double, 5> value = {
        rank_sum * inv_n, reciprocal_sum * inv_n, at_1 * inv_n, at_3 * inv_n,
        at_10 * inv_n};
    for (std::size_t m = 0; m < 5; ++m) {
      sum[m] += value[m];
      sum_sq[m] += static_cast<long double>(value[m]) * value[m];
    }
    ++total;

    std::size_t i = 0;
    for (; i < n; ++i) {
      if (ranks[i] < static_cast<double>(sizes[i])) {
        ranks[i] += 1.0;
        break;
      }
      ranks[i] = 1.0;
    }
    if (i == n) break;
  }

  EnumeratedMoments out;
  for (std::size_t m = 0; m < 5; ++m) {
    const long double mean = sum[m] / static_cast<long double>(total);
    out.expectation[m] = static_cast<double>(mean);
    out.variance[m] = static_cast<double>(
        sum_sq[m] / static_cast<long double>(total) - mean * mean);
  }
  return out;
}

CriterionResult criterion_closed_forms() {
  Stopwatch watch;
  std::mt19937_64 rng(101);
  const std::vector<std::string> names = {"mr", "mrr", "hits@1", "hits@3",
                                          "hits@10"};
  std::vector<MetricDefinition> metrics;
  for (const std::string& name : names) metrics.push_back(find_metric(name));

  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const testoracle::RandomInstance instance =
        testoracle::random_instance(rng, 6, 12, 120000);
    const EnumeratedMoments truth = enumerate_null_moments(instance.sizes);
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      const NullStatistics closed = ranknull::null_statistics_closed(
          metrics[m], instance.sizes, MrrMode::kExactDiscrete);
      worst =
          std::max(worst, rel_diff(closed.expectation, truth.expectation[m]));
      worst = std::max(worst, rel_diff(closed.variance, truth.variance[m]));
    }
  }
  const double elapsed = watch.seconds();
  if (worst > 1e-10) {
    return fail_with(
        fmt("closed form deviates from enumeration by %.3e relative "
            "(allowed 1e-10)",
            worst));
  }
  if (elapsed >= 10.0) {
    return fail_with(fmt("enumeration took %.1fs (budget 10s)", elapsed));
  }
  return pass_with(fmt("200 instances x 5 metrics vs full enumeration, "
                       "max rel err %.2e, %.1fs",
                       worst, elapsed));
}

/* ------------------------------------------------------------------ */
/* 2: Monte Carlo estimates calibrated against closed forms            */

CriterionResult criterion_monte_carlo_calibration() {
  Stopwatch watch;
  const std::vector<std::int64_t> sizes(1000, 100);
  const std::uint64_t samples = 10000;
  const std::vector<std::string> names = {"mr", "mrr", "hits@10"};

  std::string counts;
  for (const std::string& name : names) {
    const MetricDefinition metric = find_metric(name);
    const NullStatistics closed = ranknull::null_statistics_closed(
        metric, sizes, MrrMode::kExactDiscrete);
    const double se =
        std::sqrt(closed.variance / static_cast<double>(samples));
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const NullStatistics mc = ranknull::null_statistics_monte_carlo(
          metric, sizes, samples, seed);
      if (std::abs(mc.expectation - closed.expectation) <= 3.0 * se) {
        ++within;
      }
    }
    counts += fmt("%s%s %d/100", counts.empty() ? "" : ", ", name.c_str(),
                  within);
    if (within < 98) {
      return fail_with(fmt("%s within 3 SE for only %d of 100 seeds "
                           "(needed 98)",
                           name.c_str(), within));
    }
  }
  const double elapsed = watch.seconds();
  if (elapsed >= 60.0) {
    return fail_with(fmt("calibration took %.1fs (budget 60s)", elapsed));
  }
  return pass_with(fmt("seeds within 3 SE: %s, %.1fs", counts.c_str(),
                       elapsed));
}

/* ------------------------------------------------------------------ */
/* 3: both reciprocal-rank formulations agree                          */

CriterionResult criterion_dual_mrr() {
  std::mt19937_64 rng(303);
  const MetricDefinition harmonic = find_metric("mrr");
  const MetricDefinition colloquial = find_metric("mrr_colloquial");
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const RankSet set = uniform_random_set(rng, 200, 1, 500);
    const double a = ranknull::evaluate(harmonic, set).value;
    const double b = ranknull::evaluate(colloquial, set).value;
    worst = std::max(worst, rel_diff(a, b));
  }
  if (worst > 1e-12) {
    return fail_with(
        fmt("mrr and mrr_colloquial diverge by %.3e relative", worst));
  }
  return pass_with(
      fmt("1000 rank sets, max relative divergence %.2e", worst));
}

/* ------------------------------------------------------------------ */
/* 4: power means are monotone in the exponent                         */

CriterionResult criterion_power_mean_monotonicity() {
  std::mt19937_64 rng(404);
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> grid = {-inf, -2.0, -1.0, 0.0, 1.0, 2.0, inf};

  for (int i = 0; i < 1000; ++i) {
    const std::int64_t n = testoracle::rand_int(rng, 1, 20);
    const bool constant = n == 1 || testoracle::rand_int(rng, 0, 9) == 0;
    std::vector<double> values(static_cast<std::size_t>(n));
    const double base = 0.1 + 99.9 * testoracle::rand_unit(rng);
    for (double& v : values) {
      v = constant ? base : 0.1 + 99.9 * testoracle::rand_unit(rng);
    }
    const bool is_constant =
        std::all_of(values.begin(), values.end(),
                    [&](double v) { return v == values.front(); });

    double prev = ranknull::power_mean(values, grid.front());
    for (std::size_t j = 1; j < grid.size(); ++j) {
      const double next = ranknull::power_mean(values, grid[j]);
      if (is_constant) {
        if (rel_diff(prev, next) > 1e-13) {
          return fail_with(fmt("constant sequence drifts between p=%g and "
                               "p=%g (%.3e relative)",
                               grid[j - 1], grid[j], rel_diff(prev, next)));
        }
      } else if (!(next > prev)) {
        return fail_with(fmt("M_p not strictly increasing between p=%g and "
                             "p=%g on a non-constant sequence (%.17g vs "
                             "%.17g)",
                             grid[j - 1], grid[j], prev, next));
      }
      prev = next;
    }
  }
  return pass_with(
      "1000 sequences over p in {-inf,-2,-1,0,1,2,inf}: ordering holds, "
      "strict off the diagonal");
}

/* ------------------------------------------------------------------ */
/* 5: adjustments are affine, so post hoc equals inline, bit for bit   */

bool same_cell(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a.has_value()) return true;
  return *a == *b;
}

bool same_row(const ranknull::ResultRow& a, const ranknull::ResultRow& b) {
  return a.metric == b.metric && a.n == b.n && a.value == b.value &&
         same_cell(a.expectation, b.expectation) &&
         same_cell(a.variance, b.variance) &&
         a.null_method == b.null_method &&
         same_cell(a.adjusted_index, b.adjusted_index) &&
         same_cell(a.z, b.z) && same_cell(a.phi_z, b.phi_z) &&
         same_cell(a.expectation_adjusted, b.expectation_adjusted) &&
         same_cell(a.lower_bound, b.lower_bound) &&
         same_cell(a.z_raw, b.z_raw) && a.direction == b.direction &&
         a.z_orientation_flipped == b.z_orientation_flipped;
}

CriterionResult criterion_affine_post_hoc() {
  std::mt19937_64 rng(505);
  const std::filesystem::path db =
      std::filesystem::temp_directory_path() /
      ("ranknull_acceptance_" + std::to_string(::getpid()) + ".jsonl");
  std::error_code ec;
  std::filesystem::remove(db, ec);

  std::size_t compared = 0;
  for (int i = 0; i < 100; ++i) {
    const RankSet set = uniform_random_set(rng, 40, 1, 60);
    const std::vector<std::int64_t> sizes = set.sizes();
    const std::string dataset = "fuzz" + std::to_string(i);
    for (const MetricDefinition& metric : ranknull::builtin_registry()) {
      const NullStatistics stats = ranknull::null_statistics_auto(
          metric, sizes, MrrMode::kExactDiscrete, 2000,
          static_cast<std::uint64_t>(1000 + i));
      const MetricValue value = ranknull::evaluate(metric, set);

      ranknull::ResultTable inline_table;
      inline_table.add_evaluated("case", metric, set, stats);

      ranknull::ResultTable post_hoc;
      post_hoc.add_adhoc("case", metric, value.value, value.n,
                         stats.expectation, stats.variance,
                         std::string(ranknull::null_method_name(stats.method)));

      if (!same_row(inline_table.rows()[0], post_hoc.rows()[0])) {
        return fail_with(fmt("post hoc row differs from inline row for %s "
                             "on instance %d",
                             metric.name.c_str(), i));
      }

      ranknull::store(ranknull::make_constants_record(dataset, "test", "both",
                                                      stats, sizes),
                      db, false);
      const ranknull::ConstantsRecord loaded =
          ranknull::lookup(dataset, "test", "both", metric.name, db);
      ranknull::ResultTable from_db;
      from_db.add_adhoc("case", metric, value.value, value.n,
                        loaded.stats.expectation, loaded.stats.variance,
                        std::string(ranknull::null_method_name(
                            loaded.stats.method)));
      if (!same_row(inline_table.rows()[0], from_db.rows()[0])) {
        return fail_with(fmt("database round trip changes the %s row on "
                             "instance %d",
                             metric.name.c_str(), i));
      }
      ++compared;
    }
  }
  std::filesystem::remove(db, ec);
  return pass_with(fmt("%zu rows bit-identical across inline, post hoc and "
                       "database paths",
                       compared));
}

/* ------------------------------------------------------------------ */
/* 6: adjusted metrics of a random ranker sit at their null center     */

CriterionResult criterion_random_ranker_calibration() {
  const std::vector<std::int64_t> grid = {14, 104, 14505};
  const std::vector<std::string> names = {"mrr", "mr", "hits@10"};
  const std::size_t num_tasks = 10000;
  const std::uint64_t seed = 2026;

  double worst_z = 0.0;
  for (const std::int64_t size : grid) {
    SyntheticRankerSpec spec;
    spec.kind = ranknull::RankerKind::kUniformRandom;
    spec.num_tasks = num_tasks;
    spec.candidate_size = size;
    spec.seed = seed;
    const RankSet set = ranknull::simulate_ranks(spec);
    const std::vector<std::int64_t> sizes(num_tasks, size);

    for (const std::string& name : names) {
      const MetricDefinition metric = find_metric(name);
      const NullStatistics stats = ranknull::null_statistics_closed(
          metric, sizes, MrrMode::kExactDiscrete);
      const MetricValue value = ranknull::evaluate(metric, set);

      const double z = ranknull::z_adjust(value, stats);
      worst_z = std::max(worst_z, std::abs(z));
      if (std::abs(z) > 3.0) {
        return fail_with(fmt("%s at N=%" PRId64 ": z = %.3f exceeds 3",
                             name.c_str(), size, z));
      }

      const double index = ranknull::adjusted_index(value, stats);
      const double index_sd =
          std::sqrt(stats.variance) / std::abs(1.0 - stats.expectation);
      if (std::abs(index) > 3.0 * index_sd) {
        return fail_with(fmt("%s at N=%" PRId64 ": adjusted index %.3e "
                             "exceeds 3 SE (%.3e)",
                             name.c_str(), size, index, 3.0 * index_sd));
      }

      if (name == "mr") {
        const double ea = ranknull::expectation_adjust(value, stats);
        const double ea_sd = std::sqrt(stats.variance) / stats.expectation;
        if (std::abs(ea - 1.0) > 3.0 * ea_sd) {
          return fail_with(fmt("expectation-adjusted mr at N=%" PRId64
                               " is %.6f, outside 1 +/- %.1e",
                               size, ea, 3.0 * ea_sd));
        }
      }
    }
  }
  return pass_with(fmt("z, adjusted index and expectation-adjusted mr all "
                       "within 3 SE of their null centers (max |z| %.2f)",
                       worst_z));
}

/* ------------------------------------------------------------------ */
/* 7: adjusted index bounds and exact anchor points                    */

CriterionResult criterion_bounds() {
  std::mt19937_64 rng(707);
  const MetricDefinition mr = find_metric("mr");
  const MetricDefinition mrr = find_metric("mrr");
  const MetricDefinition hits3 = find_metric("hits@3");

  // Adjusted mean rank stays inside [-1, 1] for anything the fuzzer
  // produces, including the all-worst-ranks extreme.
  for (int i = 0; i < 500; ++i) {
    RankSet set = uniform_random_set(rng, 60, 2, 120);
    if (i % 10 == 0) {
      std::vector<RankingTask> worst_tasks = set.tasks();
      for (RankingTask& task : worst_tasks) {
        task.rank = static_cast<double>(task.num_candidates);
      }
      set = RankSet(std::move(worst_tasks));
    }
    const NullStatistics stats = ranknull::null_statistics_closed(
        mr, set.sizes(), MrrMode::kExactDiscrete);
    const double amri =
        ranknull::adjusted_index(ranknull::evaluate(mr, set), stats);
    if (amri < -1.0 - 1e-12 || amri > 1.0 + 1e-12) {
      return fail_with(fmt("adjusted mean rank %.17g leaves [-1, 1] on "
                           "instance %d",
                           amri, i));
    }
  }

  // With no rank at or under the cutoff the adjusted hit rate equals
  // its closed-form floor exactly.
  for (int i = 0; i < 200; ++i) {
    const std::int64_t n = testoracle::rand_int(rng, 1, 50);
    std::vector<RankingTask> tasks;
    for (std::int64_t t = 0; t < n; ++t) {
      const std::int64_t size = testoracle::rand_int(rng, 5, 80);
      tasks.push_back(
          {static_cast<double>(testoracle::rand_int(rng, 4, size)), size});
    }
    const RankSet set(std::move(tasks));
    const NullStatistics stats = ranknull::null_statistics_closed(
        hits3, set.sizes(), MrrMode::kExactDiscrete);
    const double index =
        ranknull::adjusted_index(ranknull::evaluate(hits3, set), stats);
    const std::optional<double> floor =
        ranknull::adjusted_index_lower_bound(hits3, stats);
    if (!floor.has_value() || index != *floor) {
      return fail_with(fmt("all-miss adjusted hits@3 is %.17g, floor is "
                           "%.17g; expected bitwise equality",
                           index, floor.value_or(
                                      std::numeric_limits<double>::quiet_NaN())));
    }
  }

  // Perfect ranks pin every adjusted index at exactly 1.
  for (int i = 0; i < 100; ++i) {
    const std::int64_t n = testoracle::rand_int(rng, 1, 50);
    std::vector<RankingTask> tasks;
    for (std::int64_t t = 0; t < n; ++t) {
      tasks.push_back({1.0, testoracle::rand_int(rng, 2, 200)});
    }
    const RankSet set(std::move(tasks));
    for (const MetricDefinition* metric : {&mr, &mrr, &hits3}) {
      const NullStatistics stats = ranknull::null_statistics_closed(
          *metric, set.sizes(), MrrMode::kExactDiscrete);
      const double index =
          ranknull::adjusted_index(ranknull::evaluate(*metric, set), stats);
      if (index != 1.0) {
        return fail_with(fmt("%s adjusted index at perfect ranks is %.17g, "
                             "not exactly 1",
                             metric->name.c_str(), index));
      }
    }
  }

  return pass_with(
      "range held on 500 fuzzed sets; all-miss floor and perfect-rank "
      "anchor are exact");
}

/* ------------------------------------------------------------------ */
/* 8: raw reciprocal ranks collapse with candidate count, z does not   */

// max/min ratio of z across the three largest sizes, recorded from the
// first run of this criterion (seed 11) and asserted stable since.
constexpr double kZmrrRatioPin = 1.605964;

CriterionResult criterion_size_invariance() {
  Stopwatch watch;
  const std::vector<std::int64_t> grid = {14, 104, 14505, 40559};
  const std::vector<std::uint64_t> seeds = {11, 12, 13, 14, 15};
  const std::size_t num_tasks = 10000;
  const MetricDefinition mrr = find_metric("mrr");

  std::map<std::int64_t, NullStatistics> stats_by_size;
  for (const std::int64_t size : grid) {
    const std::vector<std::int64_t> sizes(num_tasks, size);
    stats_by_size.emplace(size, ranknull::null_statistics_closed(
                                    mrr, sizes, MrrMode::kExactDiscrete));
  }

  std::string ratios;
  for (const std::uint64_t seed : seeds) {
    std::map<std::int64_t, double> raw;
    std::map<std::int64_t, double> z;
    for (const std::int64_t size : grid) {
      SyntheticRankerSpec spec;
      spec.kind = ranknull::RankerKind::kGaussianSeparation;
      spec.separation = 2.0;
      spec.num_tasks = num_tasks;
      spec.candidate_size = size;
      spec.seed = seed;
      const RankSet set = ranknull::simulate_ranks(spec);
      const MetricValue value = ranknull::evaluate(mrr, set);
      raw[size] = value.value;
      z[size] = ranknull::z_adjust(value, stats_by_size.at(size));
    }

    if (!(raw[40559] < 0.5 * raw[104])) {
      return fail_with(fmt("seed %" PRIu64 ": raw mrr at N=40559 (%.4f) is "
                           "not below half of N=104 (%.4f)",
                           seed, raw[40559], raw[104]));
    }

    const auto [z_min, z_max] = std::minmax({z[104], z[14505], z[40559]});
    const double ratio = z_max / z_min;
    ratios += fmt("%s%.4f", ratios.empty() ? "" : "/", ratio);
    if (kZmrrRatioPin <= 0.0) {
      return fail_with(fmt("no pinned ratio yet; observed max/min z ratio "
                           "%.6f at seed %" PRIu64,
                           ratio, seed));
    }
    if (ratio < 0.8 * kZmrrRatioPin || ratio > 1.2 * kZmrrRatioPin) {
      return fail_with(fmt("seed %" PRIu64 ": z ratio %.4f drifted more "
                           "than 20%% from the pinned %.4f",
                           seed, ratio, kZmrrRatioPin));
    }
  }
  const double elapsed = watch.seconds();
  if (elapsed >= 300.0) {
    return fail_with(fmt("simulation took %.1fs (budget 300s)", elapsed));
  }
  return pass_with(fmt("raw mrr collapses with N while z ratios %s stay "
                       "within 20%% of the pinned %.4f, %.1fs",
                       ratios.c_str(), kZmrrRatioPin, elapsed));
}

/* ------------------------------------------------------------------ */
/* 9: continuous reciprocal-rank approximation against the exact mean  */

CriterionResult criterion_approximation_gap() {
  const MetricDefinition mrr = find_metric("mrr");

  const auto gap_at = [&](std::int64_t size) {
    const std::vector<std::int64_t> one{size};
    const testoracle::Moments exact = testoracle::enumerate_null(
        one, [&](const std::vector<double>& ranks) {
          return testoracle::mrr(ranks);
        });
    const NullStatistics continuous = ranknull::null_statistics_closed(
        mrr, one, MrrMode::kContinuous);
    return std::abs(continuous.expectation - exact.expectation) /
           exact.expectation;
  };

  const double small_gap = gap_at(2);
  const double large_gap = gap_at(40559);
  const bool small_ok = small_gap > 0.07;
  const bool large_ok = large_gap < 0.001;
  const std::string detail =
      fmt("relative gap %.4f%% at N=2 (needs > 7%%: %s); %.4f%% at N=40559 "
          "(needs < 0.1%%: %s)",
          100.0 * small_gap, small_ok ? "yes" : "no", 100.0 * large_gap,
          large_ok ? "yes" : "no");
  if (small_ok && large_ok) return pass_with(detail);
  return fail_with(detail);
}

/* ------------------------------------------------------------------ */
/* 10: normal CDF against quadrature                                   */

CriterionResult criterion_phi_accuracy() {
  double worst = 0.0;
  double worst_z = 0.0;
  for (int j = 0; j < 1000; ++j) {
    const double z = -8.0 + 16.0 * static_cast<double>(j) / 999.0;
    const double diff = std::abs(ranknull::phi(z) - testoracle::phi(z));
    if (diff > worst) {
      worst = diff;
      worst_z = z;
    }
  }
  if (worst > 1e-10) {
    return fail_with(
        fmt("phi deviates from quadrature by %.3e at z=%.3f", worst,
            worst_z));
  }
  return pass_with(fmt("1000-point grid on [-8, 8], max abs err %.2e",
                       worst));
}

/* ------------------------------------------------------------------ */

struct Criterion {
  int id;
  const char* title;
  CriterionResult (*run)();
};

const Criterion kCriteria[] = {
    {1, "closed-form oracle equivalence", criterion_closed_forms},
    {2, "Monte Carlo calibration", criterion_monte_carlo_calibration},
    {3, "dual reciprocal-rank identity", criterion_dual_mrr},
    {4, "power-mean inequality", criterion_power_mean_monotonicity},
    {5, "affine post-hoc property", criterion_affine_post_hoc},
    {6, "random-ranker calibration", criterion_random_ranker_calibration},
    {7, "adjusted-index bounds", criterion_bounds},
    {8, "size-invariance phenomenon", criterion_size_invariance},
    {9, "approximation gap", criterion_approximation_gap},
    {10, "normal CDF accuracy", criterion_phi_accuracy},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    std::string value;
    if (arg == "--criterion" && i + 1 < argc) {
      value = argv[++i];
    } else if (arg.rfind("--criterion=", 0) == 0) {
      value = arg.substr(std::strlen("--criterion="));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
    try {
      selected.insert(std::stoi(value));
    } catch (const std::exception&) {
      std::fprintf(stderr, "invalid criterion id: %s\n", value.c_str());
      return 2;
    }
  }

  bool all_pass = true;
  for (const Criterion& criterion : kCriteria) {
    if (!selected.empty() && selected.count(criterion.id) == 0) continue;
    CriterionResult result;
    try {
      result = criterion.run();
    } catch (const ranknull::Error& e) {
      result = fail_with(std::string("unexpected error: ") + e.what());
    } catch (const std::exception& e) {
      result = fail_with(std::string("unexpected exception: ") + e.what());
    }
    std::printf("criterion %d: %s - %s (%s)\n", criterion.id,
                result.pass ? "PASS" : "FAIL", criterion.title,
                result.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && result.pass;
  }
  return all_pass ? 0 : 1;
}
