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
#include <cmath>
#include <vector>

#include <doctest.h>

#include "core/error.hpp"
#include "core/metrics.hpp"
#include "core/null_models.hpp"
#include "core/simulate.hpp"

namespace {

using ranknull::Error;
using ranknull::ErrorCode;
using ranknull::RankerKind;
using ranknull::RankSet;
using ranknull::simulate_ranks;
using ranknull::SyntheticRankerSpec;

SyntheticRankerSpec make_spec(RankerKind kind, std::size_t num_tasks,
                              std::int64_t size, std::uint64_t seed,
                              double separation = 0.0) {
  SyntheticRankerSpec spec;
  spec.kind = kind;
  spec.separation = separation;
  spec.num_tasks = num_tasks;
  spec.candidate_size = size;
  spec.seed = seed;
  return spec;
}

double metric_of(const RankSet& ranks, const char* name) {
  return ranknull::evaluate(ranknull::find_metric(name), ranks).value;
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("oracle always ranks first") {
  const RankSet ranks =
      simulate_ranks(make_spec(RankerKind::kOracle, 50, 14, 9));
  CHECK(ranks.size() == 50);
  for (const auto& task : ranks.tasks()) {
    CHECK(task.rank == 1.0);
    CHECK(task.num_candidates == 14);
  }
  CHECK(metric_of(ranks, "mrr") == 1.0);
}

TEST_CASE("uniform ranker is reproducible and uniform") {
  const SyntheticRankerSpec spec =
      make_spec(RankerKind::kUniformRandom, 20000, 14, 123);
  const RankSet a = simulate_ranks(spec);
  const RankSet b = simulate_ranks(spec);
  CHECK(a.ranks() == b.ranks());

  const RankSet other = simulate_ranks(
      make_spec(RankerKind::kUniformRandom, 20000, 14, 124));
  CHECK(a.ranks() != other.ranks());

  // The sample mean rank must sit within 4 standard errors of the
  // uniform expectation; this is the null model by construction.
  const double mean = metric_of(a, "mr");
  const double expectation = ranknull::expected_rank(14);
  const double se = std::sqrt(ranknull::rank_variance(14) / 20000.0);
  CHECK(std::fabs(mean - expectation) <= 4.0 * se);

  // Every rank is in range and every value of a small support shows up.
  std::vector<int> counts(15, 0);
  for (const auto& task : a.tasks()) {
    REQUIRE(task.rank >= 1.0);
    REQUIRE(task.rank <= 14.0);
    counts[static_cast<int>(task.rank)]++;
  }
  for (int r = 1; r <= 14; ++r) CHECK(counts[r] > 0);
}

TEST_CASE("task order does not depend on evaluation history") {
  // The same (seed, task index) pair gives the same rank regardless of
  // how many tasks the cell asks for.
  const RankSet small =
      simulate_ranks(make_spec(RankerKind::kUniformRandom, 10, 30, 5));
  const RankSet large =
      simulate_ranks(make_spec(RankerKind::kUniformRandom, 200, 30, 5));
  for (std::size_t i = 0; i < small.size(); ++i) {
    CHECK(small.tasks()[i].rank == large.tasks()[i].rank);
  }
}

TEST_CASE("gaussian ranker strength ordering") {
  const RankSet weak = simulate_ranks(
      make_spec(RankerKind::kGaussianSeparation, 4000, 100, 31, 0.5));
  const RankSet strong = simulate_ranks(
      make_spec(RankerKind::kGaussianSeparation, 4000, 100, 31, 4.0));
  CHECK(metric_of(strong, "mrr") > metric_of(weak, "mrr"));
  CHECK(metric_of(strong, "mr") < metric_of(weak, "mr"));
  // d = 4 separates scores by four standard deviations: most tasks hit
  // the first rank.
  CHECK(metric_of(strong, "hits@1") > 0.5);
}

TEST_CASE("gaussian ranker at zero separation matches the null") {
  const RankSet ranks = simulate_ranks(
      make_spec(RankerKind::kGaussianSeparation, 20000, 14, 77, 0.0));
  const double mean = metric_of(ranks, "mr");
  const double expectation = ranknull::expected_rank(14);
  const double se = std::sqrt(ranknull::rank_variance(14) / 20000.0);
  CHECK(std::fabs(mean - expectation) <= 4.0 * se);
}

TEST_CASE("gaussian mrr decreases with candidate count") {
  double previous = 2.0;
  for (std::int64_t n : {14, 104, 1000}) {
    const RankSet ranks = simulate_ranks(
        make_spec(RankerKind::kGaussianSeparation, 4000, n, 13, 2.0));
    const double mrr = metric_of(ranks, "mrr");
    CHECK(mrr < previous);
    previous = mrr;
  }
}

TEST_CASE("spec validation") {
  try {
    simulate_ranks(make_spec(RankerKind::kOracle, 0, 14, 1));
    FAIL("expected invalid-argument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  try {
    simulate_ranks(make_spec(RankerKind::kUniformRandom, 5, 0, 1));
    FAIL("expected invalid-size");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidSize);
  }
  try {
    simulate_ranks(
        make_spec(RankerKind::kGaussianSeparation, 5, 14, 1, -1.0));
    FAIL("expected invalid-argument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  // N = 1 is legal and forces rank 1 everywhere.
  const RankSet trivial = simulate_ranks(
      make_spec(RankerKind::kGaussianSeparation, 5, 1, 1, 2.0));
  for (const auto& task : trivial.tasks()) CHECK(task.rank == 1.0);
}

TEST_CASE("kind names round trip") {
  for (RankerKind kind : {RankerKind::kOracle, RankerKind::kUniformRandom,
                          RankerKind::kGaussianSeparation}) {
    CHECK(ranknull::ranker_kind_from_name(ranknull::ranker_kind_name(kind)) ==
          kind);
  }
  try {
    ranknull::ranker_kind_from_name("psychic");
    FAIL("expected invalid-argument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

}  // TEST_SUITE
