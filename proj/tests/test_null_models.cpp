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
#include <random>
#include <vector>

#include <doctest.h>

#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/metrics.hpp"
#include "core/null_models.hpp"

#include "oracles.hpp"

namespace {

using ranknull::Error;
using ranknull::ErrorCode;
using ranknull::find_metric;
using ranknull::MrrMode;
using ranknull::NullMethod;
using ranknull::NullStatistics;
using ranknull::null_statistics_closed;
using ranknull::null_statistics_monte_carlo;

bool close_rel(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

TEST_SUITE("null_models") {

TEST_CASE("harmonic sums") {
  CHECK(ranknull::harmonic_number(1) == 1.0);
  CHECK(ranknull::harmonic_number(2) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(ranknull::harmonic_number(5) ==
        doctest::Approx(137.0 / 60.0).epsilon(1e-15));
  CHECK(ranknull::harmonic_number_squares(3) ==
        doctest::Approx(49.0 / 36.0).epsilon(1e-15));

  // The asymptotic branch must continue the exact sum seamlessly.
  const std::int64_t n = 1'200'000;  // past the exact-summation cutoff
  long double exact = 0.0L;
  long double exact_sq = 0.0L;
  for (std::int64_t j = 1; j <= n; ++j) {
    exact += 1.0L / static_cast<long double>(j);
    exact_sq += 1.0L / (static_cast<long double>(j) * j);
  }
  CHECK(close_rel(ranknull::harmonic_number(n),
                  static_cast<double>(exact), 1e-13));
  CHECK(close_rel(ranknull::harmonic_number_squares(n),
                  static_cast<double>(exact_sq), 1e-13));
  CHECK(ranknull::harmonic_number(n + 1) > ranknull::harmonic_number(n));

  try {
    ranknull::harmonic_number(0);
    FAIL("expected invalid-size");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidSize);
  }
}

TEST_CASE("single rank moments") {
  CHECK(ranknull::expected_rank(14) == 7.5);
  CHECK(ranknull::expected_rank(1) == 1.0);
  CHECK(ranknull::rank_variance(1) == 0.0);
  CHECK(ranknull::rank_variance(2) == 0.25);
  CHECK(ranknull::rank_variance(14) ==
        doctest::Approx((14.0 * 14.0 - 1.0) / 12.0).epsilon(1e-15));
  for (std::int64_t bad : {std::int64_t{0}, std::int64_t{-5}}) {
    try {
      ranknull::expected_rank(bad);
      FAIL("expected invalid-size");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidSize);
    }
  }
}

TEST_CASE("closed forms on specific sizes") {
  const std::vector<std::int64_t> sizes{2, 3};
  const NullStatistics mr = null_statistics_closed(find_metric("mr"), sizes);
  CHECK(mr.expectation == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(mr.variance ==
        doctest::Approx(0.22916666666666666).epsilon(1e-15));
  CHECK(mr.method == NullMethod::kClosedExact);
  CHECK(mr.samples == 0);
  CHECK(mr.metric_name == "mr");
  CHECK(mr.sizes_digest == ranknull::sizes_digest(sizes));

  const std::vector<std::int64_t> single{14};
  const NullStatistics mrr =
      null_statistics_closed(find_metric("mrr"), single);
  CHECK(close_rel(mrr.expectation, 0.23225445189730903, 1e-15));
  CHECK(close_rel(mrr.variance, 0.058629000931062186, 1e-15));

  // Both reciprocal-mean readings share the per-task law.
  const NullStatistics colloquial =
      null_statistics_closed(find_metric("mrr_colloquial"), single);
  CHECK(colloquial.expectation == mrr.expectation);
  CHECK(colloquial.variance == mrr.variance);

  const std::vector<std::int64_t> hits_sizes{5, 20};
  const NullStatistics hits =
      null_statistics_closed(find_metric("hits@10"), hits_sizes);
  CHECK(hits.expectation == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(hits.variance == doctest::Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("closed forms match exhaustive enumeration") {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 25; ++it) {
    const testoracle::RandomInstance inst =
        testoracle::random_instance(rng, 4, 8, 20000);
    const testoracle::Moments mr_true = testoracle::enumerate_null(
        inst.sizes, [](const std::vector<double>& r) {
          return testoracle::mr(r);
        });
    const testoracle::Moments mrr_true = testoracle::enumerate_null(
        inst.sizes, [](const std::vector<double>& r) {
          return testoracle::mrr(r);
        });
    const testoracle::Moments hits_true = testoracle::enumerate_null(
        inst.sizes, [](const std::vector<double>& r) {
          return testoracle::hits_at(r, 3);
        });
    const NullStatistics mr =
        null_statistics_closed(find_metric("mr"), inst.sizes);
    const NullStatistics mrr =
        null_statistics_closed(find_metric("mrr"), inst.sizes);
    const NullStatistics hits =
        null_statistics_closed(find_metric("hits@3"), inst.sizes);
    CHECK(close_rel(mr.expectation, mr_true.expectation, 1e-12));
    CHECK(close_rel(mrr.expectation, mrr_true.expectation, 1e-12));
    CHECK(close_rel(hits.expectation, hits_true.expectation, 1e-12));
    CHECK(std::fabs(mr.variance - mr_true.variance) <=
          1e-12 * std::max(1.0, mr_true.variance));
    CHECK(std::fabs(mrr.variance - mrr_true.variance) <= 1e-12);
    CHECK(std::fabs(hits.variance - hits_true.variance) <= 1e-12);
  }
}

TEST_CASE("continuous reciprocal-mean approximation") {
  const std::vector<std::int64_t> two{2};
  const NullStatistics at2 = null_statistics_closed(
      find_metric("mrr"), two, MrrMode::kContinuous);
  CHECK(at2.expectation == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(at2.variance ==
        doctest::Approx(0.5 - std::log(2.0) * std::log(2.0))
            .epsilon(1e-14));
  CHECK(at2.method == NullMethod::kClosedContinuous);

  const std::vector<std::int64_t> fourteen{14};
  const NullStatistics at14 = null_statistics_closed(
      find_metric("mrr"), fourteen, MrrMode::kContinuous);
  CHECK(close_rel(at14.expectation, 0.2030044099704045, 1e-15));

  // The approximation undershoots the discrete value at every finite N.
  const NullStatistics exact = null_statistics_closed(
      find_metric("mrr"), fourteen, MrrMode::kExactDiscrete);
  CHECK(at14.expectation < exact.expectation);

  try {
    const std::vector<std::int64_t> one{1};
    null_statistics_closed(find_metric("mrr"), one, MrrMode::kContinuous);
    FAIL("expected degenerate-size");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateSize);
  }

  // The mode switch is meaningless for non-reciprocal metrics.
  const NullStatistics mr_cont = null_statistics_closed(
      find_metric("mr"), fourteen, MrrMode::kContinuous);
  CHECK(mr_cont.method == NullMethod::kClosedExact);
  CHECK(mr_cont.expectation == 7.5);
}

TEST_CASE("closed-form coverage") {
  CHECK(ranknull::has_closed_form(find_metric("mr")));
  CHECK(ranknull::has_closed_form(find_metric("mrr")));
  CHECK(ranknull::has_closed_form(find_metric("mrr_colloquial")));
  CHECK(ranknull::has_closed_form(find_metric("hits@4")));
  for (const char* name : {"gmr", "igmr", "hmr", "imr"}) {
    CHECK_FALSE(ranknull::has_closed_form(find_metric(name)));
    try {
      const std::vector<std::int64_t> sizes{5, 5};
      null_statistics_closed(find_metric(name), sizes);
      FAIL("expected no-closed-form");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNoClosedForm);
    }
  }
}

TEST_CASE("closed-form input errors") {
  try {
    null_statistics_closed(find_metric("mr"), {});
    FAIL("expected empty-input");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyInput);
  }
  try {
    const std::vector<std::int64_t> sizes{3, 0};
    null_statistics_closed(find_metric("mr"), sizes);
    FAIL("expected invalid-size");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidSize);
  }
}

TEST_CASE("monte carlo is reproducible") {
  const std::vector<std::int64_t> sizes{6, 11, 3};
  const NullStatistics a = null_statistics_monte_carlo(
      find_metric("gmr"), sizes, 5000, 42);
  const NullStatistics b = null_statistics_monte_carlo(
      find_metric("gmr"), sizes, 5000, 42);
  CHECK(a.expectation == b.expectation);
  CHECK(a.variance == b.variance);
  CHECK(a.method == NullMethod::kMonteCarlo);
  CHECK(a.samples == 5000);
  CHECK(a.seed == 42);
  CHECK(a.metric_name == "gmr");
  CHECK(a.sizes_digest == ranknull::sizes_digest(sizes));

  const NullStatistics c = null_statistics_monte_carlo(
      find_metric("gmr"), sizes, 5000, 43);
  CHECK(c.expectation != a.expectation);

  for (std::uint64_t samples : {std::uint64_t{0}, std::uint64_t{1}}) {
    try {
      null_statistics_monte_carlo(find_metric("gmr"), sizes, samples, 0);
      FAIL("expected insufficient-samples");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInsufficientSamples);
    }
  }
}

TEST_CASE("monte carlo agrees with closed forms") {
  std::vector<std::int64_t> sizes(20, 7);
  const NullStatistics closed =
      null_statistics_closed(find_metric("mr"), sizes);
  const NullStatistics mc = null_statistics_monte_carlo(
      find_metric("mr"), sizes, 20000, 3);
  const double se = std::sqrt(closed.variance / 20000.0);
  CHECK(std::fabs(mc.expectation - closed.expectation) <= 4.0 * se);
  CHECK(close_rel(mc.variance, closed.variance, 0.1));
}

TEST_CASE("monte carlo agrees with enumeration where no closed form exists") {
  const std::vector<std::int64_t> sizes{2, 3};
  const testoracle::Moments truth = testoracle::enumerate_null(
      sizes, [](const std::vector<double>& r) {
        return testoracle::gmr(r);
      });
  const NullStatistics mc = null_statistics_monte_carlo(
      find_metric("gmr"), sizes, 40000, 7);
  const double se = std::sqrt(truth.variance / 40000.0);
  CHECK(std::fabs(mc.expectation - truth.expectation) <= 4.0 * se);
  CHECK(close_rel(mc.variance, truth.variance, 0.1));
}

TEST_CASE("auto picks the cheapest sound method") {
  const std::vector<std::int64_t> sizes{9, 4};
  const NullStatistics mr = ranknull::null_statistics_auto(
      find_metric("mr"), sizes, MrrMode::kExactDiscrete, 1000, 5);
  CHECK(mr.method == NullMethod::kClosedExact);
  CHECK(mr.samples == 0);

  const NullStatistics mrr_cont = ranknull::null_statistics_auto(
      find_metric("mrr"), sizes, MrrMode::kContinuous, 1000, 5);
  CHECK(mrr_cont.method == NullMethod::kClosedContinuous);

  const NullStatistics gmr = ranknull::null_statistics_auto(
      find_metric("gmr"), sizes, MrrMode::kExactDiscrete, 1000, 5);
  CHECK(gmr.method == NullMethod::kMonteCarlo);
  CHECK(gmr.samples == 1000);
  CHECK(gmr.seed == 5);
  CHECK(gmr.expectation ==
        null_statistics_monte_carlo(find_metric("gmr"), sizes, 1000, 5)
            .expectation);
}

TEST_CASE("names round trip") {
  for (NullMethod method : {NullMethod::kClosedExact,
                            NullMethod::kClosedContinuous,
                            NullMethod::kMonteCarlo}) {
    CHECK(ranknull::null_method_from_name(
              ranknull::null_method_name(method)) == method);
  }
  for (MrrMode mode : {MrrMode::kExactDiscrete, MrrMode::kContinuous}) {
    CHECK(ranknull::mrr_mode_from_name(ranknull::mrr_mode_name(mode)) ==
          mode);
  }
  try {
    ranknull::null_method_from_name("psychic");
    FAIL("expected invalid-argument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  try {
    ranknull::mrr_mode_from_name("quantized");
    FAIL("expected invalid-argument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

}  // TEST_SUITE
