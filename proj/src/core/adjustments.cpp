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
#include "core/adjustments.hpp"

#include <cmath>

#include "core/error.hpp"

namespace ranknull {

namespace {

constexpr double kDegenerateGap = 1e-15;

void check_expectation(const NullStatistics& null_stats) {
  if (!std::isfinite(null_stats.expectation)) {
    throw Error(ErrorCode::kInvalidNull, "null expectation is not finite");
  }
}

}  // namespace

double expectation_adjust(const MetricValue& value,
                          const NullStatistics& null_stats) {
  if (value.metric.direction != Direction::kDecreasing) {
    throw Error(ErrorCode::kAdjustmentNotApplicable,
                "expectation adjustment applies to rank-scale metrics "
                "([1, inf), decreasing); \"" +
                    value.metric.name + "\" is not one");
  }
  check_expectation(null_stats);
  if (null_stats.expectation <= 0.0) {
    throw Error(ErrorCode::kInvalidNull,
                "null expectation must be positive to divide by, got " +
                    std::to_string(null_stats.expectation));
  }
  return value.value / null_stats.expectation;
}

double adjusted_index(const MetricValue& value,
                      const NullStatistics& null_stats, double optimum) {
  check_expectation(null_stats);
  const double e = null_stats.expectation;
  if (std::fabs(optimum - e) < kDegenerateGap) {
    throw Error(ErrorCode::kDegenerateAdjustment,
                "optimum and null expectation coincide; the index is "
                "undefined");
  }
  if (value.metric.direction == Direction::kIncreasing) {
    return (value.value - e) / (optimum - e);
  }
  return (e - value.value) / (e - optimum);
}

double z_adjust(const MetricValue& value, const NullStatistics& null_stats) {
  check_expectation(null_stats);
  if (!std::isfinite(null_stats.variance) || null_stats.variance < 0.0) {
    throw Error(ErrorCode::kInvalidNull, "null variance is invalid");
  }
  if (null_stats.variance == 0.0) {
    throw Error(ErrorCode::kZeroVariance,
                "null variance is zero; the standard score is undefined");
  }
  return (value.value - null_stats.expectation) /
         std::sqrt(null_stats.variance);
}

double oriented_z(const MetricDefinition& metric, double raw_z) {
  return metric.direction == Direction::kDecreasing ? -raw_z : raw_z;
}

double phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::optional<double> adjusted_index_lower_bound(
    const MetricDefinition& metric, const NullStatistics& null_stats) {
  const double e = null_stats.expectation;
  if (metric.direction == Direction::kIncreasing) {
    // Worst case value 0 inserted into (v - E)/(1 - E).
    if (!std::isfinite(e) || std::fabs(1.0 - e) < kDegenerateGap) {
      return std::nullopt;
    }
    return -e / (1.0 - e);
  }
  // Of the decreasing metrics only the arithmetic mean rank has a
  // sharp bound: ranks max out at N_i, which lands the index at -1.
  if (metric.f.kind == RankTransformKind::kIdentity && metric.p == 1.0 &&
      metric.g == PostTransform::kIdentity) {
    return -1.0;
  }
  return std::nullopt;
}

}  // namespace ranknull
