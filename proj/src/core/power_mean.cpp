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
#include "core/power_mean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace ranknull {

namespace {

void check_values(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptyInput, "power mean of an empty sequence");
  }
  for (const double v : values) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw Error(ErrorCode::kNonPositiveInput,
                  "power mean requires finite values > 0, got " +
                      std::to_string(v));
    }
  }
}

// Compensated accumulator: rounding error stays O(1) ulp regardless of
// sequence length. The geometric path needs this most, where error in
// the log sum is amplified by exp.
class KahanSum {
 public:
  void add(double term) {
    const double y = term - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double arithmetic(std::span<const double> values) {
  KahanSum sum;
  for (const double v : values) sum.add(v);
  return sum.value() / static_cast<double>(values.size());
}

double harmonic(std::span<const double> values) {
  KahanSum sum;
  for (const double v : values) sum.add(1.0 / v);
  return static_cast<double>(values.size()) / sum.value();
}

double geometric(std::span<const double> values) {
  KahanSum log_sum;
  for (const double v : values) log_sum.add(std::log(v));
  return std::exp(log_sum.value() / static_cast<double>(values.size()));
}

// exp((m + log(mean(exp(p log x_i - m)))) / p) with m = max_i p log x_i.
// The shift keeps the largest exponent at zero, so the sum is always
// representable even for extreme p.
double general(std::span<const double> values, double p) {
  const std::size_t n = values.size();
  double max_exponent = -std::numeric_limits<double>::infinity();
  for (const double v : values) {
    max_exponent = std::max(max_exponent, p * std::log(v));
  }
  KahanSum sum;
  for (const double v : values) {
    sum.add(std::exp(p * std::log(v) - max_exponent));
  }
  const double log_mean =
      max_exponent + std::log(sum.value() / static_cast<double>(n));
  return std::exp(log_mean / p);
}

}  // namespace

double power_mean(std::span<const double> values, double p) {
  check_values(values);
  if (std::isnan(p)) {
    throw Error(ErrorCode::kInvalidArgument, "power mean order is NaN");
  }
  if (p > kPowerMeanInfinityCutoff) {
    return *std::max_element(values.begin(), values.end());
  }
  if (p < -kPowerMeanInfinityCutoff) {
    return *std::min_element(values.begin(), values.end());
  }
  if (p == 0.0) return geometric(values);
  if (p == 1.0) return arithmetic(values);
  if (p == -1.0) return harmonic(values);
  return general(values, p);
}

}  // namespace ranknull
