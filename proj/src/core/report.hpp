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
#ifndef RANKNULL_CORE_REPORT_HPP_
#define RANKNULL_CORE_REPORT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "core/adjustments.hpp"
#include "core/metrics.hpp"
#include "core/null_models.hpp"
#include "core/ranking.hpp"

namespace ranknull {

/// One row of the long-format result table, keyed by (label, metric).
/// Columns that do not apply to a metric (or that a degenerate null
/// makes undefined) stay empty rather than failing the whole table.
struct ResultRow {
  std::string label;
  std::string metric;
  std::size_t n = 0;
  double value = 0.0;
  std::optional<double> expectation;
  std::optional<double> variance;
  std::string null_method;
  std::optional<double> adjusted_index;
  std::optional<double> z;  // orientation-normalized: larger is better
  std::optional<double> phi_z;
  std::optional<double> expectation_adjusted;
  std::optional<double> lower_bound;
  // Reporting metadata (JSON only; the CSV column set is fixed).
  std::optional<double> z_raw;
  Direction direction = Direction::kIncreasing;
  bool z_orientation_flipped = false;
};

/// Accumulates rows and renders them. CSV uses the fixed column order
///   label,metric,n,value,expectation,variance,null_method,
///   adjusted_index,z,phi_z,expectation_adjusted,lower_bound
/// with 12 significant digits; JSON carries full precision plus the
/// orientation metadata.
class ResultTable {
 public:
  /// Evaluates the metric on the rank set and derives every applicable
  /// adjusted column from null_stats. The stats must describe the same
  /// metric (Error(kInvalidArgument) otherwise).
  void add_evaluated(const std::string& label, const MetricDefinition& metric,
                     const RankSet& ranks, const NullStatistics& null_stats);

  /// Post-hoc row from an already-computed base value. expectation or
  /// variance may be absent; dependent columns stay empty.
  void add_adhoc(const std::string& label, const MetricDefinition& metric,
                 double value, std::size_t n,
                 std::optional<double> expectation,
                 std::optional<double> variance,
                 const std::string& null_method);

  const std::vector<ResultRow>& rows() const noexcept { return rows_; }

  std::string to_csv() const;
  std::string to_json() const;

 private:
  std::vector<ResultRow> rows_;
};

}  // namespace ranknull

#endif  // RANKNULL_CORE_REPORT_HPP_
