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
#include "core/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"

namespace ranknull {

namespace {

std::string format_csv_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void append_cell(std::string& line, const std::optional<double>& value) {
  line += ',';
  if (value.has_value()) line += format_csv_double(*value);
}

// Every adjustment is attempted; the ones a metric or a degenerate
// null does not support simply leave their cells empty.
void derive_adjustments(ResultRow& row, const MetricDefinition& metric,
                        const NullStatistics& stats, std::size_t n,
                        bool have_variance) {
  const MetricValue value{row.value, metric, n};
  row.direction = metric.direction;
  row.z_orientation_flipped = metric.direction == Direction::kDecreasing;
  try {
    row.adjusted_index = adjusted_index(value, stats);
  } catch (const Error&) {
  }
  if (have_variance) {
    try {
      const double raw = z_adjust(value, stats);
      row.z_raw = raw;
      row.z = oriented_z(metric, raw);
      row.phi_z = phi(*row.z);
    } catch (const Error&) {
    }
  }
  try {
    row.expectation_adjusted = expectation_adjust(value, stats);
  } catch (const Error&) {
  }
  if (const auto bound = adjusted_index_lower_bound(metric, stats)) {
    row.lower_bound = bound;
  }
}

}  // namespace

void ResultTable::add_evaluated(const std::string& label,
                                const MetricDefinition& metric,
                                const RankSet& ranks,
                                const NullStatistics& null_stats) {
  if (null_stats.metric_name != metric.name) {
    throw Error(ErrorCode::kInvalidArgument,
                "null statistics are for \"" + null_stats.metric_name +
                    "\", not \"" + metric.name + "\"");
  }
  ResultRow row;
  row.label = label;
  row.metric = metric.name;
  row.n = ranks.size();
  row.value = evaluate(metric, ranks).value;
  row.expectation = null_stats.expectation;
  row.variance = null_stats.variance;
  row.null_method = std::string(null_method_name(null_stats.method));
  derive_adjustments(row, metric, null_stats, ranks.size(), true);
  rows_.push_back(std::move(row));
}

void ResultTable::add_adhoc(const std::string& label,
                            const MetricDefinition& metric, double value,
                            std::size_t n, std::optional<double> expectation,
                            std::optional<double> variance,
                            const std::string& null_method) {
  ResultRow row;
  row.label = label;
  row.metric = metric.name;
  row.n = n;
  row.value = value;
  row.expectation = expectation;
  row.variance = variance;
  row.null_method = null_method;
  row.direction = metric.direction;
  row.z_orientation_flipped = metric.direction == Direction::kDecreasing;
  if (expectation.has_value()) {
    NullStatistics stats;
    stats.expectation = *expectation;
    stats.variance = variance.value_or(0.0);
    stats.metric_name = metric.name;
    derive_adjustments(row, metric, stats, n, variance.has_value());
  }
  rows_.push_back(std::move(row));
}

std::string ResultTable::to_csv() const {
  std::string out =
      "label,metric,n,value,expectation,variance,null_method,"
      "adjusted_index,z,phi_z,expectation_adjusted,lower_bound\n";
  for (const auto& row : rows_) {
    std::string line = csv_escape(row.label);
    line += ',';
    line += csv_escape(row.metric);
    line += ',';
    line += std::to_string(row.n);
    line += ',';
    line += format_csv_double(row.value);
    append_cell(line, row.expectation);
    append_cell(line, row.variance);
    line += ',';
    line += csv_escape(row.null_method);
    append_cell(line, row.adjusted_index);
    append_cell(line, row.z);
    append_cell(line, row.phi_z);
    append_cell(line, row.expectation_adjusted);
    append_cell(line, row.lower_bound);
    out += line;
    out += '\n';
  }
  return out;
}

std::string ResultTable::to_json() const {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  const auto cell = [](const std::optional<double>& value) {
    return value.has_value() ? nlohmann::ordered_json(*value)
                             : nlohmann::ordered_json(nullptr);
  };
  for (const auto& row : rows_) {
    nlohmann::ordered_json item;
    item["label"] = row.label;
    item["metric"] = row.metric;
    item["n"] = row.n;
    item["value"] = row.value;
    item["expectation"] = cell(row.expectation);
    item["variance"] = cell(row.variance);
    item["null_method"] = row.null_method.empty()
                              ? nlohmann::ordered_json(nullptr)
                              : nlohmann::ordered_json(row.null_method);
    item["adjusted_index"] = cell(row.adjusted_index);
    item["z"] = cell(row.z);
    item["phi_z"] = cell(row.phi_z);
    item["expectation_adjusted"] = cell(row.expectation_adjusted);
    item["lower_bound"] = cell(row.lower_bound);
    item["z_raw"] = cell(row.z_raw);
    item["direction"] = row.direction == Direction::kIncreasing
                            ? "increasing"
                            : "decreasing";
    item["z_orientation_flipped"] = row.z_orientation_flipped;
    rows.push_back(std::move(item));
  }
  return rows.dump(2) + "\n";
}

}  // namespace ranknull
