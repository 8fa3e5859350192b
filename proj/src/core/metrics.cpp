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
#include "core/metrics.hpp"

#include <charconv>
#include <cmath>

#include "core/error.hpp"
#include "core/power_mean.hpp"

namespace ranknull {

namespace {

// Indicator outputs are 0/1, which the positive-only power mean cannot
// take; an arithmetic mean is the only aggregation that composition
// supports. "hits at k with a geometric mean" is not a metric.
double aggregate_indicator(const MetricDefinition& metric,
                           std::span<const double> ranks) {
  if (metric.p != 1.0) {
    throw Error(ErrorCode::kUnsupportedComposition,
                "indicator transform requires the arithmetic mean (p = 1)");
  }
  if (ranks.empty()) {
    throw Error(ErrorCode::kEmptyInput, "metric over an empty rank list");
  }
  double hits = 0.0;
  for (const double r : ranks) hits += metric.f(r);
  return hits / static_cast<double>(ranks.size());
}

MetricDefinition hits_at(std::int64_t k) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "hits cutoff must be >= 1, got " + std::to_string(k));
  }
  return MetricDefinition{"hits@" + std::to_string(k),
                          RankTransform::indicator(k), 1.0,
                          PostTransform::kIdentity, Direction::kIncreasing};
}

std::vector<MetricDefinition> make_registry() {
  std::vector<MetricDefinition> defs;
  defs.push_back({"mr", RankTransform::identity(), 1.0,
                  PostTransform::kIdentity, Direction::kDecreasing});
  defs.push_back({"mrr", RankTransform::identity(), -1.0,
                  PostTransform::kReciprocal, Direction::kIncreasing});
  defs.push_back({"mrr_colloquial", RankTransform::reciprocal(), 1.0,
                  PostTransform::kIdentity, Direction::kIncreasing});
  defs.push_back({"imr", RankTransform::identity(), 1.0,
                  PostTransform::kReciprocal, Direction::kIncreasing});
  defs.push_back({"hmr", RankTransform::identity(), -1.0,
                  PostTransform::kIdentity, Direction::kDecreasing});
  defs.push_back({"gmr", RankTransform::identity(), 0.0,
                  PostTransform::kIdentity, Direction::kDecreasing});
  defs.push_back({"igmr", RankTransform::identity(), 0.0,
                  PostTransform::kReciprocal, Direction::kIncreasing});
  for (const std::int64_t k : {1, 3, 5, 10}) defs.push_back(hits_at(k));
  return defs;
}

}  // namespace

double evaluate_ranks(const MetricDefinition& metric,
                      std::span<const double> ranks) {
  double aggregated = 0.0;
  if (metric.f.kind == RankTransformKind::kIndicator) {
    aggregated = aggregate_indicator(metric, ranks);
  } else if (metric.f.kind == RankTransformKind::kIdentity) {
    aggregated = power_mean(ranks, metric.p);
  } else {
    std::vector<double> transformed;
    transformed.reserve(ranks.size());
    for (const double r : ranks) transformed.push_back(metric.f(r));
    aggregated = power_mean(transformed, metric.p);
  }
  return metric.g == PostTransform::kReciprocal ? 1.0 / aggregated
                                                : aggregated;
}

MetricValue evaluate(const MetricDefinition& metric, const RankSet& ranks) {
  const std::vector<double> values = ranks.ranks();
  return MetricValue{evaluate_ranks(metric, values), metric, ranks.size()};
}

const std::vector<MetricDefinition>& builtin_registry() {
  static const std::vector<MetricDefinition> registry = make_registry();
  return registry;
}

const std::vector<std::string>& builtin_metric_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& def : builtin_registry()) out.push_back(def.name);
    return out;
  }();
  return names;
}

MetricDefinition find_metric(std::string_view name) {
  constexpr std::string_view kHitsPrefix = "hits@";
  if (name.substr(0, kHitsPrefix.size()) == kHitsPrefix) {
    const std::string_view digits = name.substr(kHitsPrefix.size());
    std::int64_t k = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 1) {
      throw Error(ErrorCode::kUnknownMetric,
                  "bad hits cutoff in \"" + std::string(name) + "\"");
    }
    return hits_at(k);
  }
  for (const auto& def : builtin_registry()) {
    if (def.name == name) return def;
  }
  throw Error(ErrorCode::kUnknownMetric,
              "no metric named \"" + std::string(name) + "\"");
}

}  // namespace ranknull
