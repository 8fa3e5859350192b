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
#ifndef RANKNULL_CORE_ADJUSTMENTS_HPP_
#define RANKNULL_CORE_ADJUSTMENTS_HPP_

#include <optional>

#include "core/metrics.hpp"
#include "core/null_models.hpp"

namespace ranknull {

/// Probabilistic adjustments: affine maps of a base metric value by the
/// null statistics of the same metric over the same candidate sizes.
/// Because they are affine, adjusting a stored base value with stored
/// constants gives bit-identical results to adjusting inline.

/// value / E[M]. Only meaningful for the rank-scale decreasing metrics
/// whose codomain is [1, inf); 1 means "as good as random", smaller is
/// better. Errors: kAdjustmentNotApplicable for increasing metrics,
/// kInvalidNull for a non-positive or non-finite expectation.
double expectation_adjust(const MetricValue& value,
                          const NullStatistics& null_stats);

/// (value - E) / (optimum - E), orientation corrected so that 1 is
/// optimal and 0 is chance level for every metric direction:
/// increasing metrics use (v - E)/(opt - E), decreasing ones the
/// equivalent reversed form (E - v)/(E - opt).
/// Errors: kDegenerateAdjustment when |optimum - E| < 1e-15,
/// kInvalidNull for a non-finite expectation.
double adjusted_index(const MetricValue& value,
                      const NullStatistics& null_stats, double optimum = 1.0);

/// Raw standard score (value - E) / sqrt(Var). No orientation applied;
/// negative means below the null expectation regardless of direction.
/// Errors: kZeroVariance (Var <= 0), kInvalidNull (non-finite stats).
double z_adjust(const MetricValue& value, const NullStatistics& null_stats);

/// Reporting convention: larger is better. Flips the sign of a raw z
/// for decreasing metrics, passes increasing ones through.
double oriented_z(const MetricDefinition& metric, double raw_z);

/// Standard normal CDF, absolute error well under 1e-10 over the reals.
double phi(double z);

/// Lower end of the adjusted index codomain where it has a closed
/// characterization: -E/(1-E) for increasing metrics with optimum 1,
/// exactly -1 for the arithmetic mean rank. Empty otherwise.
std::optional<double> adjusted_index_lower_bound(
    const MetricDefinition& metric, const NullStatistics& null_stats);

}  // namespace ranknull

#endif  // RANKNULL_CORE_ADJUSTMENTS_HPP_
