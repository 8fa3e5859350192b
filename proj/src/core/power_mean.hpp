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
#ifndef RANKNULL_CORE_POWER_MEAN_HPP_
#define RANKNULL_CORE_POWER_MEAN_HPP_

#include <span>

namespace ranknull {

/// Exponents with magnitude above this are treated as +/- infinity
/// (max / min of the values).
inline constexpr double kPowerMeanInfinityCutoff = 1e6;

/// Generalized power mean M_p(x) = (mean(x_i^p))^(1/p) over strictly
/// positive finite values.
///
/// Special orders: p = 1 arithmetic, p = 0 geometric (limit form,
/// exp of mean log), p = -1 harmonic, p = +inf max, p = -inf min.
/// General finite p is evaluated in log space with a max shift so that
/// large |p| neither overflows nor underflows.
///
/// Throws Error(kEmptyInput) on an empty span and
/// Error(kNonPositiveInput) if any value is not finite and positive.
double power_mean(std::span<const double> values, double p);

}  // namespace ranknull

#endif  // RANKNULL_CORE_POWER_MEAN_HPP_
