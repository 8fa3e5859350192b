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
#ifndef RANKNULL_CORE_SIMULATE_HPP_
#define RANKNULL_CORE_SIMULATE_HPP_

#include <cstdint>
#include <string_view>

#include "core/ranking.hpp"

namespace ranknull {

/// Synthetic rankers for calibration studies.
///   oracle               always rank 1
///   uniform_random       rank ~ U{1..N}; by construction exactly the
///                        null model
///   gaussian_separation  true score ~ N(d, 1) against N-1 negatives
///                        ~ N(0, 1); rank = 1 + |{negatives above}|
enum class RankerKind { kOracle, kUniformRandom, kGaussianSeparation };

struct SyntheticRankerSpec {
  RankerKind kind = RankerKind::kUniformRandom;
  double separation = 0.0;  // gaussian_separation only; d >= 0
  std::size_t num_tasks = 0;
  std::int64_t candidate_size = 0;
  std::uint64_t seed = 0;
};

/// Draws a full rank set for one grid cell. Task i consumes its own
/// counter stream derived from (seed, kind, N, d, i), so cells and
/// tasks are reproducible independent of evaluation order.
/// Errors: kInvalidArgument (no tasks, negative separation),
/// kInvalidSize (candidate_size < 1).
RankSet simulate_ranks(const SyntheticRankerSpec& spec);

std::string_view ranker_kind_name(RankerKind kind);
RankerKind ranker_kind_from_name(std::string_view name);

}  // namespace ranknull

#endif  // RANKNULL_CORE_SIMULATE_HPP_
