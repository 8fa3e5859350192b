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
#include "core/simulate.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "core/adjustments.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

namespace ranknull {

namespace {

std::uint64_t task_stream(const SyntheticRankerSpec& spec, std::size_t task) {
  // FNV-1a over the cell coordinates plus the task index, so that no
  // two (kind, N, d, task) tuples share a stream for a given seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto absorb = [&h](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  };
  absorb(static_cast<std::uint64_t>(spec.kind));
  absorb(static_cast<std::uint64_t>(spec.candidate_size));
  absorb(std::bit_cast<std::uint64_t>(spec.separation));
  absorb(static_cast<std::uint64_t>(task));
  return h;
}

// rank = 1 + |{negatives above the true score}|. Negatives are drawn
// through the inverse CDF: u > Phi(t) exactly when the corresponding
// standard normal exceeds t. Exact ties between continuous scores have
// probability zero, so every tie policy yields this same rank.
std::int64_t gaussian_rank(const SyntheticRankerSpec& spec, CounterRng& rng) {
  const double true_score = spec.separation + rng.gaussian();
  const double q = phi(true_score);
  std::int64_t above = 0;
  for (std::int64_t j = 1; j < spec.candidate_size; ++j) {
    if (rng.uniform_double() > q) ++above;
  }
  return 1 + above;
}

}  // namespace

RankSet simulate_ranks(const SyntheticRankerSpec& spec) {
  if (spec.num_tasks == 0) {
    throw Error(ErrorCode::kInvalidArgument, "simulation needs >= 1 task");
  }
  if (spec.candidate_size < 1) {
    throw Error(ErrorCode::kInvalidSize,
                "candidate size must be >= 1, got " +
                    std::to_string(spec.candidate_size));
  }
  if (spec.kind == RankerKind::kGaussianSeparation &&
      !(std::isfinite(spec.separation) && spec.separation >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "separation must be finite and >= 0");
  }

  std::vector<RankingTask> tasks;
  tasks.reserve(spec.num_tasks);
  for (std::size_t i = 0; i < spec.num_tasks; ++i) {
    std::int64_t rank = 1;
    switch (spec.kind) {
      case RankerKind::kOracle:
        rank = 1;
        break;
      case RankerKind::kUniformRandom: {
        CounterRng rng(spec.seed, task_stream(spec, i));
        rank = rng.uniform_rank(spec.candidate_size);
        break;
      }
      case RankerKind::kGaussianSeparation: {
        CounterRng rng(spec.seed, task_stream(spec, i));
        rank = gaussian_rank(spec, rng);
        break;
      }
    }
    tasks.push_back(
        RankingTask{static_cast<double>(rank), spec.candidate_size});
  }
  return RankSet(std::move(tasks));
}

std::string_view ranker_kind_name(RankerKind kind) {
  switch (kind) {
    case RankerKind::kOracle:
      return "oracle";
    case RankerKind::kUniformRandom:
      return "uniform_random";
    case RankerKind::kGaussianSeparation:
      return "gaussian_separation";
  }
  return "uniform_random";
}

RankerKind ranker_kind_from_name(std::string_view name) {
  if (name == "oracle") return RankerKind::kOracle;
  if (name == "uniform_random") return RankerKind::kUniformRandom;
  if (name == "gaussian_separation") return RankerKind::kGaussianSeparation;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown ranker kind \"" + std::string(name) + "\"");
}

}  // namespace ranknull
