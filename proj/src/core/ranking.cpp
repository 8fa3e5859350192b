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
#include "core/ranking.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace ranknull {

namespace {

bool task_is_valid(const RankingTask& task) {
  return task.num_candidates >= 1 && std::isfinite(task.rank) &&
         task.rank >= 1.0 &&
         task.rank <= static_cast<double>(task.num_candidates);
}

}  // namespace

RankSet::RankSet(std::vector<RankingTask> tasks, Side side)
    : tasks_(std::move(tasks)), side_(side) {
  if (tasks_.empty()) {
    throw Error(ErrorCode::kEmptySet, "rank set has no tasks");
  }
  std::string bad;
  int bad_count = 0;
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (task_is_valid(tasks_[i])) continue;
    ++bad_count;
    if (bad_count <= 10) {
      if (!bad.empty()) bad += ", ";
      bad += std::to_string(i);
    }
  }
  if (bad_count > 0) {
    if (bad_count > 10) {
      bad += " and " + std::to_string(bad_count - 10) + " more";
    }
    throw Error(ErrorCode::kRankOutOfBounds,
                "tasks violate 1 <= rank <= num_candidates at indices " + bad);
  }
}

std::vector<double> RankSet::ranks() const {
  std::vector<double> out;
  out.reserve(tasks_.size());
  for (const auto& task : tasks_) out.push_back(task.rank);
  return out;
}

std::vector<std::int64_t> RankSet::sizes() const {
  std::vector<std::int64_t> out;
  out.reserve(tasks_.size());
  for (const auto& task : tasks_) out.push_back(task.num_candidates);
  return out;
}

RankingTask score_to_rank(double true_score,
                          std::span<const double> candidate_scores,
                          std::span<const std::uint8_t> filter_mask,
                          TiePolicy policy) {
  if (!filter_mask.empty() && filter_mask.size() != candidate_scores.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "filter mask length " + std::to_string(filter_mask.size()) +
                    " does not match " +
                    std::to_string(candidate_scores.size()) + " candidates");
  }
  if (!std::isfinite(true_score)) {
    throw Error(ErrorCode::kInvalidScore, "true score is not finite");
  }

  // Filtered setting: masked candidates are removed before anything is
  // counted, so their scores are never even inspected.
  std::int64_t remaining = 0;
  std::int64_t above = 0;
  std::int64_t below = 0;
  std::int64_t equal = 0;
  for (std::size_t i = 0; i < candidate_scores.size(); ++i) {
    if (!filter_mask.empty() && filter_mask[i]) continue;
    const double s = candidate_scores[i];
    if (!std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidScore,
                  "candidate score at index " + std::to_string(i) +
                      " is not finite");
    }
    ++remaining;
    if (s > true_score) {
      ++above;
    } else if (s < true_score) {
      ++below;
    } else {
      ++equal;
    }
  }
  if (remaining == 0) {
    throw Error(ErrorCode::kEmptyCandidates,
                "no candidates remain after filtering");
  }
  if (equal == 0) {
    throw Error(ErrorCode::kTrueCandidateMissing,
                "no unmasked candidate score equals the true score");
  }

  const double optimistic = static_cast<double>(1 + above);
  const double pessimistic = static_cast<double>(remaining - below);
  double rank = 0.0;
  switch (policy) {
    case TiePolicy::kOptimistic:
      rank = optimistic;
      break;
    case TiePolicy::kPessimistic:
      rank = pessimistic;
      break;
    case TiePolicy::kRealistic:
      rank = 0.5 * (optimistic + pessimistic);
      break;
  }
  return RankingTask{rank, remaining};
}

RankSet validate_rank_set(std::vector<RankingTask> tasks, Side side) {
  return RankSet(std::move(tasks), side);
}

std::string_view side_name(Side side) {
  switch (side) {
    case Side::kLeft:
      return "left";
    case Side::kRight:
      return "right";
    case Side::kBoth:
      return "both";
    case Side::kUnspecified:
      return "unspecified";
  }
  return "unspecified";
}

Side side_from_name(std::string_view name) {
  if (name == "left") return Side::kLeft;
  if (name == "right") return Side::kRight;
  if (name == "both") return Side::kBoth;
  if (name == "unspecified") return Side::kUnspecified;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown side \"" + std::string(name) + "\"");
}

std::string_view tie_policy_name(TiePolicy policy) {
  switch (policy) {
    case TiePolicy::kOptimistic:
      return "optimistic";
    case TiePolicy::kPessimistic:
      return "pessimistic";
    case TiePolicy::kRealistic:
      return "realistic";
  }
  return "realistic";
}

TiePolicy tie_policy_from_name(std::string_view name) {
  if (name == "optimistic") return TiePolicy::kOptimistic;
  if (name == "pessimistic") return TiePolicy::kPessimistic;
  if (name == "realistic") return TiePolicy::kRealistic;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown tie policy \"" + std::string(name) + "\"");
}

}  // namespace ranknull
