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
#ifndef RANKNULL_CORE_RANKING_HPP_
#define RANKNULL_CORE_RANKING_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ranknull {

/// How the rank of the true candidate is resolved among score ties.
///   optimistic   1 + |{unmasked j : s_j > s_true}|        (best case)
///   pessimistic  N - |{unmasked j : s_j < s_true}|        (worst case)
///   realistic    mean of the two; may be half-integer.
enum class TiePolicy { kOptimistic, kPessimistic, kRealistic };

/// Which side of a task the candidate list ranks. Purely a label; it
/// keys constants-database strata and travels with rank files.
enum class Side { kLeft, kRight, kBoth, kUnspecified };

/// One ranking task: the (possibly fractional) rank of the true
/// candidate among num_candidates scored candidates, after filtering.
/// Invariant: 1 <= rank <= num_candidates.
struct RankingTask {
  double rank = 0.0;
  std::int64_t num_candidates = 0;
};

/// A validated collection of ranking tasks.
class RankSet {
 public:
  /// Validates every task; throws Error(kEmptySet) for no tasks and
  /// Error(kRankOutOfBounds) listing the offending indices otherwise.
  explicit RankSet(std::vector<RankingTask> tasks,
                   Side side = Side::kUnspecified);

  const std::vector<RankingTask>& tasks() const noexcept { return tasks_; }
  std::size_t size() const noexcept { return tasks_.size(); }
  Side side() const noexcept { return side_; }

  std::vector<double> ranks() const;
  std::vector<std::int64_t> sizes() const;

 private:
  std::vector<RankingTask> tasks_;
  Side side_;
};

/// Converts raw candidate scores into the true candidate's rank in the
/// filtered setting. candidate_scores contains the full candidate list
/// including the true candidate's own entry (identified by exact score
/// equality with true_score). filter_mask marks entries to exclude
/// entirely (true = filtered out); pass an empty span for no filtering.
/// The true candidate must not be masked.
///
/// Errors: kInvalidScore (non-finite true or unmasked score),
/// kEmptyCandidates (nothing left after filtering),
/// kTrueCandidateMissing (no unmasked entry equals true_score),
/// kInvalidArgument (mask length mismatch).
RankingTask score_to_rank(double true_score,
                          std::span<const double> candidate_scores,
                          std::span<const std::uint8_t> filter_mask,
                          TiePolicy policy);

/// Validates a batch of tasks into a RankSet (same checks as the
/// RankSet constructor; provided as the named operation).
RankSet validate_rank_set(std::vector<RankingTask> tasks,
                          Side side = Side::kUnspecified);

std::string_view side_name(Side side);
Side side_from_name(std::string_view name);

std::string_view tie_policy_name(TiePolicy policy);
TiePolicy tie_policy_from_name(std::string_view name);

}  // namespace ranknull

#endif  // RANKNULL_CORE_RANKING_HPP_
