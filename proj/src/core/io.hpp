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
#ifndef RANKNULL_CORE_IO_HPP_
#define RANKNULL_CORE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "core/ranking.hpp"

namespace ranknull {

/// Rank files come in two shapes, selected by extension (.csv is CSV,
/// anything else JSON lines):
///
///   JSONL  {"rank": 3, "num_candidates": 14}            per line,
///          with an optional "side": "left"|"right"|"both"
///   CSV    header `rank,num_candidates` or
///          `rank,num_candidates,side`, one task per row
///
/// The loaded set's side label is the one shared by every task, "both"
/// for a mix, "unspecified" when absent. Parse and validation errors
/// carry the line number.
RankSet load_rank_set(const std::filesystem::path& path);

/// Writes the JSONL shape (integral ranks emitted as integers).
void save_rank_set_jsonl(const RankSet& ranks,
                         const std::filesystem::path& path);

/// Candidate-set sizes only: same two file shapes, but the rank field
/// is optional; only num_candidates is read.
std::vector<std::int64_t> load_sizes(const std::filesystem::path& path);

/// One line of a scores file:
///   {"true_score": 3.0, "candidate_scores": [...], "mask": [...]}
/// mask is optional, booleans, true = filtered out.
struct ScoredTask {
  double true_score = 0.0;
  std::vector<double> candidate_scores;
  std::vector<std::uint8_t> mask;
};

std::vector<ScoredTask> load_scored_tasks(const std::filesystem::path& path);

/// Ranks every scored task under a tie policy. Errors mention the
/// originating line.
RankSet rank_scored_tasks(std::span<const ScoredTask> tasks,
                          TiePolicy policy);

}  // namespace ranknull

#endif  // RANKNULL_CORE_IO_HPP_
