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
#ifndef RANKNULL_CORE_CONSTANTS_DB_HPP_
#define RANKNULL_CORE_CONSTANTS_DB_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "core/null_models.hpp"

namespace ranknull {

/// Persistence for null statistics, so expensive constants are computed
/// once per (dataset, split, side, metric) stratum and applied post hoc
/// forever after.
///
/// Storage is a JSON-lines file: one record per line, fixed key order,
/// floats carrying 17 significant digits so a load/store cycle is
/// bit-exact and rebuilds diff cleanly. Writes go to a temp file that
/// is renamed over the database, so readers never observe a torn file.

struct CandidateSizeSummary {
  std::int64_t n = 0;
  std::int64_t min_n = 0;
  std::int64_t max_n = 0;

  // Whether the stratum mixes candidate set sizes. Derived, not stored.
  bool distinct_n() const noexcept { return min_n != max_n; }
};

struct ConstantsRecord {
  std::string dataset;
  std::string split;  // train | test | validation | custom
  std::string side;   // left | right | both
  NullStatistics stats;
  CandidateSizeSummary summary;
};

bool is_valid_split(std::string_view split);
bool is_valid_side(std::string_view side);

/// Assembles a record, validating the key fields and that the digest
/// inside `stats` matches `sizes` (the sizes the stats were built from).
ConstantsRecord make_constants_record(std::string dataset, std::string split,
                                      std::string side,
                                      const NullStatistics& stats,
                                      std::span<const std::int64_t> sizes);

/// Upserts one record. Idempotent for an identical record; a record
/// that differs under the same (dataset, split, side, metric) key
/// throws Error(kConflictingRecord) unless overwrite is set.
/// Also throws kCorruptDatabase / kStorageError.
void store(const ConstantsRecord& record, const std::filesystem::path& db_path,
           bool overwrite = false);

/// Full-scan lookup by key. Throws Error(kNotFound) when absent and
/// Error(kCorruptDatabase) naming the offending line when unparseable.
ConstantsRecord lookup(std::string_view dataset, std::string_view split,
                       std::string_view side, std::string_view metric,
                       const std::filesystem::path& db_path);

/// Everything in the database, file order.
std::vector<ConstantsRecord> load_all(const std::filesystem::path& db_path);

struct DatasetStratum {
  std::string split;
  std::string side;
  std::vector<std::int64_t> sizes;
};

struct DatasetSpec {
  std::string name;
  std::vector<DatasetStratum> strata;
};

struct BuildFailure {
  std::string split;
  std::string side;
  std::string metric;
  std::string error;
};

struct BuildReport {
  std::size_t written = 0;
  std::vector<BuildFailure> failures;
};

/// Computes and stores null statistics for every stratum x metric:
/// closed forms when the metric has one, Monte Carlo with (samples,
/// seed) otherwise. Failures are isolated per stratum x metric and
/// collected into the report; everything else is still written.
/// Rebuilding with identical inputs writes bit-identical records.
BuildReport build_constants(const DatasetSpec& spec,
                            const std::vector<std::string>& metrics,
                            std::uint64_t samples, std::uint64_t seed,
                            MrrMode mode, const std::filesystem::path& db_path,
                            bool overwrite = false);

}  // namespace ranknull

#endif  // RANKNULL_CORE_CONSTANTS_DB_HPP_
