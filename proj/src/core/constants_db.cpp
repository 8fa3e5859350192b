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
#include "core/constants_db.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

namespace ranknull {

namespace {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string json_string(const std::string& s) {
  return nlohmann::json(s).dump();
}

// One record, one line, keys always in this order. Floats are written
// with 17 significant digits, enough to reproduce the exact bits on
// load, which is what makes post-hoc adjustment equal inline
// adjustment and rebuilds byte-stable.
std::string serialize_record(const ConstantsRecord& record) {
  std::ostringstream out;
  out << "{\"dataset\":" << json_string(record.dataset)
      << ",\"split\":" << json_string(record.split)
      << ",\"side\":" << json_string(record.side)
      << ",\"metric\":" << json_string(record.stats.metric_name)
      << ",\"expectation\":" << format_double(record.stats.expectation)
      << ",\"variance\":" << format_double(record.stats.variance)
      << ",\"method\":"
      << json_string(std::string(null_method_name(record.stats.method)))
      << ",\"samples\":" << record.stats.samples
      << ",\"seed\":" << record.stats.seed
      << ",\"sizes_digest\":" << json_string(record.stats.sizes_digest)
      << ",\"n\":" << record.summary.n << ",\"min_N\":" << record.summary.min_n
      << ",\"max_N\":" << record.summary.max_n << "}";
  return out.str();
}

ConstantsRecord parse_record(const std::string& line, std::size_t line_no,
                             const std::filesystem::path& db_path) {
  const auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::kCorruptDatabase,
                 db_path.string() + " line " + std::to_string(line_no) + ": " +
                     why);
  };
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw fail(e.what());
  }
  if (!parsed.is_object()) throw fail("record is not an object");

  const auto require = [&](const char* key) -> const nlohmann::json& {
    const auto it = parsed.find(key);
    if (it == parsed.end()) throw fail(std::string("missing field ") + key);
    return *it;
  };
  const auto as_string = [&](const char* key) -> std::string {
    const auto& field = require(key);
    if (!field.is_string()) throw fail(std::string(key) + " is not a string");
    return field.get<std::string>();
  };
  const auto as_double = [&](const char* key) -> double {
    const auto& field = require(key);
    if (!field.is_number()) throw fail(std::string(key) + " is not a number");
    return field.get<double>();
  };
  const auto as_integer = [&](const char* key) -> std::int64_t {
    const auto& field = require(key);
    if (!field.is_number_integer()) {
      throw fail(std::string(key) + " is not an integer");
    }
    return field.get<std::int64_t>();
  };

  ConstantsRecord record;
  record.dataset = as_string("dataset");
  record.split = as_string("split");
  record.side = as_string("side");
  record.stats.metric_name = as_string("metric");
  record.stats.expectation = as_double("expectation");
  record.stats.variance = as_double("variance");
  try {
    record.stats.method = null_method_from_name(as_string("method"));
  } catch (const Error&) {
    throw fail("unknown method value");
  }
  record.stats.samples = static_cast<std::uint64_t>(as_integer("samples"));
  record.stats.seed = static_cast<std::uint64_t>(as_integer("seed"));
  record.stats.sizes_digest = as_string("sizes_digest");
  record.summary.n = as_integer("n");
  record.summary.min_n = as_integer("min_N");
  record.summary.max_n = as_integer("max_N");
  return record;
}

bool same_key(const ConstantsRecord& a, const ConstantsRecord& b) {
  return a.dataset == b.dataset && a.split == b.split && a.side == b.side &&
         a.stats.metric_name == b.stats.metric_name;
}

std::vector<ConstantsRecord> read_records(
    const std::filesystem::path& db_path) {
  std::vector<ConstantsRecord> records;
  std::ifstream in(db_path);
  if (!in) {
    throw Error(ErrorCode::kIoError,
                "cannot open database " + db_path.string());
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    records.push_back(parse_record(line, line_no, db_path));
  }
  if (in.bad()) {
    throw Error(ErrorCode::kIoError, "read failed on " + db_path.string());
  }
  return records;
}

void write_records(const std::vector<ConstantsRecord>& records,
                   const std::filesystem::path& db_path) {
  std::error_code ec;
  const auto parent = db_path.parent_path();
  if (!parent.empty()) {
    std::filesystem::create_directories(parent, ec);
  }
  const std::filesystem::path temp_path =
      db_path.string() + ".tmp." +
      std::to_string(mix64(reinterpret_cast<std::uintptr_t>(&records) ^
                           static_cast<std::uint64_t>(
                               std::chrono::steady_clock::now()
                                   .time_since_epoch()
                                   .count())));
  {
    std::ofstream out(temp_path, std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kStorageError,
                  "cannot create temp file " + temp_path.string());
    }
    for (const auto& record : records) {
      out << serialize_record(record) << "\n";
    }
    out.flush();
    if (!out) {
      std::filesystem::remove(temp_path, ec);
      throw Error(ErrorCode::kStorageError,
                  "write failed on " + temp_path.string());
    }
  }
  std::filesystem::rename(temp_path, db_path, ec);
  if (ec) {
    std::filesystem::remove(temp_path, ec);
    throw Error(ErrorCode::kStorageError,
                "cannot replace " + db_path.string() + ": " + ec.message());
  }
}

}  // namespace

bool is_valid_split(std::string_view split) {
  return split == "train" || split == "test" || split == "validation" ||
         split == "custom";
}

bool is_valid_side(std::string_view side) {
  return side == "left" || side == "right" || side == "both";
}

ConstantsRecord make_constants_record(std::string dataset, std::string split,
                                      std::string side,
                                      const NullStatistics& stats,
                                      std::span<const std::int64_t> sizes) {
  if (dataset.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "dataset name is empty");
  }
  if (!is_valid_split(split)) {
    throw Error(ErrorCode::kInvalidArgument,
                "split must be train/test/validation/custom, got \"" + split +
                    "\"");
  }
  if (!is_valid_side(side)) {
    throw Error(ErrorCode::kInvalidArgument,
                "side must be left/right/both, got \"" + side + "\"");
  }
  if (sizes.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no sizes for the record summary");
  }
  if (sizes_digest(sizes) != stats.sizes_digest) {
    throw Error(ErrorCode::kInvalidArgument,
                "sizes do not match the digest inside the statistics");
  }
  ConstantsRecord record;
  record.dataset = std::move(dataset);
  record.split = std::move(split);
  record.side = std::move(side);
  record.stats = stats;
  record.summary.n = static_cast<std::int64_t>(sizes.size());
  record.summary.min_n = *std::min_element(sizes.begin(), sizes.end());
  record.summary.max_n = *std::max_element(sizes.begin(), sizes.end());
  return record;
}

void store(const ConstantsRecord& record, const std::filesystem::path& db_path,
           bool overwrite) {
  std::vector<ConstantsRecord> records;
  if (std::filesystem::exists(db_path)) {
    records = read_records(db_path);
  }
  for (auto& existing : records) {
    if (!same_key(existing, record)) continue;
    if (serialize_record(existing) == serialize_record(record)) {
      return;  // identical record already present
    }
    if (!overwrite) {
      throw Error(ErrorCode::kConflictingRecord,
                  "database already holds different statistics for (" +
                      record.dataset + ", " + record.split + ", " +
                      record.side + ", " + record.stats.metric_name + ")");
    }
    existing = record;
    write_records(records, db_path);
    return;
  }
  records.push_back(record);
  write_records(records, db_path);
}

ConstantsRecord lookup(std::string_view dataset, std::string_view split,
                       std::string_view side, std::string_view metric,
                       const std::filesystem::path& db_path) {
  if (!std::filesystem::exists(db_path)) {
    throw Error(ErrorCode::kNotFound,
                "no database at " + db_path.string());
  }
  for (const auto& record : read_records(db_path)) {
    if (record.dataset == dataset && record.split == split &&
        record.side == side && record.stats.metric_name == metric) {
      return record;
    }
  }
  throw Error(ErrorCode::kNotFound,
              "no record for (" + std::string(dataset) + ", " +
                  std::string(split) + ", " + std::string(side) + ", " +
                  std::string(metric) + ") in " + db_path.string());
}

std::vector<ConstantsRecord> load_all(const std::filesystem::path& db_path) {
  if (!std::filesystem::exists(db_path)) {
    throw Error(ErrorCode::kNotFound, "no database at " + db_path.string());
  }
  return read_records(db_path);
}

BuildReport build_constants(const DatasetSpec& spec,
                            const std::vector<std::string>& metrics,
                            std::uint64_t samples, std::uint64_t seed,
                            MrrMode mode, const std::filesystem::path& db_path,
                            bool overwrite) {
  if (spec.name.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "dataset name is empty");
  }
  if (spec.strata.empty()) {
    throw Error(ErrorCode::kEmptyInput, "dataset spec has no strata");
  }
  if (metrics.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no metrics requested");
  }

  BuildReport report;
  for (const auto& stratum : spec.strata) {
    for (const auto& metric_name : metrics) {
      try {
        const MetricDefinition metric = find_metric(metric_name);
        const NullStatistics stats = null_statistics_auto(
            metric, stratum.sizes, mode, samples, seed);
        const ConstantsRecord record =
            make_constants_record(spec.name, stratum.split, stratum.side,
                                  stats, stratum.sizes);
        store(record, db_path, overwrite);
        ++report.written;
      } catch (const Error& e) {
        report.failures.push_back(BuildFailure{stratum.split, stratum.side,
                                               metric_name, e.what()});
      }
    }
  }
  return report;
}

}  // namespace ranknull
