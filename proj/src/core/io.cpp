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
#include "core/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "core/error.hpp"

namespace ranknull {

namespace {

Error parse_error(const std::filesystem::path& path, std::size_t line_no,
                  const std::string& why) {
  return Error(ErrorCode::kParseError,
               path.string() + " line " + std::to_string(line_no) + ": " + why);
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  }
  return in;
}

bool is_csv(const std::filesystem::path& path) {
  return path.extension() == ".csv";
}

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

double parse_double_field(const std::string& field,
                          const std::filesystem::path& path,
                          std::size_t line_no, const char* what) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw parse_error(path, line_no,
                      std::string("bad ") + what + " \"" + field + "\"");
  }
  return value;
}

std::int64_t parse_int_field(const std::string& field,
                             const std::filesystem::path& path,
                             std::size_t line_no, const char* what) {
  std::int64_t value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw parse_error(path, line_no,
                      std::string("bad ") + what + " \"" + field + "\"");
  }
  return value;
}

void check_task(const RankingTask& task, const std::filesystem::path& path,
                std::size_t line_no) {
  if (task.num_candidates < 1) {
    throw parse_error(path, line_no, "num_candidates must be >= 1");
  }
  if (!(std::isfinite(task.rank) && task.rank >= 1.0 &&
        task.rank <= static_cast<double>(task.num_candidates))) {
    throw parse_error(path, line_no,
                      "rank must satisfy 1 <= rank <= num_candidates");
  }
}

// Tracks the per-task side labels into one set-level label.
class SideAccumulator {
 public:
  void add(Side side) {
    if (side == Side::kUnspecified) return;
    if (!seen_) {
      common_ = side;
      seen_ = true;
    } else if (common_ != side) {
      common_ = Side::kBoth;
    }
  }

  Side result() const { return seen_ ? common_ : Side::kUnspecified; }

 private:
  bool seen_ = false;
  Side common_ = Side::kUnspecified;
};

nlohmann::json parse_json_line(const std::string& line,
                               const std::filesystem::path& path,
                               std::size_t line_no) {
  try {
    return nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path, line_no, e.what());
  }
}

RankSet load_rank_set_jsonl(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::vector<RankingTask> tasks;
  SideAccumulator sides;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const nlohmann::json parsed = parse_json_line(line, path, line_no);
    if (!parsed.is_object()) {
      throw parse_error(path, line_no, "expected an object");
    }
    const auto rank_it = parsed.find("rank");
    const auto size_it = parsed.find("num_candidates");
    if (rank_it == parsed.end() || !rank_it->is_number()) {
      throw parse_error(path, line_no, "missing numeric \"rank\"");
    }
    if (size_it == parsed.end() || !size_it->is_number_integer()) {
      throw parse_error(path, line_no, "missing integer \"num_candidates\"");
    }
    RankingTask task{rank_it->get<double>(), size_it->get<std::int64_t>()};
    check_task(task, path, line_no);
    if (const auto side_it = parsed.find("side"); side_it != parsed.end()) {
      if (!side_it->is_string()) {
        throw parse_error(path, line_no, "\"side\" is not a string");
      }
      try {
        sides.add(side_from_name(side_it->get<std::string>()));
      } catch (const Error&) {
        throw parse_error(path, line_no, "unknown side value");
      }
    }
    tasks.push_back(task);
  }
  if (tasks.empty()) {
    throw Error(ErrorCode::kEmptySet, "no tasks in " + path.string());
  }
  return RankSet(std::move(tasks), sides.result());
}

RankSet load_rank_set_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kEmptySet, "no tasks in " + path.string());
  }
  ++line_no;
  const auto header = split_csv_line(line);
  const bool with_side =
      header.size() == 3 && header[0] == "rank" &&
      header[1] == "num_candidates" && header[2] == "side";
  if (!with_side && !(header.size() == 2 && header[0] == "rank" &&
                      header[1] == "num_candidates")) {
    throw parse_error(path, line_no,
                      "header must be rank,num_candidates[,side]");
  }

  std::vector<RankingTask> tasks;
  SideAccumulator sides;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw parse_error(path, line_no, "wrong number of fields");
    }
    RankingTask task{parse_double_field(fields[0], path, line_no, "rank"),
                     parse_int_field(fields[1], path, line_no,
                                     "num_candidates")};
    check_task(task, path, line_no);
    if (with_side) {
      try {
        sides.add(side_from_name(fields[2]));
      } catch (const Error&) {
        throw parse_error(path, line_no, "unknown side value");
      }
    }
    tasks.push_back(task);
  }
  if (tasks.empty()) {
    throw Error(ErrorCode::kEmptySet, "no tasks in " + path.string());
  }
  return RankSet(std::move(tasks), sides.result());
}

}  // namespace

RankSet load_rank_set(const std::filesystem::path& path) {
  return is_csv(path) ? load_rank_set_csv(path) : load_rank_set_jsonl(path);
}

void save_rank_set_jsonl(const RankSet& ranks,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot create " + path.string());
  }
  const bool with_side = ranks.side() != Side::kUnspecified;
  for (const auto& task : ranks.tasks()) {
    out << "{\"rank\":";
    if (task.rank == std::floor(task.rank)) {
      out << static_cast<std::int64_t>(task.rank);
    } else {
      char buffer[64];
      std::snprintf(buffer, sizeof(buffer), "%.17g", task.rank);
      out << buffer;
    }
    out << ",\"num_candidates\":" << task.num_candidates;
    if (with_side) {
      out << ",\"side\":\"" << side_name(ranks.side()) << "\"";
    }
    out << "}\n";
  }
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIoError, "write failed on " + path.string());
  }
}

std::vector<std::int64_t> load_sizes(const std::filesystem::path& path) {
  std::vector<std::int64_t> sizes;
  auto in = open_for_read(path);
  std::string line;
  std::size_t line_no = 0;
  if (is_csv(path)) {
    if (!std::getline(in, line)) {
      throw Error(ErrorCode::kEmptyInput, "no sizes in " + path.string());
    }
    ++line_no;
    const auto header = split_csv_line(line);
    std::size_t column = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == "num_candidates") column = i;
    }
    if (column == header.size()) {
      throw parse_error(path, line_no, "no num_candidates column");
    }
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      const auto fields = split_csv_line(line);
      if (fields.size() <= column) {
        throw parse_error(path, line_no, "wrong number of fields");
      }
      sizes.push_back(
          parse_int_field(fields[column], path, line_no, "num_candidates"));
    }
  } else {
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      const nlohmann::json parsed = parse_json_line(line, path, line_no);
      const auto it =
          parsed.is_object() ? parsed.find("num_candidates") : parsed.end();
      if (it == parsed.end() || !it->is_number_integer()) {
        throw parse_error(path, line_no, "missing integer \"num_candidates\"");
      }
      sizes.push_back(it->get<std::int64_t>());
    }
  }
  if (sizes.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no sizes in " + path.string());
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) {
      throw Error(ErrorCode::kInvalidSize,
                  path.string() + ": size at entry " + std::to_string(i) +
                      " must be >= 1");
    }
  }
  return sizes;
}

std::vector<ScoredTask> load_scored_tasks(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::vector<ScoredTask> tasks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const nlohmann::json parsed = parse_json_line(line, path, line_no);
    if (!parsed.is_object()) {
      throw parse_error(path, line_no, "expected an object");
    }
    const auto true_it = parsed.find("true_score");
    if (true_it == parsed.end() || !true_it->is_number()) {
      throw parse_error(path, line_no, "missing numeric \"true_score\"");
    }
    const auto scores_it = parsed.find("candidate_scores");
    if (scores_it == parsed.end() || !scores_it->is_array()) {
      throw parse_error(path, line_no, "missing array \"candidate_scores\"");
    }
    ScoredTask task;
    task.true_score = true_it->get<double>();
    task.candidate_scores.reserve(scores_it->size());
    for (const auto& score : *scores_it) {
      if (!score.is_number()) {
        throw parse_error(path, line_no, "candidate score is not a number");
      }
      task.candidate_scores.push_back(score.get<double>());
    }
    if (const auto mask_it = parsed.find("mask"); mask_it != parsed.end()) {
      if (!mask_it->is_array()) {
        throw parse_error(path, line_no, "\"mask\" is not an array");
      }
      if (mask_it->size() != task.candidate_scores.size()) {
        throw parse_error(path, line_no,
                          "mask length does not match candidate_scores");
      }
      task.mask.reserve(mask_it->size());
      for (const auto& flag : *mask_it) {
        if (!flag.is_boolean()) {
          throw parse_error(path, line_no, "mask entry is not a boolean");
        }
        task.mask.push_back(flag.get<bool>() ? 1 : 0);
      }
    }
    tasks.push_back(std::move(task));
  }
  if (tasks.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no tasks in " + path.string());
  }
  return tasks;
}

RankSet rank_scored_tasks(std::span<const ScoredTask> tasks,
                          TiePolicy policy) {
  if (tasks.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no scored tasks");
  }
  std::vector<RankingTask> ranked;
  ranked.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    try {
      ranked.push_back(score_to_rank(tasks[i].true_score,
                                     tasks[i].candidate_scores,
                                     tasks[i].mask, policy));
    } catch (const Error& e) {
      throw Error(e.code(), "task " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return RankSet(std::move(ranked));
}

}  // namespace ranknull
