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

// ranknull command line tool. Everything metric-related goes through
// the public C API; this file only parses flags, shuttles files and
// formats reports.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>
#include <ranknull.h>

namespace {

struct CliError {
  int exit_code;
  std::string message;
};

// Exit codes: 0 success, 1 input error, 2 numerical or degenerate
// condition, 3 I/O.
int exit_code_for(rn_status status) {
  switch (status) {
    case RN_OK:
      return 0;
    case RN_ERR_NO_CLOSED_FORM:
    case RN_ERR_DEGENERATE_SIZE:
    case RN_ERR_INSUFFICIENT_SAMPLES:
    case RN_ERR_ADJUSTMENT_NOT_APPLICABLE:
    case RN_ERR_INVALID_NULL:
    case RN_ERR_DEGENERATE_ADJUSTMENT:
    case RN_ERR_ZERO_VARIANCE:
      return 2;
    case RN_ERR_IO:
    case RN_ERR_STORAGE:
    case RN_ERR_CORRUPT_DATABASE:
      return 3;
    default:
      return 1;
  }
}

// rn_last_error already leads with the kebab-case status name.
void check(rn_status status, const std::string& context) {
  if (status == RN_OK) return;
  throw CliError{exit_code_for(status), context + ": " + rn_last_error()};
}

template <typename T, void (*FreeFn)(T*)>
class Handle {
 public:
  Handle() = default;
  ~Handle() { FreeFn(ptr_); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& other) noexcept : ptr_(other.ptr_) { other.ptr_ = nullptr; }
  Handle& operator=(Handle&& other) noexcept {
    std::swap(ptr_, other.ptr_);
    return *this;
  }

  T** out() {
    FreeFn(ptr_);
    ptr_ = nullptr;
    return &ptr_;
  }
  T* get() const { return ptr_; }
  explicit operator bool() const { return ptr_ != nullptr; }

 private:
  T* ptr_ = nullptr;
};

using RankSetHandle = Handle<rn_rank_set, rn_rank_set_free>;
using MetricHandle = Handle<rn_metric, rn_metric_free>;
using StatsHandle = Handle<rn_null_stats, rn_null_stats_free>;
using TableHandle = Handle<rn_result_table, rn_result_table_free>;

std::string take_string(char* s) {
  std::string out = s == nullptr ? std::string() : std::string(s);
  rn_string_free(s);
  return out;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string format_double_full(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_output(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw CliError{3, "io-error: cannot open output file " + path};
  }
  out << content;
  out.flush();
  if (!out) {
    throw CliError{3, "io-error: failed writing output file " + path};
  }
}

void warn(const std::string& message) {
  std::cerr << "warning: " << message << "\n";
}

/* ------------------------------------------------------------------ */
/* Shared flag bundles                                                 */

struct OutputFlags {
  std::string output;
  std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, OutputFlags* flags) {
  cmd->add_option("--output", flags->output,
                  "Write to this file instead of stdout");
  cmd->add_option("--format", flags->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

rn_format parse_format(const std::string& format) {
  return format == "json" ? RN_FORMAT_JSON : RN_FORMAT_CSV;
}

struct NullFlags {
  std::string mrr_mode = "discrete";
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
};

void add_null_flags(CLI::App* cmd, NullFlags* flags) {
  cmd->add_option("--mrr-mode", flags->mrr_mode,
                  "Reciprocal-rank expectation mode")
      ->check(CLI::IsMember({"discrete", "continuous"}))
      ->capture_default_str();
  cmd->add_option("--samples", flags->samples,
                  "Monte Carlo replicates for metrics without a closed form")
      ->capture_default_str();
  cmd->add_option("--seed", flags->seed, "Random seed")
      ->capture_default_str();
}

rn_mrr_mode parse_mrr_mode(const std::string& mode) {
  return mode == "continuous" ? RN_MRR_CONTINUOUS : RN_MRR_DISCRETE;
}

rn_tie_policy parse_tie_policy(const std::string& policy) {
  if (policy == "optimistic") return RN_TIE_OPTIMISTIC;
  if (policy == "pessimistic") return RN_TIE_PESSIMISTIC;
  return RN_TIE_REALISTIC;
}

struct ConstantsKey {
  std::string db;
  std::string dataset;
  std::string split = "test";
  std::string side = "both";
};

void add_constants_flags(CLI::App* cmd, ConstantsKey* key) {
  auto* db = cmd->add_option("--constants", key->db,
                             "Constants database (JSONL) path");
  cmd->add_option("--dataset", key->dataset, "Dataset name in the database")
      ->needs(db);
  cmd->add_option("--split", key->split, "Dataset split")
      ->check(CLI::IsMember({"train", "test", "validation", "custom"}))
      ->capture_default_str();
  cmd->add_option("--side", key->side, "Ranking side")
      ->check(CLI::IsMember({"left", "right", "both"}))
      ->capture_default_str();
}

/* ------------------------------------------------------------------ */
/* compute                                                             */

struct ComputeArgs {
  std::string ranks_file;
  std::vector<std::string> metrics{"mr", "mrr", "hits@10"};
  std::string label;
  ConstantsKey constants;
  NullFlags null_flags;
  OutputFlags out_flags;
};

int run_compute(const ComputeArgs& args) {
  RankSetHandle set;
  check(rn_rank_set_load(args.ranks_file.c_str(), set.out()),
        "loading " + args.ranks_file);

  const size_t n = rn_rank_set_size(set.get());
  std::vector<std::int64_t> sizes(n);
  check(rn_rank_set_sizes(set.get(), sizes.data()), "reading sizes");

  std::string label = args.label;
  if (label.empty()) {
    label = std::filesystem::path(args.ranks_file).filename().string();
  }

  TableHandle table;
  check(rn_result_table_create(table.out()), "creating result table");

  rn_status last_failure = RN_OK;
  for (const std::string& name : args.metrics) {
    MetricHandle metric;
    rn_status status = rn_metric_find(name.c_str(), metric.out());
    if (status != RN_OK) {
      warn("metric " + name + ": " + rn_last_error());
      last_failure = status;
      continue;
    }
    const std::string canonical = rn_metric_name(metric.get());

    StatsHandle stats;
    if (!args.constants.db.empty()) {
      status = rn_constants_lookup(
          args.constants.db.c_str(), args.constants.dataset.c_str(),
          args.constants.split.c_str(), args.constants.side.c_str(),
          canonical.c_str(), stats.out(), nullptr, nullptr, nullptr);
    } else {
      status = rn_null_auto(metric.get(), sizes.data(), sizes.size(),
                            parse_mrr_mode(args.null_flags.mrr_mode),
                            args.null_flags.samples, args.null_flags.seed,
                            stats.out());
    }

    if (status == RN_OK) {
      status = rn_result_table_add_evaluated(table.get(), label.c_str(),
                                             metric.get(), set.get(),
                                             stats.get());
      if (status != RN_OK) {
        warn("metric " + canonical + ": " + rn_last_error());
        last_failure = status;
      }
      continue;
    }

    // Null model unavailable: keep the base value, leave the adjusted
    // columns empty.
    warn("metric " + canonical + " null statistics: " + rn_last_error());
    last_failure = status;
    double value = 0.0;
    status = rn_metric_evaluate(metric.get(), set.get(), &value);
    if (status != RN_OK) {
      warn("metric " + canonical + ": " + rn_last_error());
      continue;
    }
    status = rn_result_table_add_adhoc(table.get(), label.c_str(),
                                       metric.get(), value,
                                       static_cast<std::int64_t>(n), 0, 0.0, 0,
                                       0.0, "");
    if (status != RN_OK) {
      warn("metric " + canonical + ": " + rn_last_error());
    }
  }

  if (rn_result_table_rows(table.get()) == 0) {
    throw CliError{last_failure == RN_OK ? 1 : exit_code_for(last_failure),
                   "no metric could be computed"};
  }
  char* rendered = nullptr;
  check(rn_result_table_render(table.get(),
                               parse_format(args.out_flags.format), &rendered),
        "rendering result table");
  write_output(take_string(rendered), args.out_flags.output);
  return 0;
}

/* ------------------------------------------------------------------ */
/* null                                                                */

struct NullArgs {
  std::string sizes_file;
  std::int64_t uniform_size = 0;
  std::uint64_t num_tasks = 0;
  std::vector<std::string> metrics{"mr", "mrr", "hits@10"};
  ConstantsKey constants;
  bool overwrite = false;
  NullFlags null_flags;
  OutputFlags out_flags;
};

struct NullReportRow {
  std::string metric;
  double expectation;
  double variance;
  std::string method;
  std::uint64_t samples;
  std::uint64_t seed;
  std::string sizes_digest;
  std::uint64_t n;
  std::int64_t min_n;
  std::int64_t max_n;
};

std::string render_null_report(const std::vector<NullReportRow>& rows,
                               rn_format format) {
  if (format == RN_FORMAT_CSV) {
    std::string out =
        "metric,n,min_N,max_N,expectation,variance,method,samples,seed,"
        "sizes_digest\n";
    for (const NullReportRow& row : rows) {
      out += row.metric;
      out += ',';
      out += std::to_string(row.n);
      out += ',';
      out += std::to_string(row.min_n);
      out += ',';
      out += std::to_string(row.max_n);
      out += ',';
      out += format_double(row.expectation);
      out += ',';
      out += format_double(row.variance);
      out += ',';
      out += row.method;
      out += ',';
      out += std::to_string(row.samples);
      out += ',';
      out += std::to_string(row.seed);
      out += ',';
      out += row.sizes_digest;
      out += '\n';
    }
    return out;
  }
  nlohmann::ordered_json report = nlohmann::ordered_json::array();
  for (const NullReportRow& row : rows) {
    nlohmann::ordered_json item;
    item["metric"] = row.metric;
    item["n"] = row.n;
    item["min_N"] = row.min_n;
    item["max_N"] = row.max_n;
    item["expectation"] = row.expectation;
    item["variance"] = row.variance;
    item["method"] = row.method;
    item["samples"] = row.samples;
    item["seed"] = row.seed;
    item["sizes_digest"] = row.sizes_digest;
    report.push_back(std::move(item));
  }
  return report.dump(2) + "\n";
}

int run_null(const NullArgs& args) {
  std::vector<std::int64_t> sizes;
  if (!args.sizes_file.empty()) {
    std::int64_t* raw = nullptr;
    size_t n_sizes = 0;
    check(rn_sizes_load(args.sizes_file.c_str(), &raw, &n_sizes),
          "loading " + args.sizes_file);
    sizes.assign(raw, raw + n_sizes);
    rn_sizes_free(raw);
  } else {
    if (args.uniform_size <= 0 || args.num_tasks == 0) {
      throw CliError{
          1, "either --sizes-file or both --uniform-size and --num-tasks "
             "are required"};
    }
    sizes.assign(args.num_tasks, args.uniform_size);
  }

  const auto [min_it, max_it] = std::minmax_element(sizes.begin(),
                                                    sizes.end());
  const std::int64_t min_n = sizes.empty() ? 0 : *min_it;
  const std::int64_t max_n = sizes.empty() ? 0 : *max_it;

  std::vector<NullReportRow> rows;
  rn_status last_failure = RN_OK;
  for (const std::string& name : args.metrics) {
    MetricHandle metric;
    rn_status status = rn_metric_find(name.c_str(), metric.out());
    if (status != RN_OK) {
      warn("metric " + name + ": " + rn_last_error());
      last_failure = status;
      continue;
    }
    StatsHandle stats;
    status = rn_null_auto(metric.get(), sizes.data(), sizes.size(),
                          parse_mrr_mode(args.null_flags.mrr_mode),
                          args.null_flags.samples, args.null_flags.seed,
                          stats.out());
    if (status != RN_OK) {
      warn("metric " + std::string(rn_metric_name(metric.get())) + ": " +
           rn_last_error());
      last_failure = status;
      continue;
    }
    NullReportRow row;
    row.metric = rn_null_stats_metric(stats.get());
    row.expectation = rn_null_stats_expectation(stats.get());
    row.variance = rn_null_stats_variance(stats.get());
    row.method = rn_null_stats_method(stats.get());
    row.samples = rn_null_stats_samples(stats.get());
    row.seed = rn_null_stats_seed(stats.get());
    row.sizes_digest = rn_null_stats_sizes_digest(stats.get());
    row.n = sizes.size();
    row.min_n = min_n;
    row.max_n = max_n;
    rows.push_back(std::move(row));

    if (!args.constants.db.empty()) {
      if (args.constants.dataset.empty()) {
        throw CliError{1, "--dataset is required when storing to --constants"};
      }
      status = rn_constants_store(
          args.constants.db.c_str(), args.constants.dataset.c_str(),
          args.constants.split.c_str(), args.constants.side.c_str(),
          stats.get(), sizes.data(), sizes.size(), args.overwrite ? 1 : 0);
      check(status, "storing constants for " + row.metric);
    }
  }

  if (rows.empty()) {
    throw CliError{last_failure == RN_OK ? 1 : exit_code_for(last_failure),
                   "no metric could be computed"};
  }
  write_output(render_null_report(rows, parse_format(args.out_flags.format)),
               args.out_flags.output);
  return 0;
}

/* ------------------------------------------------------------------ */
/* adjust                                                              */

struct AdjustArgs {
  std::string metric;
  double value = 0.0;
  std::optional<double> expectation;
  std::optional<double> variance;
  std::int64_t n = 0;
  std::string label = "adjusted";
  ConstantsKey constants;
  OutputFlags out_flags;
};

int run_adjust(const AdjustArgs& args) {
  MetricHandle metric;
  check(rn_metric_find(args.metric.c_str(), metric.out()),
        "metric " + args.metric);
  const std::string canonical = rn_metric_name(metric.get());

  StatsHandle stats;
  std::string method;
  double expectation = 0.0;
  bool has_variance = false;
  double variance = 0.0;
  std::int64_t n = args.n;

  if (!args.constants.db.empty()) {
    if (args.constants.dataset.empty()) {
      throw CliError{1, "--dataset is required with --constants"};
    }
    std::int64_t db_n = 0;
    check(rn_constants_lookup(args.constants.db.c_str(),
                              args.constants.dataset.c_str(),
                              args.constants.split.c_str(),
                              args.constants.side.c_str(), canonical.c_str(),
                              stats.out(), &db_n, nullptr, nullptr),
          "constants lookup");
    expectation = rn_null_stats_expectation(stats.get());
    variance = rn_null_stats_variance(stats.get());
    has_variance = true;
    method = rn_null_stats_method(stats.get());
    if (n == 0) n = db_n;
  } else if (args.expectation.has_value()) {
    expectation = *args.expectation;
    has_variance = args.variance.has_value();
    variance = args.variance.value_or(0.0);
    check(rn_null_stats_create(canonical.c_str(), expectation,
                               has_variance ? 1 : 0, variance, stats.out()),
          "wrapping constants");
    method = "external";
  } else {
    throw CliError{1,
                   "either --expectation or --constants (with its key) is "
                   "required"};
  }

  // Surface hard adjustment errors with the documented exit codes; the
  // table render below recomputes the same cells.
  double adjusted = 0.0;
  check(rn_adjusted_index(metric.get(), args.value, stats.get(), &adjusted),
        "adjusted index");
  if (has_variance) {
    double z = 0.0;
    check(rn_z_adjust(metric.get(), args.value, stats.get(), 1, &z),
          "z adjustment");
  }
  rn_status status = rn_expectation_adjust(metric.get(), args.value,
                                           stats.get(), &adjusted);
  if (status != RN_OK && status != RN_ERR_ADJUSTMENT_NOT_APPLICABLE) {
    check(status, "expectation adjustment");
  }

  TableHandle table;
  check(rn_result_table_create(table.out()), "creating result table");
  check(rn_result_table_add_adhoc(table.get(), args.label.c_str(),
                                  metric.get(), args.value, n, 1, expectation,
                                  has_variance ? 1 : 0, variance,
                                  method.c_str()),
        "adding row");
  char* rendered = nullptr;
  check(rn_result_table_render(table.get(),
                               parse_format(args.out_flags.format), &rendered),
        "rendering result table");
  write_output(take_string(rendered), args.out_flags.output);
  return 0;
}

/* ------------------------------------------------------------------ */
/* rank                                                                */

struct RankArgs {
  std::string scores_file;
  std::string tie_policy = "realistic";
  OutputFlags out_flags;
};

std::string render_ranks_csv(const rn_rank_set* set) {
  const std::string side = rn_rank_set_side(set);
  const bool with_side = side != "unspecified";
  std::string out = with_side ? "rank,num_candidates,side\n"
                              : "rank,num_candidates\n";
  const size_t n = rn_rank_set_size(set);
  for (size_t i = 0; i < n; ++i) {
    double rank = 0.0;
    std::int64_t num_candidates = 0;
    check(rn_rank_set_get(set, i, &rank, &num_candidates), "reading task");
    out += format_double_full(rank);
    out += ',';
    out += std::to_string(num_candidates);
    if (with_side) {
      out += ',';
      out += side;
    }
    out += '\n';
  }
  return out;
}

int run_rank(const RankArgs& args) {
  RankSetHandle set;
  check(rn_rank_set_from_scores_file(args.scores_file.c_str(),
                                     parse_tie_policy(args.tie_policy),
                                     set.out()),
        "ranking " + args.scores_file);

  if (args.out_flags.format == "csv") {
    write_output(render_ranks_csv(set.get()), args.out_flags.output);
    return 0;
  }

  if (!args.out_flags.output.empty()) {
    check(rn_rank_set_save_jsonl(set.get(), args.out_flags.output.c_str()),
          "writing " + args.out_flags.output);
    return 0;
  }
  // JSONL to stdout: write through a scratch file so the bytes are the
  // exact save_jsonl encoding.
  const std::filesystem::path scratch =
      std::filesystem::temp_directory_path() /
      ("ranknull-" + std::to_string(::getpid()) + ".jsonl");
  check(rn_rank_set_save_jsonl(set.get(), scratch.string().c_str()),
        "writing ranks");
  std::ifstream in(scratch, std::ios::binary);
  std::ostringstream content;
  content << in.rdbuf();
  in.close();
  std::error_code ec;
  std::filesystem::remove(scratch, ec);
  std::cout << content.str();
  return 0;
}

/* ------------------------------------------------------------------ */
/* simulate                                                            */

struct SimulateArgs {
  std::vector<std::string> kinds{"oracle", "uniform", "gaussian:2"};
  std::vector<std::int64_t> sizes{14, 104, 14505, 40559};
  std::uint64_t num_tasks = 10000;
  std::vector<std::string> metrics{"mr", "mrr", "hits@10"};
  std::string ranks_dir;
  NullFlags null_flags;
  OutputFlags out_flags;
};

struct ParsedKind {
  rn_ranker_kind kind;
  double separation = 0.0;
  std::string label;      // row label prefix
  std::string file_token; // ranks file name token
};

ParsedKind parse_kind(const std::string& token) {
  ParsedKind parsed;
  if (token == "oracle") {
    parsed.kind = RN_RANKER_ORACLE;
    parsed.label = "oracle";
    parsed.file_token = "oracle";
    return parsed;
  }
  if (token == "uniform" || token == "uniform_random") {
    parsed.kind = RN_RANKER_UNIFORM_RANDOM;
    parsed.label = "uniform_random";
    parsed.file_token = "uniform_random";
    return parsed;
  }
  const std::string prefix = "gaussian:";
  if (token.rfind(prefix, 0) == 0) {
    const std::string arg = token.substr(prefix.size());
    try {
      size_t used = 0;
      const double d = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      parsed.kind = RN_RANKER_GAUSSIAN_SEPARATION;
      parsed.separation = d;
      char buffer[48];
      std::snprintf(buffer, sizeof(buffer), "%g", d);
      parsed.label = std::string("gaussian_separation(d=") + buffer + ")";
      parsed.file_token = std::string("gaussian_d") + buffer;
      return parsed;
    } catch (const std::exception&) {
      throw CliError{1, "invalid gaussian separation in --kinds: " + token};
    }
  }
  throw CliError{1,
                 "unknown ranker kind: " + token +
                     " (expected oracle, uniform or gaussian:<d>)"};
}

int run_simulate(const SimulateArgs& args) {
  if (args.num_tasks == 0) {
    throw CliError{1, "--num-tasks must be at least 1"};
  }
  std::vector<ParsedKind> kinds;
  kinds.reserve(args.kinds.size());
  for (const std::string& token : args.kinds) {
    kinds.push_back(parse_kind(token));
  }

  if (!args.ranks_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(args.ranks_dir, ec);
    if (ec) {
      throw CliError{3, "io-error: cannot create directory " + args.ranks_dir};
    }
  }

  TableHandle table;
  check(rn_result_table_create(table.out()), "creating result table");

  // Null statistics depend only on (metric, size); share them across
  // ranker kinds.
  std::map<std::pair<std::string, std::int64_t>, StatsHandle> stats_cache;

  rn_status last_failure = RN_OK;
  bool any_row = false;
  for (const ParsedKind& kind : kinds) {
    for (const std::int64_t size : args.sizes) {
      RankSetHandle set;
      check(rn_rank_set_simulate(kind.kind, kind.separation, args.num_tasks,
                                 size, args.null_flags.seed, set.out()),
            "simulating " + kind.label);

      const std::string label = kind.label + ":N=" + std::to_string(size) +
                                ":seed=" +
                                std::to_string(args.null_flags.seed);
      if (!args.ranks_dir.empty()) {
        const std::string file_name =
            kind.file_token + "_N" + std::to_string(size) + "_seed" +
            std::to_string(args.null_flags.seed) + ".jsonl";
        const std::filesystem::path path =
            std::filesystem::path(args.ranks_dir) / file_name;
        check(rn_rank_set_save_jsonl(set.get(), path.string().c_str()),
              "writing " + path.string());
      }

      std::vector<std::int64_t> sizes(args.num_tasks, size);
      for (const std::string& name : args.metrics) {
        MetricHandle metric;
        rn_status status = rn_metric_find(name.c_str(), metric.out());
        if (status != RN_OK) {
          warn("metric " + name + ": " + rn_last_error());
          last_failure = status;
          continue;
        }
        const std::string canonical = rn_metric_name(metric.get());
        const auto cache_key = std::make_pair(canonical, size);
        auto it = stats_cache.find(cache_key);
        if (it == stats_cache.end()) {
          StatsHandle stats;
          status = rn_null_auto(metric.get(), sizes.data(), sizes.size(),
                                parse_mrr_mode(args.null_flags.mrr_mode),
                                args.null_flags.samples, args.null_flags.seed,
                                stats.out());
          if (status != RN_OK) {
            warn("metric " + canonical + " null statistics: " +
                 rn_last_error());
            last_failure = status;
            continue;
          }
          it = stats_cache.emplace(cache_key, std::move(stats)).first;
        }
        status = rn_result_table_add_evaluated(table.get(), label.c_str(),
                                               metric.get(), set.get(),
                                               it->second.get());
        if (status != RN_OK) {
          warn("metric " + canonical + ": " + rn_last_error());
          last_failure = status;
          continue;
        }
        any_row = true;
      }
    }
  }

  if (!any_row) {
    throw CliError{last_failure == RN_OK ? 1 : exit_code_for(last_failure),
                   "no simulation row could be computed"};
  }
  char* rendered = nullptr;
  check(rn_result_table_render(table.get(),
                               parse_format(args.out_flags.format), &rendered),
        "rendering result table");
  write_output(take_string(rendered), args.out_flags.output);
  return 0;
}

/* ------------------------------------------------------------------ */
/* build-constants                                                     */

struct BuildArgs {
  std::string db;
  std::string dataset;
  std::string spec_file;
  std::string sizes_file;
  std::string split = "test";
  std::string side = "both";
  std::vector<std::string> metrics;
  bool overwrite = false;
  NullFlags null_flags;
  OutputFlags out_flags;
};

struct OwnedStratum {
  std::string split;
  std::string side;
  std::vector<std::int64_t> sizes;
};

std::vector<OwnedStratum> load_spec_strata(const std::string& spec_file,
                                           std::string* dataset) {
  std::ifstream in(spec_file, std::ios::binary);
  if (!in) {
    throw CliError{3, "io-error: cannot open spec file " + spec_file};
  }
  nlohmann::json spec;
  try {
    in >> spec;
  } catch (const nlohmann::json::exception& e) {
    throw CliError{1, "parse-error: " + spec_file + ": " + e.what()};
  }
  if (dataset->empty()) {
    *dataset = spec.value("name", std::string());
  }
  std::vector<OwnedStratum> strata;
  if (!spec.contains("strata") || !spec["strata"].is_array()) {
    throw CliError{1, "parse-error: " + spec_file +
                          ": expected a \"strata\" array"};
  }
  for (const nlohmann::json& item : spec["strata"]) {
    OwnedStratum stratum;
    stratum.split = item.value("split", std::string());
    stratum.side = item.value("side", std::string());
    if (item.contains("sizes")) {
      if (!item["sizes"].is_array()) {
        throw CliError{1, "parse-error: " + spec_file +
                              ": stratum \"sizes\" must be an array"};
      }
      for (const nlohmann::json& value : item["sizes"]) {
        if (!value.is_number_integer()) {
          throw CliError{1, "parse-error: " + spec_file +
                                ": stratum sizes must be integers"};
        }
        stratum.sizes.push_back(value.get<std::int64_t>());
      }
    } else if (item.contains("sizes_file")) {
      const std::string path = item["sizes_file"].get<std::string>();
      std::int64_t* raw = nullptr;
      size_t n_sizes = 0;
      check(rn_sizes_load(path.c_str(), &raw, &n_sizes), "loading " + path);
      stratum.sizes.assign(raw, raw + n_sizes);
      rn_sizes_free(raw);
    } else {
      throw CliError{1, "parse-error: " + spec_file +
                            ": stratum needs \"sizes\" or \"sizes_file\""};
    }
    strata.push_back(std::move(stratum));
  }
  return strata;
}

int run_build_constants(const BuildArgs& args) {
  std::string dataset = args.dataset;
  std::vector<OwnedStratum> strata;
  if (!args.spec_file.empty()) {
    strata = load_spec_strata(args.spec_file, &dataset);
  } else {
    if (args.sizes_file.empty()) {
      throw CliError{1, "either --spec or --sizes-file is required"};
    }
    OwnedStratum stratum;
    stratum.split = args.split;
    stratum.side = args.side;
    std::int64_t* raw = nullptr;
    size_t n_sizes = 0;
    check(rn_sizes_load(args.sizes_file.c_str(), &raw, &n_sizes),
          "loading " + args.sizes_file);
    stratum.sizes.assign(raw, raw + n_sizes);
    rn_sizes_free(raw);
    strata.push_back(std::move(stratum));
  }
  if (dataset.empty()) {
    throw CliError{1, "--dataset (or a spec \"name\") is required"};
  }

  std::vector<std::string> metric_names = args.metrics;
  if (metric_names.empty()) {
    const size_t count = rn_metric_names(nullptr, 0);
    std::vector<const char*> raw(count);
    rn_metric_names(raw.data(), raw.size());
    metric_names.assign(raw.begin(), raw.end());
  }

  std::vector<rn_stratum> c_strata;
  c_strata.reserve(strata.size());
  for (const OwnedStratum& stratum : strata) {
    c_strata.push_back({stratum.split.c_str(), stratum.side.c_str(),
                        stratum.sizes.data(), stratum.sizes.size()});
  }
  std::vector<const char*> c_metrics;
  c_metrics.reserve(metric_names.size());
  for (const std::string& name : metric_names) {
    c_metrics.push_back(name.c_str());
  }

  size_t written = 0;
  char* failures_raw = nullptr;
  check(rn_constants_build(args.db.c_str(), dataset.c_str(), c_strata.data(),
                           c_strata.size(), c_metrics.data(), c_metrics.size(),
                           parse_mrr_mode(args.null_flags.mrr_mode),
                           args.null_flags.samples, args.null_flags.seed,
                           args.overwrite ? 1 : 0, &written, &failures_raw),
        "building constants");
  const std::string failures = take_string(failures_raw);

  size_t failure_count = 0;
  std::istringstream failure_lines(failures);
  std::string line;
  while (std::getline(failure_lines, line)) {
    if (!line.empty()) {
      warn(line);
      ++failure_count;
    }
  }

  std::string report;
  if (parse_format(args.out_flags.format) == RN_FORMAT_JSON) {
    nlohmann::ordered_json summary;
    summary["database"] = args.db;
    summary["dataset"] = dataset;
    summary["written"] = written;
    summary["failed"] = failure_count;
    report = summary.dump(2) + "\n";
  } else {
    report = "database,dataset,written,failed\n" + args.db + "," + dataset +
             "," + std::to_string(written) + "," +
             std::to_string(failure_count) + "\n";
  }
  write_output(report, args.out_flags.output);

  if (written == 0 && failure_count > 0) {
    throw CliError{2, "no constants record could be built"};
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-based evaluation metrics with null-model adjustments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rn_version()));

  ComputeArgs compute_args;
  auto* compute = app.add_subcommand(
      "compute", "Compute metrics and adjustments from a ranks file");
  compute->add_option("ranks_file", compute_args.ranks_file,
                      "Ranks file (JSONL or CSV)")
      ->required();
  compute->add_option("--metrics", compute_args.metrics,
                      "Comma-separated metric names")
      ->delimiter(',')->allow_extra_args(false)
      ->capture_default_str();
  compute->add_option("--label", compute_args.label,
                      "Row label (default: input file name)");
  add_constants_flags(compute, &compute_args.constants);
  add_null_flags(compute, &compute_args.null_flags);
  add_output_flags(compute, &compute_args.out_flags);

  NullArgs null_args;
  auto* null_cmd = app.add_subcommand(
      "null", "Estimate null statistics for candidate-set sizes");
  null_cmd->add_option("--sizes-file", null_args.sizes_file,
                       "Rank or sizes file providing num_candidates");
  null_cmd->add_option("--uniform-size", null_args.uniform_size,
                       "Use this candidate-set size for every task");
  null_cmd->add_option("--num-tasks", null_args.num_tasks,
                       "Number of tasks with --uniform-size");
  null_cmd->add_option("--metrics", null_args.metrics,
                       "Comma-separated metric names")
      ->delimiter(',')->allow_extra_args(false)
      ->capture_default_str();
  add_constants_flags(null_cmd, &null_args.constants);
  null_cmd->add_flag("--overwrite", null_args.overwrite,
                     "Replace conflicting database records");
  add_null_flags(null_cmd, &null_args.null_flags);
  add_output_flags(null_cmd, &null_args.out_flags);

  AdjustArgs adjust_args;
  auto* adjust = app.add_subcommand(
      "adjust", "Adjust an already-computed metric value post hoc");
  adjust->add_option("--metric", adjust_args.metric, "Metric name")
      ->required();
  adjust->add_option("--value", adjust_args.value, "Base metric value")
      ->required();
  adjust->add_option("--expectation", adjust_args.expectation,
                     "Null expectation of the metric");
  adjust->add_option("--variance", adjust_args.variance,
                     "Null variance of the metric");
  adjust->add_option("--n", adjust_args.n, "Number of tasks (reporting only)");
  adjust->add_option("--label", adjust_args.label, "Row label")
      ->capture_default_str();
  add_constants_flags(adjust, &adjust_args.constants);
  add_output_flags(adjust, &adjust_args.out_flags);

  RankArgs rank_args;
  auto* rank = app.add_subcommand(
      "rank", "Convert a scores file into a ranks file");
  rank->add_option("scores_file", rank_args.scores_file, "Scores file (JSONL)")
      ->required();
  rank->add_option("--tie-policy", rank_args.tie_policy, "Tie resolution")
      ->check(CLI::IsMember({"optimistic", "pessimistic", "realistic"}))
      ->capture_default_str();
  rank_args.out_flags.format = "json";
  add_output_flags(rank, &rank_args.out_flags);

  SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand(
      "simulate", "Evaluate synthetic rankers over a size grid");
  simulate->add_option("--kinds", simulate_args.kinds,
                       "Ranker kinds: oracle, uniform, gaussian:<d>")
      ->delimiter(',')->allow_extra_args(false)
      ->capture_default_str();
  simulate->add_option("--sizes", simulate_args.sizes,
                       "Candidate-set sizes of the grid")
      ->delimiter(',')->allow_extra_args(false)
      ->capture_default_str();
  simulate->add_option("--num-tasks", simulate_args.num_tasks,
                       "Ranking tasks per grid cell")
      ->capture_default_str();
  simulate->add_option("--metrics", simulate_args.metrics,
                       "Comma-separated metric names")
      ->delimiter(',')->allow_extra_args(false)
      ->capture_default_str();
  simulate->add_option("--ranks-dir", simulate_args.ranks_dir,
                       "Also write each cell's raw ranks here (JSONL)");
  add_null_flags(simulate, &simulate_args.null_flags);
  add_output_flags(simulate, &simulate_args.out_flags);

  BuildArgs build_args;
  auto* build = app.add_subcommand(
      "build-constants", "Precompute null statistics into a database");
  build->add_option("--db", build_args.db, "Constants database path")
      ->required();
  build->add_option("--dataset", build_args.dataset, "Dataset name");
  build->add_option("--spec", build_args.spec_file,
                    "JSON spec with {name, strata:[{split, side, sizes | "
                    "sizes_file}]}");
  build->add_option("--sizes-file", build_args.sizes_file,
                    "Sizes file for a single stratum");
  build->add_option("--split", build_args.split, "Split for --sizes-file")
      ->check(CLI::IsMember({"train", "test", "validation", "custom"}))
      ->capture_default_str();
  build->add_option("--side", build_args.side, "Side for --sizes-file")
      ->check(CLI::IsMember({"left", "right", "both"}))
      ->capture_default_str();
  build->add_option("--metrics", build_args.metrics,
                    "Comma-separated metric names (default: all builtin)")
      ->delimiter(',')->allow_extra_args(false);
  build->add_flag("--overwrite", build_args.overwrite,
                  "Replace conflicting database records");
  add_null_flags(build, &build_args.null_flags);
  add_output_flags(build, &build_args.out_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (compute->parsed()) return run_compute(compute_args);
    if (null_cmd->parsed()) return run_null(null_args);
    if (adjust->parsed()) return run_adjust(adjust_args);
    if (rank->parsed()) return run_rank(rank_args);
    if (simulate->parsed()) return run_simulate(simulate_args);
    if (build->parsed()) return run_build_constants(build_args);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
