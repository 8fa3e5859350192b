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
#ifndef RANKNULL_CORE_ERROR_HPP_
#define RANKNULL_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ranknull {

/// Stable error taxonomy shared by the C++ core and the C API.
/// Names (see error_code_name) are kebab-case and part of the public
/// contract; tools match on them.
enum class ErrorCode {
  kInvalidArgument,
  kEmptyInput,
  kEmptyCandidates,
  kInvalidScore,
  kTrueCandidateMissing,
  kRankOutOfBounds,
  kEmptySet,
  kNonPositiveInput,
  kUnknownMetric,
  kUnsupportedComposition,
  kInvalidSize,
  kNoClosedForm,
  kDegenerateSize,
  kInsufficientSamples,
  kAdjustmentNotApplicable,
  kInvalidNull,
  kDegenerateAdjustment,
  kZeroVariance,
  kNotFound,
  kConflictingRecord,
  kCorruptDatabase,
  kStorageError,
  kParseError,
  kIoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " +
                           message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kEmptyInput:
      return "empty-input";
    case ErrorCode::kEmptyCandidates:
      return "empty-candidates";
    case ErrorCode::kInvalidScore:
      return "invalid-score";
    case ErrorCode::kTrueCandidateMissing:
      return "true-candidate-missing";
    case ErrorCode::kRankOutOfBounds:
      return "rank-out-of-bounds";
    case ErrorCode::kEmptySet:
      return "empty-set";
    case ErrorCode::kNonPositiveInput:
      return "non-positive-input";
    case ErrorCode::kUnknownMetric:
      return "unknown-metric";
    case ErrorCode::kUnsupportedComposition:
      return "unsupported-composition";
    case ErrorCode::kInvalidSize:
      return "invalid-size";
    case ErrorCode::kNoClosedForm:
      return "no-closed-form";
    case ErrorCode::kDegenerateSize:
      return "degenerate-size";
    case ErrorCode::kInsufficientSamples:
      return "insufficient-samples";
    case ErrorCode::kAdjustmentNotApplicable:
      return "adjustment-not-applicable";
    case ErrorCode::kInvalidNull:
      return "invalid-null";
    case ErrorCode::kDegenerateAdjustment:
      return "degenerate-adjustment";
    case ErrorCode::kZeroVariance:
      return "zero-variance";
    case ErrorCode::kNotFound:
      return "not-found";
    case ErrorCode::kConflictingRecord:
      return "conflicting-record";
    case ErrorCode::kCorruptDatabase:
      return "corrupt-database";
    case ErrorCode::kStorageError:
      return "storage-error";
    case ErrorCode::kParseError:
      return "parse-error";
    case ErrorCode::kIoError:
      return "io-error";
  }
  return "unknown-error";
}

}  // namespace ranknull

#endif  // RANKNULL_CORE_ERROR_HPP_
