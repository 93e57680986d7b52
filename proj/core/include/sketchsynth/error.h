// Copyright 2026 The sketchsynth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SKETCHSYNTH_ERROR_H_
#define SKETCHSYNTH_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sketchsynth {

enum class ErrorCode {
  kInvalidDocument,
  kUnknownCategory,
  kDuplicateName,
  kLexiconTargetMissing,
  kUnknownType,
  kUnknownLocation,
  kUnknownEntity,
  kUngroundPredicate,
  kInvalidPolygon,
  kOutsideRegions,
  kEmptySketch,
  kUnparseableClause,
  kUnresolvableHole,
  kNoPlan,
  kAmbiguousLoop,
  kFoldInvariant,
  kAttachmentMissing,
  kRuntimeFault,
  kSynthesis,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure surfaced by the engine. `code` is stable and is what the CLI
// and HTTP layers map onto exit statuses and error envelopes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Wraps a stage failure from the synthesis pipeline with the recording and
// stage that produced it.
class SynthesisError : public Error {
 public:
  SynthesisError(const Error& cause, std::string recording, std::string stage);

  ErrorCode cause() const { return cause_; }
  const std::string& recording() const { return recording_; }
  const std::string& stage() const { return stage_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode cause_;
  std::string recording_;
  std::string stage_;
  std::string detail_;
};

}  // namespace sketchsynth

#endif  // SKETCHSYNTH_ERROR_H_
