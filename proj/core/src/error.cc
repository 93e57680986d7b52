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

#include "sketchsynth/error.h"

namespace sketchsynth {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDocument: return "invalid document";
    case ErrorCode::kUnknownCategory: return "unknown category";
    case ErrorCode::kDuplicateName: return "duplicate name";
    case ErrorCode::kLexiconTargetMissing: return "lexicon target missing";
    case ErrorCode::kUnknownType: return "unknown type";
    case ErrorCode::kUnknownLocation: return "unknown location";
    case ErrorCode::kUnknownEntity: return "unknown entity";
    case ErrorCode::kUngroundPredicate: return "unground predicate";
    case ErrorCode::kInvalidPolygon: return "invalid polygon";
    case ErrorCode::kOutsideRegions: return "outside regions";
    case ErrorCode::kEmptySketch: return "empty sketch";
    case ErrorCode::kUnparseableClause: return "unparseable clause";
    case ErrorCode::kUnresolvableHole: return "unresolvable hole";
    case ErrorCode::kNoPlan: return "no plan";
    case ErrorCode::kAmbiguousLoop: return "ambiguous loop";
    case ErrorCode::kFoldInvariant: return "fold invariant violation";
    case ErrorCode::kAttachmentMissing: return "attachment region absent";
    case ErrorCode::kRuntimeFault: return "runtime fault";
    case ErrorCode::kSynthesis: return "synthesis error";
  }
  return "unknown";
}

SynthesisError::SynthesisError(const Error& cause, std::string recording,
                               std::string stage)
    : Error(ErrorCode::kSynthesis,
            "recording '" + recording + "' failed at " + stage + ": " +
                cause.what()),
      cause_(cause.code()),
      recording_(std::move(recording)),
      stage_(std::move(stage)),
      detail_(cause.what()) {}

}  // namespace sketchsynth
