// Copyright 2026 The mdspir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mdspir/error.h"

namespace mdspir {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kZeroInverse: return "ZeroInverse";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kFieldMismatch: return "FieldMismatch";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kFieldTooSmall: return "FieldTooSmall";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kNotSystematic: return "NotSystematic";
    case ErrorCode::kNotMds: return "NotMds";
    case ErrorCode::kTooFewSymbols: return "TooFewSymbols";
    case ErrorCode::kInconsistentSymbols: return "InconsistentSymbols";
    case ErrorCode::kBadNodeIndex: return "BadNodeIndex";
    case ErrorCode::kBadFileIndex: return "BadFileIndex";
    case ErrorCode::kFieldTooSmallForBytes: return "FieldTooSmallForBytes";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kVersionUnsupported: return "VersionUnsupported";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
    case ErrorCode::kHeaderPayloadMismatch: return "HeaderPayloadMismatch";
    case ErrorCode::kBadMsgType: return "BadMsgType";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kSingularInterferenceSystem:
      return "SingularInterferenceSystem";
    case ErrorCode::kCollusionBoundTooLarge: return "CollusionBoundTooLarge";
    case ErrorCode::kMissingResponse: return "MissingResponse";
    case ErrorCode::kSchemeMismatch: return "SchemeMismatch";
    case ErrorCode::kSubsetBudgetExceeded: return "SubsetBudgetExceeded";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
  }
  return "Unknown";
}

PirError::PirError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Fail(ErrorCode code, const std::string& message) {
  throw PirError(code, message);
}

}  // namespace mdspir
