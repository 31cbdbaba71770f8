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

#ifndef MDSPIR_ERROR_H_
#define MDSPIR_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mdspir {

enum class ErrorCode {
  kInvalidArgument,
  kNotPrime,
  kZeroInverse,
  kDimensionMismatch,
  kFieldMismatch,
  kSingularMatrix,
  kFieldTooSmall,
  kBudgetExceeded,
  kNotSystematic,
  kNotMds,
  kTooFewSymbols,
  kInconsistentSymbols,
  kBadNodeIndex,
  kBadFileIndex,
  kFieldTooSmallForBytes,
  kShapeMismatch,
  kBadMagic,
  kVersionUnsupported,
  kTruncatedPayload,
  kHeaderPayloadMismatch,
  kBadMsgType,
  kLengthMismatch,
  kSingularInterferenceSystem,
  kCollusionBoundTooLarge,
  kMissingResponse,
  kSchemeMismatch,
  kSubsetBudgetExceeded,
  kInsufficientSamples,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above so
// callers (and tests) can branch on the error class rather than the message.
class PirError : public std::runtime_error {
 public:
  PirError(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace mdspir

#endif  // MDSPIR_ERROR_H_
