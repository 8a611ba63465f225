/* Copyright 2026 The clinet-bench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>

namespace clinet {

enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kInvariantViolation,
  kIoError,
  kBehindCamera,
  kNonPositiveDepth,
  kOutOfRange,
  kEmptyTrack,
  kConfigMismatch,
  kPixelOutOfBounds,
  kShapeMismatch,
  kGridMismatch,
  kBadMagic,
  kUnsupportedVersion,
  kTruncatedPayload,
  kDimOverflow,
  kUnsupportedLayout,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure inside the core library is reported as an Error; the C API
// translates the code into a status value at the boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace clinet
