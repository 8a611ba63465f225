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

#include "clinet/error.hpp"

namespace clinet {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kBehindCamera: return "BehindCamera";
    case ErrorCode::kNonPositiveDepth: return "NonPositiveDepth";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kEmptyTrack: return "EmptyTrack";
    case ErrorCode::kConfigMismatch: return "ConfigMismatch";
    case ErrorCode::kPixelOutOfBounds: return "PixelOutOfBounds";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kGridMismatch: return "GridMismatch";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
    case ErrorCode::kDimOverflow: return "DimOverflow";
    case ErrorCode::kUnsupportedLayout: return "UnsupportedLayout";
  }
  return "Unknown";
}

}  // namespace clinet
