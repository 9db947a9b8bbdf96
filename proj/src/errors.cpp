// Copyright 2026 The recmix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "recmix/errors.hpp"

namespace recmix {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidParameter:
      return "InvalidParameter";
    case ErrorKind::kNonNormalizable:
      return "NonNormalizable";
    case ErrorKind::kInvalidState:
      return "InvalidState";
    case ErrorKind::kUnsupported:
      return "Unsupported";
    case ErrorKind::kDegenerateWeights:
      return "DegenerateWeights";
    case ErrorKind::kInputError:
      return "InputError";
    case ErrorKind::kNoData:
      return "NoData";
  }
  return "Unknown";
}

}  // namespace recmix
