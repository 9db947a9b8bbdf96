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

#ifndef RECMIX_ERRORS_HPP
#define RECMIX_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace recmix {

/// Error categories surfaced by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
  kInvalidParameter,
  kNonNormalizable,
  kInvalidState,
  kUnsupported,
  kDegenerateWeights,
  kInputError,
  kNoData,
};

[[nodiscard]] const char* to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by recmix.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what) : Error(ErrorKind::kInvalidParameter, what) {}
};

/// The requested geometric series does not converge (beta = 0 over an unbounded horizon).
class NonNormalizable : public Error {
 public:
  explicit NonNormalizable(const std::string& what) : Error(ErrorKind::kNonNormalizable, what) {}
};

class InvalidState : public Error {
 public:
  explicit InvalidState(const std::string& what) : Error(ErrorKind::kInvalidState, what) {}
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what) : Error(ErrorKind::kUnsupported, what) {}
};

/// Every particle has zero likelihood under the current observation.
class DegenerateWeights : public Error {
 public:
  explicit DegenerateWeights(const std::string& what) : Error(ErrorKind::kDegenerateWeights, what) {}
};

/// Malformed input. `record()` is the 1-based line or record index, 0 when not applicable.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, std::size_t record = 0)
      : Error(ErrorKind::kInputError, record == 0 ? what : what + " (record " + std::to_string(record) + ")"),
        record_(record) {}

  [[nodiscard]] std::size_t record() const noexcept { return record_; }

 private:
  std::size_t record_;
};

class NoData : public Error {
 public:
  explicit NoData(const std::string& what) : Error(ErrorKind::kNoData, what) {}
};

}  // namespace recmix

#endif  // RECMIX_ERRORS_HPP
