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

#ifndef RECMIX_DETAIL_FORMAT_HPP
#define RECMIX_DETAIL_FORMAT_HPP

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace recmix::detail {

/// Shortest decimal text that round-trips to `value`.
inline std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return ec == std::errc{} ? std::string(buffer, end) : std::string("nan");
}

inline std::string join_doubles(const std::vector<double>& values, std::string_view separator = ",") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) {
      out += separator;
    }
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace recmix::detail

#endif  // RECMIX_DETAIL_FORMAT_HPP
