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

#include "recmix/random.hpp"

#include <numeric>
#include <utility>

#include "recmix/errors.hpp"

namespace recmix {

Rng Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32U)};
  Rng rng;
  rng.engine_.seed(seq);
  return rng;
}

std::span<const std::size_t> Rng::choose_without_replacement(std::size_t n, std::size_t k,
                                                              std::vector<std::size_t>& scratch) {
  if (k > n) {
    throw InvalidParameter("cannot choose " + std::to_string(k) + " of " + std::to_string(n) + " indices");
  }
  scratch.resize(n);
  std::iota(scratch.begin(), scratch.end(), std::size_t{0});
  // Partial Fisher-Yates: the prefix of length k is a uniform k-subset.
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + index(n - i);
    std::swap(scratch[i], scratch[j]);
  }
  return {scratch.data(), k};
}

}  // namespace recmix
