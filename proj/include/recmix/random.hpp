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

#ifndef RECMIX_RANDOM_HPP
#define RECMIX_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace recmix {

/// Seeded pseudo-random source shared by every stochastic operation.
///
/// A thin wrapper over `std::mt19937_64`. Identical seeds produce identical streams,
/// which is what every determinism guarantee in the library rests on. Independent
/// streams for replicas are derived with `Rng::derive(seed, stream)`.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Generator for replica `stream` of a run seeded with `seed`.
  [[nodiscard]] static Rng derive(std::uint64_t seed, std::uint64_t stream);

  [[nodiscard]] double uniform() { return std::uniform_real_distribution<double>{0.0, 1.0}(engine_); }

  [[nodiscard]] double normal(double mean, double stddev) {
    return std::normal_distribution<double>{mean, stddev}(engine_);
  }

  /// Uniform integer in [0, n). Requires n > 0.
  [[nodiscard]] std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>{0, n - 1}(engine_);
  }

  /// `k` distinct indices from [0, n), chosen uniformly. `scratch` is reused to avoid
  /// reallocating per call; on return its first `k` entries hold the selection.
  std::span<const std::size_t> choose_without_replacement(std::size_t n, std::size_t k,
                                                          std::vector<std::size_t>& scratch);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace recmix

#endif  // RECMIX_RANDOM_HPP
