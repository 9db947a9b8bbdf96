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

#ifndef RECMIX_CHAIN_HPP
#define RECMIX_CHAIN_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "recmix/models.hpp"
#include "recmix/random.hpp"

/**
 * \file
 * \brief Fixed-budget evolution of a latent sample set.
 *
 * Each step refreshes round(L * beta) samples with transition draws and keeps the
 * rest, so after m steps the ensemble holds a geometric mixture over the last m
 * states while storing only L samples.
 */

namespace recmix {

/// Fixed-size particle set with birth-time tags and optional importance weights.
///
/// Samples are stored contiguously, `dim` values per sample. The size never changes
/// after construction.
class Ensemble {
 public:
  Ensemble(std::size_t size, std::size_t dim);

  [[nodiscard]] std::size_t size() const noexcept { return births_.size(); }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

  /// Current step index t.
  [[nodiscard]] std::int64_t step() const noexcept { return step_; }
  void set_step(std::int64_t t) noexcept { step_ = t; }

  [[nodiscard]] std::span<double> sample(std::size_t i) noexcept { return {values_.data() + i * dim_, dim_}; }
  [[nodiscard]] std::span<const double> sample(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }

  /// All sample coordinates, sample-major.
  [[nodiscard]] std::span<double> values() noexcept { return values_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  [[nodiscard]] std::span<std::int64_t> births() noexcept { return births_; }
  [[nodiscard]] std::span<const std::int64_t> births() const noexcept { return births_; }

  [[nodiscard]] const std::optional<std::vector<double>>& weights() const noexcept { return weights_; }
  /// Attaches normalized importance weights. Throws InvalidParameter on a size mismatch.
  void set_weights(std::vector<double> weights);
  void clear_weights() noexcept { weights_.reset(); }

  /// Bytes held for samples, tags and weights. Independent of the step index.
  [[nodiscard]] std::size_t storage_bytes() const noexcept;

  /// Throws InvalidState if a birth tag lies in the future or weights are not normalized.
  void validate() const;

 private:
  std::size_t dim_;
  std::int64_t step_ = 0;
  std::vector<double> values_;
  std::vector<std::int64_t> births_;
  std::optional<std::vector<double>> weights_;
};

/// Histogram of sample lags.
///
/// A sample born at step b is a draw from the lag-m component at step t with
/// m = t - b + 1: fresh samples represent p(z_t | z_{t-1}) and sit at lag 1, and the
/// initial samples represent the initial distribution at lag t + 1.
struct LagComposition {
  std::int64_t step = 0;
  std::map<std::size_t, std::size_t> counts;

  [[nodiscard]] std::size_t count(std::size_t lag) const;
  [[nodiscard]] std::size_t total() const;
};

/// Reusable scratch space for `evolve_step`, so a step allocates nothing once warmed up.
struct StepBuffers {
  std::vector<std::size_t> indices;
  std::vector<std::size_t> parents;
  std::vector<double> parent_values;
};

/// L independent draws from `prior`; all birth tags and the step index are 0.
[[nodiscard]] Ensemble init_ensemble(std::size_t size, const PriorSpec& prior, Rng& rng);
[[nodiscard]] Ensemble init_ensemble(std::size_t size, const PriorSpec& prior, std::uint64_t seed);

/// One fixed-budget update.
///
/// round_half_up(L * beta) slots are chosen uniformly without replacement. Each is
/// overwritten with `kernel` applied to a parent drawn uniformly with replacement
/// from the ensemble as it was before the step, and tagged with birth t + 1. The
/// step index increments.
void evolve_step(Ensemble& ensemble, const TransitionKernelSpec& kernel, double beta, Rng& rng,
                 StepBuffers& buffers);
[[nodiscard]] Ensemble evolve_step(Ensemble ensemble, const TransitionKernelSpec& kernel, double beta, Rng& rng);

[[nodiscard]] LagComposition composition(const Ensemble& ensemble);

struct ChainRun {
  /// Composition after each of the T steps.
  std::vector<LagComposition> compositions;
  Ensemble final_ensemble;
};

/// Initializes from `prior` and applies `steps` evolve steps, all drawn from one seeded stream.
[[nodiscard]] ChainRun run_chain(std::size_t size, const PriorSpec& prior, const TransitionKernelSpec& kernel,
                                 double beta, std::size_t steps, std::uint64_t seed);

}  // namespace recmix

#endif  // RECMIX_CHAIN_HPP
