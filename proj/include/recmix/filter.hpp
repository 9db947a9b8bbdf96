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

#ifndef RECMIX_FILTER_HPP
#define RECMIX_FILTER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "recmix/chain.hpp"
#include "recmix/mixing.hpp"
#include "recmix/models.hpp"
#include "recmix/random.hpp"

/**
 * \file
 * \brief Recency-weighted importance filter.
 *
 * Every step weighs the predictive ensemble by the observation likelihood,
 * summarizes the weighted posterior, then refreshes round(L * beta) randomly chosen
 * slots with draws from that posterior and perturbs all L particles with system
 * noise. With beta = 1 this is plain multinomial importance resampling.
 */

namespace recmix {

enum class ResamplingScheme { kMultinomial, kSystematic };

struct FilterConfig {
  std::size_t particles = 1000;
  /// Only `decay.beta` drives the filter; the horizon is implicit in the refresh rate.
  DecaySpec decay{};
  /// Per-dimension std of the zero-mean Gaussian system noise. A single entry applies to every dimension.
  std::vector<double> noise_std{0.0};
  ObservationModelSpec obs_model = ObservationModelSpec::gaussian(1.0);
  /// Applied to posterior draws before they enter the predictive ensemble.
  TransitionKernelSpec kernel = TransitionKernelSpec::identity();
  PriorSpec prior = PriorSpec::normal(0.0, 1.0);
  ResamplingScheme scheme = ResamplingScheme::kMultinomial;
  std::uint64_t seed = 0;

  [[nodiscard]] std::size_t dim() const noexcept { return prior.dim; }
  [[nodiscard]] double noise_for(std::size_t d) const { return noise_std.size() == 1 ? noise_std[0] : noise_std[d]; }
  void validate() const;
};

/// Normalized importance weights plus log of the mean unnormalized likelihood.
struct ImportanceWeights {
  std::vector<double> weights;
  double log_mean_likelihood = 0.0;
};

struct PosteriorSummary {
  std::int64_t t = 0;
  std::vector<double> mean;
  std::vector<double> std;
  double ess = 0.0;
  double log_marginal_increment = 0.0;
};

/// Predictive ensemble plus the random stream that advances it. Equally weighted between steps.
struct FilterState {
  Ensemble ensemble;
  Rng rng;
  StepBuffers buffers{};

  [[nodiscard]] std::int64_t step() const noexcept { return ensemble.step(); }
};

/// Likelihood weights w_l ∝ p(y | z_l), computed in log space with the maximum subtracted.
/// Throws DegenerateWeights when every particle has zero likelihood.
[[nodiscard]] ImportanceWeights weigh(const Ensemble& ensemble, std::span<const double> y,
                                      const ObservationModelSpec& obs_model);

[[nodiscard]] PosteriorSummary summarize(const Ensemble& ensemble, const ImportanceWeights& weights);

/// Refreshes round_half_up(L * beta) slots, chosen uniformly without replacement, with
/// kernel images of draws from the weighted ensemble, then adds system noise to all
/// particles. Refreshed slots are tagged with birth t + 1; the step index increments.
void resample_mix(Ensemble& ensemble, std::span<const double> weights, double beta, const FilterConfig& config,
                  Rng& rng, StepBuffers& buffers);

/// Initial state: L prior draws used unchanged as the first prediction.
[[nodiscard]] FilterState init_filter(const FilterConfig& config);

/// weigh, summarize, resample_mix. The summary describes the posterior before noise.
/// On DegenerateWeights the state is left untouched.
[[nodiscard]] PosteriorSummary filter_step(FilterState& state, std::span<const double> y, const FilterConfig& config);

struct TraceRow {
  PosteriorSummary summary;
  /// |mean - truth| in the first dimension, when the record carries truth.
  std::optional<double> abs_error;
};

/// One summary per observation. Throws NoData for an empty stream and InputError
/// (with the 1-based record index) for a record of the wrong dimension or non-finite value.
[[nodiscard]] std::vector<TraceRow> run_filter(const FilterConfig& config,
                                               const std::vector<ObservationRecord>& observations);

}  // namespace recmix

#endif  // RECMIX_FILTER_HPP
