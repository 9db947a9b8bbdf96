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

#ifndef RECMIX_ORACLE_HPP
#define RECMIX_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "recmix/mixing.hpp"
#include "recmix/models.hpp"
#include "recmix/random.hpp"

/**
 * \file
 * \brief Reference constructions used to validate the constant-memory algorithms.
 *
 * The explicit mixture keeps every past sample set and draws each lag's share of
 * the budget from the matching bank, so its memory grows linearly in t. The
 * Kalman recursion is the closed-form posterior of the scalar linear-Gaussian
 * identity model that the beta = 1 filter must reproduce.
 */

namespace recmix {

/// Full history of per-step sample sets; bank j was drawn at step j.
class HistoryBank {
 public:
  HistoryBank(std::size_t bank_size, std::size_t dim);

  void push(std::vector<double> bank);

  /// Number of banks, t + 1 after step t.
  [[nodiscard]] std::size_t size() const noexcept { return banks_.size(); }
  [[nodiscard]] bool empty() const noexcept { return banks_.empty(); }
  [[nodiscard]] std::size_t bank_size() const noexcept { return bank_size_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::span<const double> bank(std::size_t step) const { return banks_.at(step); }
  [[nodiscard]] std::span<const double> latest() const { return banks_.back(); }
  [[nodiscard]] std::size_t storage_bytes() const noexcept;

 private:
  std::size_t bank_size_;
  std::size_t dim_;
  std::vector<std::vector<double>> banks_;
};

struct ExplicitMixture {
  /// `total` samples, grouped by lag (lag 1 first).
  std::vector<double> samples;
  /// Samples per lag; element m - 1 is lag m.
  Allocation allocation;
};

/// Draws the next-step mixture directly from the stored history.
///
/// Uses M = min(horizon, history.size()) lags, where an unbounded horizon is truncated
/// at effective_horizon(beta, 1e-6). Lag m receives allocate_samples(total, weights)[m - 1]
/// samples, each the kernel image of a parent drawn uniformly from the most recent bank
/// minus (m - 1). Throws InvalidState for an empty history.
[[nodiscard]] ExplicitMixture explicit_mixture(const HistoryBank& history, const DecaySpec& spec, std::size_t total,
                                               const TransitionKernelSpec& kernel, Rng& rng);

/// Runs the explicit construction for `steps` steps from a prior draw. The result holds steps + 1 banks.
[[nodiscard]] HistoryBank run_oracle(std::size_t steps, std::size_t size, const DecaySpec& spec,
                                     const TransitionKernelSpec& kernel, const PriorSpec& prior, Rng& rng);

struct OracleComparisonRow {
  std::int64_t t = 0;
  /// W1 between the fixed-budget chain and an explicit-mixture run, averaged over seeds.
  double distance = 0.0;
  /// W1 between two independent explicit-mixture runs, averaged over seeds.
  double baseline = 0.0;
};

/// Runs the fixed-budget chain and the explicit mixture side by side for each seed
/// (independent streams per seed and role) and reports per-step distances for t = 1..steps.
/// Scalar states only; throws Unsupported for dim > 1.
[[nodiscard]] std::vector<OracleComparisonRow> oracle_vs_chain_distance(std::size_t steps, std::size_t size,
                                                                        double beta,
                                                                        const TransitionKernelSpec& kernel,
                                                                        const PriorSpec& prior,
                                                                        std::span<const std::uint64_t> seeds);

/// Scalar Gaussian belief N(mean, variance).
struct GaussianBelief {
  double mean = 0.0;
  double variance = 1.0;
};

/// Predict-update recursion for z_t = z_{t-1} + N(0, process_noise), y_t = z_t + N(0, obs_noise).
[[nodiscard]] GaussianBelief kalman_step(const GaussianBelief& belief, double y, double obs_noise,
                                         double process_noise);

}  // namespace recmix

#endif  // RECMIX_ORACLE_HPP
