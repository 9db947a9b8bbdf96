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

#ifndef RECMIX_MIXING_HPP
#define RECMIX_MIXING_HPP

#include <cstddef>
#include <optional>
#include <vector>

/**
 * \file
 * \brief Recency-decay mixing coefficients over lags and integer sample budgets.
 *
 * The lag-m component of the mixture transition is weighted by
 * theta_m = alpha * theta0 * (1 - beta)^m, m = 1..M, where alpha normalizes the
 * coefficients to sum to one. theta0 therefore cancels and is kept only so that
 * a DecaySpec carries the full parameterization.
 */

namespace recmix {

/// Parameters of the geometric recency decay.
struct DecaySpec {
  /// Rate of decrease in [0, 1]. beta = 1 is the first-order limit, beta = 0 weights all lags equally.
  double beta = 0.5;
  /// Base coefficient. Cancels under normalization.
  double theta0 = 1.0;
  /// Number of lags M. `std::nullopt` means unbounded.
  std::optional<std::size_t> horizon = std::nullopt;

  [[nodiscard]] bool unbounded() const noexcept { return !horizon.has_value(); }

  /// Throws InvalidParameter if beta is outside [0, 1], theta0 <= 0 or horizon == 0.
  void validate() const;

  /// True when beta = 0: the chain never refreshes its samples.
  [[nodiscard]] bool frozen() const noexcept { return beta == 0.0; }
};

/// Normalized mixing coefficients; element `m - 1` is the weight of lag m.
struct MixingWeights {
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const noexcept { return weights.size(); }
  [[nodiscard]] double operator[](std::size_t lag_index) const { return weights[lag_index]; }
};

/// Integer sample counts per lag; element `m - 1` is the budget of lag m.
struct Allocation {
  std::vector<std::size_t> counts;

  [[nodiscard]] std::size_t total() const noexcept;
};

/// Normalized coefficients over a finite horizon.
///
/// For an unbounded spec with beta > 0 the closed form beta * (1 - beta)^(m - 1)
/// is returned truncated at `effective_horizon(beta, 1e-12)` lags; use
/// `unbounded_mixing_weights` to request an explicit length.
///
/// Throws NonNormalizable for an unbounded spec with beta = 0 and InvalidParameter
/// for an invalid spec.
[[nodiscard]] MixingWeights mixing_weights(const DecaySpec& spec);

/// First `length` terms of the closed-form infinite-horizon law beta * (1 - beta)^(m - 1).
/// Not renormalized: the omitted tail has mass (1 - beta)^length.
[[nodiscard]] MixingWeights unbounded_mixing_weights(double beta, std::size_t length);

/// Expected fraction of the sample budget sitting at lag m under the infinite-horizon law.
[[nodiscard]] double lag_fraction(double beta, std::size_t lag);

/// Largest-remainder apportionment of `total` samples across `weights`.
///
/// Each component first receives floor(theta_m * total); the remaining units go to the
/// components with the largest fractional parts, lower lags first on ties. The result
/// sums to `total` exactly and every count is within one of theta_m * total.
[[nodiscard]] Allocation allocate_samples(std::size_t total, const MixingWeights& weights);

/// Smallest M >= 1 such that the tail mass (1 - beta)^M falls below `epsilon`.
[[nodiscard]] std::size_t effective_horizon(double beta, double epsilon);

/// Number of samples refreshed per step: round-half-up of `total * beta`.
[[nodiscard]] std::size_t refresh_count(std::size_t total, double beta);

}  // namespace recmix

#endif  // RECMIX_MIXING_HPP
