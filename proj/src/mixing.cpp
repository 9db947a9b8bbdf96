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

#include "recmix/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "recmix/errors.hpp"

namespace recmix {

namespace {

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw InvalidParameter("beta must lie in [0, 1], got " + std::to_string(beta));
  }
}

}  // namespace

void DecaySpec::validate() const {
  check_beta(beta);
  if (!(theta0 > 0.0) || !std::isfinite(theta0)) {
    throw InvalidParameter("theta0 must be positive, got " + std::to_string(theta0));
  }
  if (horizon.has_value() && *horizon == 0) {
    throw InvalidParameter("horizon must be at least one lag");
  }
}

std::size_t Allocation::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

MixingWeights mixing_weights(const DecaySpec& spec) {
  spec.validate();
  if (spec.unbounded()) {
    if (spec.frozen()) {
      throw NonNormalizable("beta = 0 over an unbounded horizon gives a divergent series");
    }
    return unbounded_mixing_weights(spec.beta, effective_horizon(spec.beta, 1e-12));
  }

  // theta0 * (1 - beta)^m and (1 - beta)^(m - 1) differ by a constant factor, so they
  // normalize to the same weights. The latter stays well defined at beta = 1.
  const double keep = 1.0 - spec.beta;
  MixingWeights out;
  out.weights.resize(*spec.horizon);
  double term = 1.0;
  for (auto& w : out.weights) {
    w = term;
    term *= keep;
  }
  const double sum = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (auto& w : out.weights) {
    w /= sum;
  }
  return out;
}

MixingWeights unbounded_mixing_weights(double beta, std::size_t length) {
  check_beta(beta);
  if (beta == 0.0) {
    throw NonNormalizable("beta = 0 over an unbounded horizon gives a divergent series");
  }
  MixingWeights out;
  out.weights.resize(length);
  for (std::size_t m = 0; m < length; ++m) {
    out.weights[m] = lag_fraction(beta, m + 1);
  }
  return out;
}

double lag_fraction(double beta, std::size_t lag) {
  if (lag == 0) {
    return 0.0;
  }
  return beta * std::pow(1.0 - beta, static_cast<double>(lag - 1));
}

Allocation allocate_samples(std::size_t total, const MixingWeights& weights) {
  if (total == 0) {
    throw InvalidParameter("sample budget must be positive");
  }
  if (weights.size() == 0) {
    throw InvalidParameter("cannot allocate over an empty set of components");
  }

  Allocation out;
  out.counts.resize(weights.size());
  std::vector<double> remainder(weights.size());
  std::size_t assigned = 0;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    const double exact = weights[m] * static_cast<double>(total);
    const double base = std::floor(exact);
    out.counts[m] = static_cast<std::size_t>(base);
    remainder[m] = exact - base;
    assigned += out.counts[m];
  }
  // Rounding noise in the weights can push the floors past the budget; trim from the smallest remainders.
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (auto it = order.rbegin(); assigned > total && it != order.rend(); ++it) {
    if (out.counts[*it] > 0) {
      --out.counts[*it];
      --assigned;
    }
  }
  for (std::size_t i = 0; assigned < total; i = (i + 1) % order.size()) {
    ++out.counts[order[i]];
    ++assigned;
  }
  return out;
}

std::size_t effective_horizon(double beta, double epsilon) {
  check_beta(beta);
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidParameter("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
  if (beta == 0.0) {
    throw NonNormalizable("beta = 0 has no finite effective horizon");
  }
  const double keep = 1.0 - beta;
  if (keep < epsilon) {
    return 1;
  }
  // Start just below the logarithmic estimate, then step up to the exact crossing.
  const double estimate = std::log(epsilon) / std::log(keep);
  auto lags = static_cast<std::size_t>(std::max(1.0, std::floor(estimate) - 1.0));
  while (lags > 1 && std::pow(keep, static_cast<double>(lags - 1)) < epsilon) {
    --lags;
  }
  while (!(std::pow(keep, static_cast<double>(lags)) < epsilon)) {
    ++lags;
  }
  return lags;
}

std::size_t refresh_count(std::size_t total, double beta) {
  check_beta(beta);
  return static_cast<std::size_t>(std::floor(static_cast<double>(total) * beta + 0.5));
}

}  // namespace recmix
