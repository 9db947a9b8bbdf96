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

#include "recmix/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "recmix/chain.hpp"
#include "recmix/errors.hpp"
#include "recmix/metrics.hpp"

namespace recmix {

namespace {

constexpr double kOracleTailMass = 1e-6;

std::size_t oracle_horizon(const DecaySpec& spec, std::size_t fallback) {
  if (spec.horizon) {
    return *spec.horizon;
  }
  return spec.frozen() ? fallback : effective_horizon(spec.beta, kOracleTailMass);
}

}  // namespace

HistoryBank::HistoryBank(std::size_t bank_size, std::size_t dim) : bank_size_(bank_size), dim_(dim) {
  if (bank_size == 0 || dim == 0) {
    throw InvalidParameter("history banks need a positive size and dimension");
  }
}

void HistoryBank::push(std::vector<double> bank) {
  if (bank.size() != bank_size_ * dim_) {
    throw InvalidParameter("bank holds " + std::to_string(bank.size()) + " values, expected " +
                           std::to_string(bank_size_ * dim_));
  }
  banks_.push_back(std::move(bank));
}

std::size_t HistoryBank::storage_bytes() const noexcept {
  return banks_.size() * bank_size_ * dim_ * sizeof(double);
}

ExplicitMixture explicit_mixture(const HistoryBank& history, const DecaySpec& spec, std::size_t total,
                                 const TransitionKernelSpec& kernel, Rng& rng) {
  if (history.empty()) {
    throw InvalidState("explicit mixture needs at least one bank of history");
  }
  spec.validate();
  if (spec.unbounded() && spec.frozen()) {
    throw NonNormalizable("beta = 0 over an unbounded horizon gives a divergent series");
  }
  const std::size_t lags = std::min(oracle_horizon(spec, history.size()), history.size());
  const auto weights = mixing_weights(DecaySpec{spec.beta, spec.theta0, lags});

  const std::size_t dim = history.dim();
  ExplicitMixture out{std::vector<double>(total * dim), allocate_samples(total, weights)};
  std::size_t slot = 0;
  for (std::size_t m = 1; m <= lags; ++m) {
    const auto bank = history.bank(history.size() - m);
    for (std::size_t j = 0; j < out.allocation.counts[m - 1]; ++j, ++slot) {
      const auto parent = rng.index(history.bank_size());
      kernel_sample(kernel, bank.subspan(parent * dim, dim), rng, {out.samples.data() + slot * dim, dim});
    }
  }
  return out;
}

HistoryBank run_oracle(std::size_t steps, std::size_t size, const DecaySpec& spec,
                       const TransitionKernelSpec& kernel, const PriorSpec& prior, Rng& rng) {
  HistoryBank history(size, prior.dim);
  const auto initial = init_ensemble(size, prior, rng);
  history.push({initial.values().begin(), initial.values().end()});
  for (std::size_t t = 0; t < steps; ++t) {
    history.push(explicit_mixture(history, spec, size, kernel, rng).samples);
  }
  return history;
}

std::vector<OracleComparisonRow> oracle_vs_chain_distance(std::size_t steps, std::size_t size, double beta,
                                                          const TransitionKernelSpec& kernel, const PriorSpec& prior,
                                                          std::span<const std::uint64_t> seeds) {
  if (prior.dim != 1 || kernel.dim != 1) {
    throw Unsupported("exact Wasserstein comparison is only defined for scalar states");
  }
  if (seeds.empty()) {
    throw InvalidParameter("oracle comparison needs at least one seed");
  }
  const DecaySpec spec{beta, 1.0, beta > 0.0 ? effective_horizon(beta, kOracleTailMass) : std::max<std::size_t>(steps, 1)};
  spec.validate();

  std::vector<OracleComparisonRow> rows(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    rows[t].t = static_cast<std::int64_t>(t + 1);
  }
  for (const auto seed : seeds) {
    Rng chain_rng = Rng::derive(seed, 0);
    Rng oracle_rng = Rng::derive(seed, 1);
    Rng replica_rng = Rng::derive(seed, 2);

    auto ensemble = init_ensemble(size, prior, chain_rng);
    StepBuffers buffers;
    const auto oracle = run_oracle(steps, size, spec, kernel, prior, oracle_rng);
    const auto replica = run_oracle(steps, size, spec, kernel, prior, replica_rng);
    for (std::size_t t = 1; t <= steps; ++t) {
      evolve_step(ensemble, kernel, beta, chain_rng, buffers);
      rows[t - 1].distance += wasserstein1(ensemble.values(), oracle.bank(t));
      rows[t - 1].baseline += wasserstein1(oracle.bank(t), replica.bank(t));
    }
  }
  const auto n = static_cast<double>(seeds.size());
  for (auto& row : rows) {
    row.distance /= n;
    row.baseline /= n;
  }
  return rows;
}

GaussianBelief kalman_step(const GaussianBelief& belief, double y, double obs_noise, double process_noise) {
  if (!(obs_noise > 0.0)) {
    throw InvalidParameter("observation noise variance must be positive");
  }
  if (!(process_noise >= 0.0) || !(belief.variance >= 0.0)) {
    throw InvalidParameter("variances must be nonnegative");
  }
  if (!std::isfinite(y) || !std::isfinite(belief.mean)) {
    throw InvalidParameter("kalman_step needs finite inputs");
  }
  const double predicted = belief.variance + process_noise;
  const double gain = predicted / (predicted + obs_noise);
  return {belief.mean + gain * (y - belief.mean), predicted * (1.0 - gain)};
}

}  // namespace recmix
