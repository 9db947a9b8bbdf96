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

#include "recmix/chain.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "recmix/errors.hpp"
#include "recmix/mixing.hpp"

namespace recmix {

Ensemble::Ensemble(std::size_t size, std::size_t dim) : dim_(dim), values_(size * dim), births_(size, 0) {
  if (size == 0) {
    throw InvalidParameter("ensemble size must be at least 1");
  }
  if (dim == 0) {
    throw InvalidParameter("state dimension must be at least 1");
  }
}

void Ensemble::set_weights(std::vector<double> weights) {
  if (weights.size() != size()) {
    throw InvalidParameter("weight vector has " + std::to_string(weights.size()) + " entries for " +
                           std::to_string(size()) + " samples");
  }
  weights_ = std::move(weights);
}

std::size_t Ensemble::storage_bytes() const noexcept {
  return values_.size() * sizeof(double) + births_.size() * sizeof(std::int64_t) +
         (weights_ ? weights_->size() * sizeof(double) : 0);
}

void Ensemble::validate() const {
  for (const auto birth : births_) {
    if (birth > step_ || birth < 0) {
      throw InvalidState("birth tag " + std::to_string(birth) + " outside [0, " + std::to_string(step_) + "]");
    }
  }
  if (weights_) {
    double sum = 0.0;
    for (const double w : *weights_) {
      if (!(w >= 0.0)) {
        throw InvalidState("negative or NaN importance weight");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw InvalidState("importance weights sum to " + std::to_string(sum));
    }
  }
}

std::size_t LagComposition::count(std::size_t lag) const {
  const auto it = counts.find(lag);
  return it == counts.end() ? 0 : it->second;
}

std::size_t LagComposition::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0},
                         [](std::size_t acc, const auto& entry) { return acc + entry.second; });
}

Ensemble init_ensemble(std::size_t size, const PriorSpec& prior, Rng& rng) {
  prior.validate();
  Ensemble ensemble(size, prior.dim);
  for (std::size_t i = 0; i < size; ++i) {
    prior_sample(prior, rng, ensemble.sample(i));
  }
  return ensemble;
}

Ensemble init_ensemble(std::size_t size, const PriorSpec& prior, std::uint64_t seed) {
  Rng rng(seed);
  return init_ensemble(size, prior, rng);
}

void evolve_step(Ensemble& ensemble, const TransitionKernelSpec& kernel, double beta, Rng& rng,
                 StepBuffers& buffers) {
  const std::size_t size = ensemble.size();
  const std::size_t dim = ensemble.dim();
  const std::size_t refresh = refresh_count(size, beta);
  const std::int64_t next = ensemble.step() + 1;

  const auto slots = rng.choose_without_replacement(size, refresh, buffers.indices);
  // Parents come from the pre-step ensemble, so snapshot them before any slot is overwritten.
  buffers.parents.resize(refresh);
  buffers.parent_values.resize(refresh * dim);
  for (std::size_t j = 0; j < refresh; ++j) {
    buffers.parents[j] = rng.index(size);
    const auto parent = ensemble.sample(buffers.parents[j]);
    std::copy(parent.begin(), parent.end(), buffers.parent_values.begin() + static_cast<std::ptrdiff_t>(j * dim));
  }
  for (std::size_t j = 0; j < refresh; ++j) {
    const std::span<const double> parent{buffers.parent_values.data() + j * dim, dim};
    kernel_sample(kernel, parent, rng, ensemble.sample(slots[j]));
    ensemble.births()[slots[j]] = next;
  }
  ensemble.clear_weights();
  ensemble.set_step(next);
}

Ensemble evolve_step(Ensemble ensemble, const TransitionKernelSpec& kernel, double beta, Rng& rng) {
  StepBuffers buffers;
  evolve_step(ensemble, kernel, beta, rng, buffers);
  return ensemble;
}

LagComposition composition(const Ensemble& ensemble) {
  LagComposition out;
  out.step = ensemble.step();
  for (const auto birth : ensemble.births()) {
    ++out.counts[static_cast<std::size_t>(ensemble.step() - birth + 1)];
  }
  return out;
}

ChainRun run_chain(std::size_t size, const PriorSpec& prior, const TransitionKernelSpec& kernel, double beta,
                   std::size_t steps, std::uint64_t seed) {
  if (steps == 0) {
    throw InvalidParameter("a chain run needs at least one step");
  }
  kernel.validate();
  if (kernel.dim != prior.dim) {
    throw InvalidParameter("kernel and prior dimensions differ");
  }
  static_cast<void>(refresh_count(size, beta));  // validates beta

  Rng rng(seed);
  ChainRun run{{}, init_ensemble(size, prior, rng)};
  run.compositions.reserve(steps);
  StepBuffers buffers;
  for (std::size_t t = 0; t < steps; ++t) {
    evolve_step(run.final_ensemble, kernel, beta, rng, buffers);
    run.compositions.push_back(composition(run.final_ensemble));
  }
  return run;
}

}  // namespace recmix
