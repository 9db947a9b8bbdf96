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

#include "recmix/filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "recmix/errors.hpp"

namespace recmix {

void FilterConfig::validate() const {
  if (particles == 0) {
    throw InvalidParameter("filter needs at least one particle");
  }
  decay.validate();
  prior.validate();
  kernel.validate();
  obs_model.validate();
  if (kernel.dim != prior.dim || obs_model.dim != prior.dim) {
    throw InvalidParameter("prior, kernel and observation model dimensions differ");
  }
  if (noise_std.size() != 1 && noise_std.size() != prior.dim) {
    throw InvalidParameter("noise std needs one entry or one per dimension");
  }
  for (const double s : noise_std) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw InvalidParameter("noise std must be finite and nonnegative");
    }
  }
}

ImportanceWeights weigh(const Ensemble& ensemble, std::span<const double> y, const ObservationModelSpec& obs_model) {
  const std::size_t size = ensemble.size();
  ImportanceWeights out;
  out.weights.resize(size);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size; ++i) {
    out.weights[i] = log_likelihood(obs_model, y, ensemble.sample(i));
    if (std::isnan(out.weights[i])) {
      throw DegenerateWeights("likelihood is NaN for particle " + std::to_string(i));
    }
    max_log = std::max(max_log, out.weights[i]);
  }
  if (!std::isfinite(max_log)) {
    throw DegenerateWeights("every particle has zero likelihood at step " + std::to_string(ensemble.step() + 1));
  }
  double sum = 0.0;
  for (auto& w : out.weights) {
    w = std::exp(w - max_log);
    sum += w;
  }
  for (auto& w : out.weights) {
    w /= sum;
  }
  out.log_mean_likelihood = max_log + std::log(sum / static_cast<double>(size));
  return out;
}

PosteriorSummary summarize(const Ensemble& ensemble, const ImportanceWeights& weights) {
  const std::size_t size = ensemble.size();
  const std::size_t dim = ensemble.dim();
  PosteriorSummary out;
  out.t = ensemble.step() + 1;
  out.mean.assign(dim, 0.0);
  out.std.assign(dim, 0.0);
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double w = weights.weights[i];
    sum_sq += w * w;
    const auto z = ensemble.sample(i);
    for (std::size_t d = 0; d < dim; ++d) {
      out.mean[d] += w * z[d];
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    const auto z = ensemble.sample(i);
    for (std::size_t d = 0; d < dim; ++d) {
      const double r = z[d] - out.mean[d];
      out.std[d] += weights.weights[i] * r * r;
    }
  }
  for (auto& s : out.std) {
    s = std::sqrt(s);
  }
  out.ess = std::clamp(1.0 / sum_sq, 1.0, static_cast<double>(size));
  out.log_marginal_increment = weights.log_mean_likelihood;
  return out;
}

void resample_mix(Ensemble& ensemble, std::span<const double> weights, double beta, const FilterConfig& config,
                  Rng& rng, StepBuffers& buffers) {
  const std::size_t size = ensemble.size();
  const std::size_t dim = ensemble.dim();
  const std::size_t refresh = refresh_count(size, beta);
  const std::int64_t next = ensemble.step() + 1;

  const auto slots = rng.choose_without_replacement(size, refresh, buffers.indices);

  buffers.parents.resize(refresh);
  if (refresh > 0) {
    // Cumulative weights; the last entry is the exact total so draws never fall off the end.
    buffers.parent_values.resize(size);
    std::partial_sum(weights.begin(), weights.end(), buffers.parent_values.begin());
    const double total = buffers.parent_values.back();
    const auto pick = [&](double u) {
      const auto it = std::upper_bound(buffers.parent_values.begin(), buffers.parent_values.end(), u * total);
      return std::min<std::size_t>(static_cast<std::size_t>(it - buffers.parent_values.begin()), size - 1);
    };
    if (config.scheme == ResamplingScheme::kSystematic) {
      const double offset = rng.uniform();
      for (std::size_t j = 0; j < refresh; ++j) {
        buffers.parents[j] = pick((offset + static_cast<double>(j)) / static_cast<double>(refresh));
      }
    } else {
      for (std::size_t j = 0; j < refresh; ++j) {
        buffers.parents[j] = pick(rng.uniform());
      }
    }
  }

  // Snapshot the posterior draws before any slot is overwritten.
  buffers.parent_values.resize(refresh * dim);
  for (std::size_t j = 0; j < refresh; ++j) {
    const auto parent = ensemble.sample(buffers.parents[j]);
    std::copy(parent.begin(), parent.end(), buffers.parent_values.begin() + static_cast<std::ptrdiff_t>(j * dim));
  }
  for (std::size_t j = 0; j < refresh; ++j) {
    const std::span<const double> parent{buffers.parent_values.data() + j * dim, dim};
    kernel_sample(config.kernel, parent, rng, ensemble.sample(slots[j]));
    ensemble.births()[slots[j]] = next;
  }

  for (std::size_t d = 0; d < dim; ++d) {
    const double noise = config.noise_for(d);
    if (noise == 0.0) {
      continue;
    }
    for (std::size_t i = 0; i < size; ++i) {
      ensemble.sample(i)[d] += rng.normal(0.0, noise);
    }
  }
  ensemble.clear_weights();
  ensemble.set_step(next);
}

FilterState init_filter(const FilterConfig& config) {
  config.validate();
  Rng rng(config.seed);
  auto ensemble = init_ensemble(config.particles, config.prior, rng);
  return FilterState{std::move(ensemble), std::move(rng)};
}

PosteriorSummary filter_step(FilterState& state, std::span<const double> y, const FilterConfig& config) {
  const auto weights = weigh(state.ensemble, y, config.obs_model);
  auto summary = summarize(state.ensemble, weights);
  resample_mix(state.ensemble, weights.weights, config.decay.beta, config, state.rng, state.buffers);
  return summary;
}

std::vector<TraceRow> run_filter(const FilterConfig& config, const std::vector<ObservationRecord>& observations) {
  if (observations.empty()) {
    throw NoData("observation stream is empty");
  }
  auto state = init_filter(config);
  std::vector<TraceRow> trace;
  trace.reserve(observations.size());
  for (std::size_t r = 0; r < observations.size(); ++r) {
    const auto& record = observations[r];
    if (record.y.size() != config.dim()) {
      throw InputError("observation has dimension " + std::to_string(record.y.size()) + ", expected " +
                           std::to_string(config.dim()),
                       r + 1);
    }
    if (!std::all_of(record.y.begin(), record.y.end(), [](double v) { return std::isfinite(v); })) {
      throw InputError("observation is not finite", r + 1);
    }
    TraceRow row{filter_step(state, record.y, config), std::nullopt};
    row.summary.t = record.t;
    if (record.truth && !record.truth->empty()) {
      row.abs_error = std::abs(row.summary.mean[0] - (*record.truth)[0]);
    }
    trace.push_back(std::move(row));
  }
  return trace;
}

}  // namespace recmix
