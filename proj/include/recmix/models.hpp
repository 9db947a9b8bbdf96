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

#ifndef RECMIX_MODELS_HPP
#define RECMIX_MODELS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recmix/random.hpp"

namespace recmix {

/// Transition kernel h: identity, linear map a * z, or Gaussian random walk z + N(0, std^2).
struct TransitionKernelSpec {
  enum class Kind { kIdentity, kLinear, kRandomWalk };

  Kind kind = Kind::kIdentity;
  /// Slope for kLinear, step std for kRandomWalk; unused for kIdentity.
  double parameter = 0.0;
  std::size_t dim = 1;

  [[nodiscard]] static TransitionKernelSpec identity(std::size_t dim = 1) { return {Kind::kIdentity, 0.0, dim}; }
  [[nodiscard]] static TransitionKernelSpec linear(double slope, std::size_t dim = 1) {
    return {Kind::kLinear, slope, dim};
  }
  [[nodiscard]] static TransitionKernelSpec random_walk(double stddev, std::size_t dim = 1) {
    return {Kind::kRandomWalk, stddev, dim};
  }

  void validate() const;
  [[nodiscard]] bool deterministic() const noexcept { return kind != Kind::kRandomWalk || parameter == 0.0; }
};

/// Observation likelihood p(y | z): independent Gaussian per dimension or Bernoulli with logit link.
struct ObservationModelSpec {
  enum class Kind { kGaussian, kBernoulliLogit };

  Kind kind = Kind::kGaussian;
  double stddev = 1.0;
  std::size_t dim = 1;

  [[nodiscard]] static ObservationModelSpec gaussian(double stddev, std::size_t dim = 1) {
    return {Kind::kGaussian, stddev, dim};
  }
  [[nodiscard]] static ObservationModelSpec bernoulli_logit(std::size_t dim = 1) {
    return {Kind::kBernoulliLogit, 1.0, dim};
  }

  void validate() const;
};

/// Initial distribution f(z), applied independently in every dimension.
struct PriorSpec {
  enum class Kind { kNormal, kUniform, kPointMass };

  Kind kind = Kind::kNormal;
  double a = 0.0;  ///< mean, lower bound or location
  double b = 1.0;  ///< std or upper bound; unused for kPointMass
  std::size_t dim = 1;

  [[nodiscard]] static PriorSpec normal(double mean, double stddev, std::size_t dim = 1) {
    return {Kind::kNormal, mean, stddev, dim};
  }
  [[nodiscard]] static PriorSpec uniform(double lo, double hi, std::size_t dim = 1) {
    return {Kind::kUniform, lo, hi, dim};
  }
  [[nodiscard]] static PriorSpec point_mass(double value, std::size_t dim = 1) {
    return {Kind::kPointMass, value, 0.0, dim};
  }

  void validate() const;
};

/// Synthetic ground-truth stream.
///
/// Latent truth at step t (t = 0..length-1):
///  - changepoint: levels[i] where i is the number of change times <= t
///  - drift: 0 at t = 0, then a Gaussian random walk with step std `drift_std`
///  - sinusoid: amplitude * cos(2 * pi * t / period)
/// Observations are y_t = truth_t + N(0, obs_std^2).
struct GeneratorSpec {
  enum class Kind { kChangepoint, kDrift, kSinusoid };

  Kind kind = Kind::kChangepoint;
  std::vector<double> levels{0.0, 5.0};
  std::vector<std::int64_t> times{50};
  double drift_std = 0.1;
  double amplitude = 1.0;
  double period = 20.0;
  double obs_std = 1.0;
  std::size_t length = 100;
  std::uint64_t seed = 0;

  void validate() const;
};

/// One timestamped observation, optionally with the latent state that produced it.
struct ObservationRecord {
  std::int64_t t = 0;
  std::vector<double> y;
  std::optional<std::vector<double>> truth;
};

/// Draws z' ~ h(parent) into `out`. `parent` and `out` may alias.
void kernel_sample(const TransitionKernelSpec& spec, std::span<const double> parent, Rng& rng,
                   std::span<double> out);

/// Scalar convenience overload.
[[nodiscard]] double kernel_sample(const TransitionKernelSpec& spec, double parent, Rng& rng);

/// log p(y | z), summed over dimensions.
[[nodiscard]] double log_likelihood(const ObservationModelSpec& spec, std::span<const double> y,
                                    std::span<const double> z);

[[nodiscard]] double log_likelihood(const ObservationModelSpec& spec, double y, double z);

void prior_sample(const PriorSpec& spec, Rng& rng, std::span<double> out);

[[nodiscard]] std::vector<ObservationRecord> generate(const GeneratorSpec& spec);

/// Parses the textual forms used by the CLI, e.g. `identity`, `linear:0.9`, `random_walk:0.1`.
[[nodiscard]] TransitionKernelSpec parse_kernel(std::string_view text, std::size_t dim = 1);
/// `gaussian:1.0` or `bernoulli_logit`.
[[nodiscard]] ObservationModelSpec parse_observation_model(std::string_view text, std::size_t dim = 1);
/// `normal:0,1`, `uniform:-1,1` or `point:3`.
[[nodiscard]] PriorSpec parse_prior(std::string_view text, std::size_t dim = 1);
/// `changepoint:0,5@50`, `drift:0.1` or `sinusoid:1,20`. Length, seed and obs_std are set separately.
[[nodiscard]] GeneratorSpec parse_generator(std::string_view text);

[[nodiscard]] std::string to_string(const TransitionKernelSpec& spec);
[[nodiscard]] std::string to_string(const ObservationModelSpec& spec);
[[nodiscard]] std::string to_string(const PriorSpec& spec);
[[nodiscard]] std::string to_string(const GeneratorSpec& spec);

}  // namespace recmix

#endif  // RECMIX_MODELS_HPP
