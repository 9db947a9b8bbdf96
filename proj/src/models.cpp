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

#include "recmix/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "recmix/detail/format.hpp"
#include "recmix/errors.hpp"

namespace recmix {

namespace {

using detail::format_double;

void require_finite(std::span<const double> values, const char* what) {
  for (const double v : values) {
    if (!std::isfinite(v)) {
      throw InvalidParameter(std::string(what) + " contains a non-finite value");
    }
  }
}

// log(sigmoid(z)) without overflow for large |z|.
double log_sigmoid(double z) {
  return z >= 0.0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
}

double parse_number(std::string_view text, std::string_view context) {
  while (!text.empty() && text.front() == ' ') {
    text.remove_prefix(1);
  }
  while (!text.empty() && text.back() == ' ') {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidParameter("cannot parse number '" + std::string(text) + "' in '" + std::string(context) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view text, std::string_view context) {
  std::vector<double> out;
  if (text.empty()) {
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start), context));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

/// Splits `name:args` into its two halves; args is empty when there is no colon.
std::pair<std::string_view, std::string_view> split_kind(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    return {text, {}};
  }
  return {text.substr(0, colon), text.substr(colon + 1)};
}

std::vector<double> expect_args(std::string_view args, std::size_t count, std::string_view context) {
  auto values = parse_list(args, context);
  if (values.size() != count) {
    throw InvalidParameter("expected " + std::to_string(count) + " argument(s) in '" + std::string(context) + "'");
  }
  return values;
}

}  // namespace

void TransitionKernelSpec::validate() const {
  if (dim == 0) {
    throw InvalidParameter("kernel dimension must be at least 1");
  }
  if (!std::isfinite(parameter)) {
    throw InvalidParameter("kernel parameter must be finite");
  }
  if (kind == Kind::kRandomWalk && parameter < 0.0) {
    throw InvalidParameter("random-walk std must be nonnegative");
  }
}

void ObservationModelSpec::validate() const {
  if (dim == 0) {
    throw InvalidParameter("observation dimension must be at least 1");
  }
  if (kind == Kind::kGaussian && !(stddev > 0.0 && std::isfinite(stddev))) {
    throw InvalidParameter("gaussian observation std must be positive");
  }
}

void PriorSpec::validate() const {
  if (dim == 0) {
    throw InvalidParameter("prior dimension must be at least 1");
  }
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidParameter("prior parameters must be finite");
  }
  if (kind == Kind::kNormal && b < 0.0) {
    throw InvalidParameter("normal prior std must be nonnegative");
  }
  if (kind == Kind::kUniform && !(b > a)) {
    throw InvalidParameter("uniform prior needs lo < hi");
  }
}

void GeneratorSpec::validate() const {
  if (length == 0) {
    throw InvalidParameter("generator length must be at least 1");
  }
  if (!(obs_std >= 0.0)) {
    throw InvalidParameter("observation std must be nonnegative");
  }
  switch (kind) {
    case Kind::kChangepoint:
      if (levels.size() != times.size() + 1) {
        throw InvalidParameter("changepoint needs exactly one more level than change times");
      }
      if (!std::is_sorted(times.begin(), times.end()) ||
          std::adjacent_find(times.begin(), times.end()) != times.end()) {
        throw InvalidParameter("change times must be strictly increasing");
      }
      break;
    case Kind::kDrift:
      if (!(drift_std >= 0.0)) {
        throw InvalidParameter("drift std must be nonnegative");
      }
      break;
    case Kind::kSinusoid:
      if (!(period > 0.0)) {
        throw InvalidParameter("sinusoid period must be positive");
      }
      break;
  }
}

void kernel_sample(const TransitionKernelSpec& spec, std::span<const double> parent, Rng& rng,
                   std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    switch (spec.kind) {
      case TransitionKernelSpec::Kind::kIdentity:
        out[i] = parent[i];
        break;
      case TransitionKernelSpec::Kind::kLinear:
        out[i] = spec.parameter * parent[i];
        break;
      case TransitionKernelSpec::Kind::kRandomWalk:
        out[i] = parent[i] + rng.normal(0.0, spec.parameter);
        break;
    }
  }
}

double kernel_sample(const TransitionKernelSpec& spec, double parent, Rng& rng) {
  double out = parent;
  kernel_sample(spec, {&parent, 1}, rng, {&out, 1});
  return out;
}

double log_likelihood(const ObservationModelSpec& spec, std::span<const double> y, std::span<const double> z) {
  if (y.size() != z.size()) {
    throw InvalidParameter("observation and state dimensions differ");
  }
  require_finite(y, "observation");
  require_finite(z, "state");
  double total = 0.0;
  switch (spec.kind) {
    case ObservationModelSpec::Kind::kGaussian: {
      const double log_norm = std::log(spec.stddev * std::sqrt(2.0 * std::numbers::pi));
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = (y[i] - z[i]) / spec.stddev;
        total += -0.5 * r * r - log_norm;
      }
      break;
    }
    case ObservationModelSpec::Kind::kBernoulliLogit:
      for (std::size_t i = 0; i < y.size(); ++i) {
        total += y[i] * log_sigmoid(z[i]) + (1.0 - y[i]) * log_sigmoid(-z[i]);
      }
      break;
  }
  return total;
}

double log_likelihood(const ObservationModelSpec& spec, double y, double z) {
  return log_likelihood(spec, std::span<const double>{&y, 1}, std::span<const double>{&z, 1});
}

void prior_sample(const PriorSpec& spec, Rng& rng, std::span<double> out) {
  for (auto& v : out) {
    switch (spec.kind) {
      case PriorSpec::Kind::kNormal:
        v = spec.b == 0.0 ? spec.a : rng.normal(spec.a, spec.b);
        break;
      case PriorSpec::Kind::kUniform:
        v = spec.a + (spec.b - spec.a) * rng.uniform();
        break;
      case PriorSpec::Kind::kPointMass:
        v = spec.a;
        break;
    }
  }
}

std::vector<ObservationRecord> generate(const GeneratorSpec& spec) {
  spec.validate();
  Rng truth_rng = Rng::derive(spec.seed, 0);
  Rng noise_rng = Rng::derive(spec.seed, 1);
  std::vector<ObservationRecord> out;
  out.reserve(spec.length);
  double drift_state = 0.0;
  for (std::size_t step = 0; step < spec.length; ++step) {
    const auto t = static_cast<std::int64_t>(step);
    double truth = 0.0;
    switch (spec.kind) {
      case GeneratorSpec::Kind::kChangepoint: {
        const auto regime = std::upper_bound(spec.times.begin(), spec.times.end(), t) - spec.times.begin();
        truth = spec.levels[static_cast<std::size_t>(regime)];
        break;
      }
      case GeneratorSpec::Kind::kDrift:
        if (step > 0 && spec.drift_std > 0.0) {
          drift_state += truth_rng.normal(0.0, spec.drift_std);
        }
        truth = drift_state;
        break;
      case GeneratorSpec::Kind::kSinusoid:
        truth = spec.amplitude * std::cos(2.0 * std::numbers::pi * static_cast<double>(t) / spec.period);
        break;
    }
    const double y = spec.obs_std > 0.0 ? truth + noise_rng.normal(0.0, spec.obs_std) : truth;
    out.push_back({t, {y}, std::vector<double>{truth}});
  }
  return out;
}

TransitionKernelSpec parse_kernel(std::string_view text, std::size_t dim) {
  const auto [name, args] = split_kind(text);
  TransitionKernelSpec spec;
  if (name == "identity") {
    spec = TransitionKernelSpec::identity(dim);
  } else if (name == "linear") {
    spec = TransitionKernelSpec::linear(expect_args(args, 1, text)[0], dim);
  } else if (name == "random_walk") {
    spec = TransitionKernelSpec::random_walk(expect_args(args, 1, text)[0], dim);
  } else {
    throw InvalidParameter("unknown kernel '" + std::string(text) + "'");
  }
  spec.validate();
  return spec;
}

ObservationModelSpec parse_observation_model(std::string_view text, std::size_t dim) {
  const auto [name, args] = split_kind(text);
  ObservationModelSpec spec;
  if (name == "gaussian") {
    spec = ObservationModelSpec::gaussian(args.empty() ? 1.0 : expect_args(args, 1, text)[0], dim);
  } else if (name == "bernoulli_logit") {
    spec = ObservationModelSpec::bernoulli_logit(dim);
  } else {
    throw InvalidParameter("unknown observation model '" + std::string(text) + "'");
  }
  spec.validate();
  return spec;
}

PriorSpec parse_prior(std::string_view text, std::size_t dim) {
  const auto [name, args] = split_kind(text);
  PriorSpec spec;
  if (name == "normal") {
    const auto v = expect_args(args, 2, text);
    spec = PriorSpec::normal(v[0], v[1], dim);
  } else if (name == "uniform") {
    const auto v = expect_args(args, 2, text);
    spec = PriorSpec::uniform(v[0], v[1], dim);
  } else if (name == "point") {
    spec = PriorSpec::point_mass(expect_args(args, 1, text)[0], dim);
  } else {
    throw InvalidParameter("unknown prior '" + std::string(text) + "'");
  }
  spec.validate();
  return spec;
}

GeneratorSpec parse_generator(std::string_view text) {
  const auto [name, args] = split_kind(text);
  GeneratorSpec spec;
  if (name == "changepoint") {
    spec.kind = GeneratorSpec::Kind::kChangepoint;
    const auto at = args.find('@');
    spec.levels = parse_list(args.substr(0, at), text);
    spec.times.clear();
    if (at != std::string_view::npos) {
      for (const double v : parse_list(args.substr(at + 1), text)) {
        if (v != std::floor(v)) {
          throw InvalidParameter("change times must be integers in '" + std::string(text) + "'");
        }
        spec.times.push_back(static_cast<std::int64_t>(v));
      }
    }
  } else if (name == "drift") {
    spec.kind = GeneratorSpec::Kind::kDrift;
    spec.drift_std = expect_args(args, 1, text)[0];
  } else if (name == "sinusoid") {
    spec.kind = GeneratorSpec::Kind::kSinusoid;
    const auto v = expect_args(args, 2, text);
    spec.amplitude = v[0];
    spec.period = v[1];
  } else {
    throw InvalidParameter("unknown generator '" + std::string(text) + "'");
  }
  spec.validate();
  return spec;
}

std::string to_string(const TransitionKernelSpec& spec) {
  switch (spec.kind) {
    case TransitionKernelSpec::Kind::kIdentity:
      return "identity";
    case TransitionKernelSpec::Kind::kLinear:
      return "linear:" + format_double(spec.parameter);
    case TransitionKernelSpec::Kind::kRandomWalk:
      return "random_walk:" + format_double(spec.parameter);
  }
  return {};
}

std::string to_string(const ObservationModelSpec& spec) {
  return spec.kind == ObservationModelSpec::Kind::kGaussian ? "gaussian:" + format_double(spec.stddev)
                                                            : std::string("bernoulli_logit");
}

std::string to_string(const PriorSpec& spec) {
  switch (spec.kind) {
    case PriorSpec::Kind::kNormal:
      return "normal:" + format_double(spec.a) + "," + format_double(spec.b);
    case PriorSpec::Kind::kUniform:
      return "uniform:" + format_double(spec.a) + "," + format_double(spec.b);
    case PriorSpec::Kind::kPointMass:
      return "point:" + format_double(spec.a);
  }
  return {};
}

std::string to_string(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::kChangepoint: {
      std::string out = "changepoint:" + detail::join_doubles(spec.levels);
      if (!spec.times.empty()) {
        out += "@";
        for (std::size_t i = 0; i < spec.times.size(); ++i) {
          out += (i == 0 ? "" : ",") + std::to_string(spec.times[i]);
        }
      }
      return out;
    }
    case GeneratorSpec::Kind::kDrift:
      return "drift:" + format_double(spec.drift_std);
    case GeneratorSpec::Kind::kSinusoid:
      return "sinusoid:" + format_double(spec.amplitude) + "," + format_double(spec.period);
  }
  return {};
}

}  // namespace recmix
