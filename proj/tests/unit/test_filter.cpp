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

#include <gmock/gmock.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "../support/oracles.hpp"
#include "recmix/errors.hpp"
#include "recmix/filter.hpp"
#include "recmix/metrics.hpp"

namespace {

using recmix::Ensemble;
using recmix::FilterConfig;
using recmix::ImportanceWeights;
using recmix::ObservationModelSpec;
using recmix::ObservationRecord;
using recmix::PriorSpec;
using recmix::Rng;
using recmix::TransitionKernelSpec;

Ensemble scalar_ensemble(std::initializer_list<double> values) {
  Ensemble e(values.size(), 1);
  std::size_t i = 0;
  for (const double v : values) {
    e.sample(i++)[0] = v;
  }
  return e;
}

std::vector<ObservationRecord> constant_stream(double y, std::size_t length) {
  std::vector<ObservationRecord> out;
  for (std::size_t t = 0; t < length; ++t) {
    out.push_back({static_cast<std::int64_t>(t), {y}, std::nullopt});
  }
  return out;
}

TEST(Weigh, TwoParticleExample) {
  const auto e = scalar_ensemble({0.0, 1.0});
  const std::vector<double> y{1.0};
  const auto w = recmix::weigh(e, y, ObservationModelSpec::gaussian(1.0));
  // exp(-1/2) : 1 normalized.
  const double a = std::exp(-0.5) / (1.0 + std::exp(-0.5));
  EXPECT_NEAR(w.weights[0], a, 1e-15);
  EXPECT_NEAR(w.weights[0], 0.37754, 1e-5);
  EXPECT_NEAR(w.weights[1], 0.62246, 1e-5);
}

TEST(Weigh, IdenticalParticlesAreUniform) {
  const auto e = scalar_ensemble({0.3, 0.3, 0.3, 0.3});
  const std::vector<double> y{-2.0};
  for (const double w : recmix::weigh(e, y, ObservationModelSpec::gaussian(1.0)).weights) {
    EXPECT_DOUBLE_EQ(w, 0.25);
  }
}

TEST(Weigh, SingleParticleGetsAllMass) {
  const auto e = scalar_ensemble({7.0});
  const std::vector<double> y{-30.0};
  EXPECT_EQ(recmix::weigh(e, y, ObservationModelSpec::gaussian(0.1)).weights[0], 1.0);
}

TEST(Weigh, SurvivesExtremeLogLikelihoods) {
  // Raw likelihoods underflow to zero here; log-space normalization does not.
  const auto e = scalar_ensemble({0.0, 1.0});
  const std::vector<double> y{100.0};
  const auto w = recmix::weigh(e, y, ObservationModelSpec::gaussian(0.1));
  EXPECT_NEAR(w.weights[1], 1.0, 1e-12);
  EXPECT_TRUE(std::isfinite(w.log_mean_likelihood));
}

TEST(FilterStep, DegenerateWeightsLeaveStateUntouched) {
  FilterConfig config;
  config.particles = 5;
  config.decay.beta = 0.5;
  auto state = recmix::init_filter(config);
  const auto before = state.ensemble;
  const std::vector<double> y{std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW((void)recmix::filter_step(state, y, config), recmix::InvalidParameter);
  EXPECT_EQ(state.step(), 0);
  EXPECT_TRUE(std::equal(before.values().begin(), before.values().end(), state.ensemble.values().begin()));

  // A particle at infinity has no finite likelihood anywhere.
  auto broken = scalar_ensemble({std::numeric_limits<double>::infinity()});
  const std::vector<double> zero{0.0};
  EXPECT_THROW((void)recmix::weigh(broken, zero, ObservationModelSpec::gaussian(1.0)), recmix::InvalidParameter);
}

TEST(Weigh, AllZeroLikelihoodIsDegenerate) {
  // Squared residuals overflow, so every log-likelihood is -inf.
  const auto e = scalar_ensemble({1e200, 2e200});
  const std::vector<double> y{-1e200};
  EXPECT_THROW((void)recmix::weigh(e, y, ObservationModelSpec::gaussian(1.0)), recmix::DegenerateWeights);
}

TEST(Summarize, EffectiveSampleSize) {
  const auto e = scalar_ensemble({1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(recmix::summarize(e, ImportanceWeights{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.0}).ess, 3.0);
  EXPECT_DOUBLE_EQ(recmix::summarize(e, ImportanceWeights{{0.0, 1.0, 0.0}, 0.0}).ess, 1.0);
  EXPECT_NEAR(recmix::summarize(e, ImportanceWeights{{0.5, 0.25, 0.25}, 0.0}).ess, 8.0 / 3.0, 1e-15);
  EXPECT_NEAR(recmix::summarize(e, ImportanceWeights{{0.5, 0.25, 0.25}, 0.0}).ess, 2.6667, 1e-4);
}

TEST(Summarize, WeightedMoments) {
  const auto e = scalar_ensemble({0.0, 4.0});
  const auto s = recmix::summarize(e, ImportanceWeights{{0.75, 0.25}, -1.5});
  EXPECT_DOUBLE_EQ(s.mean[0], 1.0);
  EXPECT_DOUBLE_EQ(s.std[0], std::sqrt(3.0));
  EXPECT_EQ(s.t, 1);
  EXPECT_EQ(s.log_marginal_increment, -1.5);
}

class ResampleMix : public ::testing::Test {
 protected:
  FilterConfig config_;
  Rng rng_{17};
  recmix::StepBuffers buffers_;
};

TEST_F(ResampleMix, BetaOneReplacesEveryParticle) {
  auto e = scalar_ensemble({0.0, 1.0, 2.0, 3.0});
  const std::vector<double> w{0.0, 0.0, 0.0, 1.0};
  recmix::resample_mix(e, w, 1.0, config_, rng_, buffers_);
  EXPECT_THAT(std::vector<double>(e.values().begin(), e.values().end()), ::testing::Each(3.0));
  EXPECT_THAT(std::vector<std::int64_t>(e.births().begin(), e.births().end()), ::testing::Each(1));
  EXPECT_EQ(e.step(), 1);
}

TEST_F(ResampleMix, BetaZeroKeepsEveryParticle) {
  auto e = scalar_ensemble({0.0, 1.0, 2.0, 3.0});
  const std::vector<double> w{0.0, 0.0, 0.0, 1.0};
  recmix::resample_mix(e, w, 0.0, config_, rng_, buffers_);
  EXPECT_THAT(std::vector<double>(e.values().begin(), e.values().end()), ::testing::ElementsAre(0.0, 1.0, 2.0, 3.0));
  EXPECT_EQ(e.step(), 1);
}

TEST_F(ResampleMix, HalfRefreshCopiesTheHeavyParticleTwice) {
  for (const auto scheme : {recmix::ResamplingScheme::kMultinomial, recmix::ResamplingScheme::kSystematic}) {
    config_.scheme = scheme;
    auto e = scalar_ensemble({0.0, 1.0, 2.0, 3.0});
    const std::vector<double> w{0.0, 0.0, 0.0, 1.0};
    recmix::resample_mix(e, w, 0.5, config_, rng_, buffers_);
    int refreshed = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (e.births()[i] == 1) {
        ++refreshed;
        EXPECT_EQ(e.sample(i)[0], 3.0);
      } else {
        EXPECT_EQ(e.sample(i)[0], static_cast<double>(i));
      }
    }
    EXPECT_EQ(refreshed, 2);
  }
}

TEST_F(ResampleMix, SystematicDrawsMatchWeightsExactly) {
  config_.scheme = recmix::ResamplingScheme::kSystematic;
  auto e = scalar_ensemble({0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0});
  const std::vector<double> w{0.5, 0.0, 0.25, 0.0, 0.25, 0.0, 0.0, 0.0};
  recmix::resample_mix(e, w, 1.0, config_, rng_, buffers_);
  const auto v = e.values();
  EXPECT_EQ(std::count(v.begin(), v.end(), 0.0), 4);
  EXPECT_EQ(std::count(v.begin(), v.end(), 2.0), 2);
  EXPECT_EQ(std::count(v.begin(), v.end(), 4.0), 2);
}

TEST(RunFilter, PointMassPriorIsExact) {
  FilterConfig config;
  config.particles = 50;
  config.decay.beta = 0.5;
  config.prior = PriorSpec::point_mass(2.0);
  const auto trace = recmix::run_filter(config, constant_stream(-3.0, 25));
  for (const auto& row : trace) {
    EXPECT_NEAR(row.summary.mean[0], 2.0, 1e-12);
    EXPECT_NEAR(row.summary.std[0], 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(row.summary.ess, 50.0);
  }
}

TEST(RunFilter, StationaryZeroStreamSettlesAtZero) {
  FilterConfig config;
  config.particles = 2000;
  config.decay.beta = 0.5;
  config.noise_std = {0.1};
  config.seed = 3;
  const auto trace = recmix::run_filter(config, constant_stream(0.0, 200));
  for (std::size_t t = 101; t < trace.size(); ++t) {
    EXPECT_LT(std::abs(trace[t].summary.mean[0]), 0.1) << "t=" << t;
  }
}

TEST(RunFilter, DeterministicGivenSeed) {
  FilterConfig config;
  config.particles = 300;
  config.decay.beta = 0.3;
  config.noise_std = {0.2};
  config.seed = 42;
  recmix::GeneratorSpec gen;
  gen.kind = recmix::GeneratorSpec::Kind::kSinusoid;
  gen.length = 40;
  const auto records = recmix::generate(gen);
  const auto a = recmix::run_filter(config, records);
  const auto b = recmix::run_filter(config, records);
  for (std::size_t t = 0; t < a.size(); ++t) {
    EXPECT_EQ(a[t].summary.mean, b[t].summary.mean);
    EXPECT_EQ(a[t].summary.ess, b[t].summary.ess);
    EXPECT_EQ(a[t].summary.t, records[t].t);
    EXPECT_EQ(a[t].abs_error, b[t].abs_error);
  }
}

TEST(RunFilter, BetaOneIsUnbiasedForKalmanPosterior) {
  // With beta = 1 the filter is a bootstrap filter for the random-walk model; the
  // replica average of its posterior mean must agree with the Kalman mean.
  const double q = 0.1;
  recmix::GeneratorSpec gen;
  gen.kind = recmix::GeneratorSpec::Kind::kDrift;
  gen.drift_std = std::sqrt(q);
  gen.length = 15;
  gen.seed = 5;
  const auto records = recmix::generate(gen);

  std::vector<recmix::testing::ScalarKalman> kalman;
  recmix::testing::ScalarKalman k{0.0, 1.0};
  for (std::size_t t = 0; t < records.size(); ++t) {
    k.update(records[t].y[0], 1.0, t == 0 ? 0.0 : q);
    kalman.push_back(k);
  }

  const int replicas = 200;
  std::vector<double> sum(records.size(), 0.0);
  std::vector<double> sum_sq(records.size(), 0.0);
  for (int r = 0; r < replicas; ++r) {
    FilterConfig config;
    config.particles = 500;
    config.decay.beta = 1.0;
    config.noise_std = {std::sqrt(q)};
    config.seed = 1000 + static_cast<std::uint64_t>(r);
    const auto trace = recmix::run_filter(config, records);
    for (std::size_t t = 0; t < trace.size(); ++t) {
      sum[t] += trace[t].summary.mean[0];
      sum_sq[t] += trace[t].summary.mean[0] * trace[t].summary.mean[0];
    }
  }
  for (std::size_t t = 0; t < records.size(); ++t) {
    const double mean = sum[t] / replicas;
    const double sd = std::sqrt((sum_sq[t] - replicas * mean * mean) / (replicas - 1));
    EXPECT_LT(std::abs(mean - kalman[t].mean), 4.0 * sd / std::sqrt(replicas) + 1e-3) << "t=" << t;
    // Per-replica Monte Carlo spread stays within a small multiple of the posterior sd over sqrt(L).
    EXPECT_LT(sd, 4.0 * std::sqrt(kalman[t].variance / 500.0)) << "t=" << t;
  }
}

TEST(RunFilter, BirthsFollowGeometricLaw) {
  FilterConfig config;
  config.particles = 200;
  config.decay.beta = 0.3;
  config.noise_std = {0.1};
  std::vector<recmix::LagComposition> finals;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    config.seed = seed;
    auto state = recmix::init_filter(config);
    const std::vector<double> y{0.0};
    for (int t = 1; t <= 25; ++t) {
      (void)recmix::filter_step(state, y, config);
      ASSERT_EQ(std::count(state.ensemble.births().begin(), state.ensemble.births().end(), t), 60);
    }
    finals.push_back(recmix::composition(state.ensemble));
  }
  for (const auto& row : recmix::composition_deviation(finals, 0.3, 200, 5)) {
    EXPECT_LT(std::abs(row.z), 3.5) << "lag " << row.lag;
  }
}

TEST(RunFilter, WeightsNormalizedAndEssBounded) {
  FilterConfig config;
  config.particles = 400;
  config.decay.beta = 0.4;
  config.noise_std = {0.3};
  config.seed = 8;
  recmix::GeneratorSpec gen;
  gen.levels = {0.0, 4.0};
  gen.times = {30};
  gen.length = 60;
  auto state = recmix::init_filter(config);
  for (const auto& record : recmix::generate(gen)) {
    const auto w = recmix::weigh(state.ensemble, record.y, config.obs_model);
    EXPECT_NEAR(std::accumulate(w.weights.begin(), w.weights.end(), 0.0), 1.0, 1e-12);
    const auto s = recmix::filter_step(state, record.y, config);
    EXPECT_GE(s.ess, 1.0);
    EXPECT_LE(s.ess, 400.0);
  }
}

TEST(RunFilter, InputErrors) {
  FilterConfig config;
  config.particles = 10;
  EXPECT_THROW((void)recmix::run_filter(config, {}), recmix::NoData);

  auto records = constant_stream(0.0, 5);
  records[3].y = {0.0, 1.0};
  try {
    (void)recmix::run_filter(config, records);
    FAIL() << "expected InputError";
  } catch (const recmix::InputError& e) {
    EXPECT_EQ(e.record(), 4U);
  }
  records[3].y = {std::numeric_limits<double>::infinity()};
  EXPECT_THROW((void)recmix::run_filter(config, records), recmix::InputError);

  config.particles = 0;
  EXPECT_THROW((void)recmix::run_filter(config, constant_stream(0.0, 3)), recmix::InvalidParameter);
}

}  // namespace
