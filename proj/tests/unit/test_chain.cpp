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
#include <numeric>

#include "recmix/chain.hpp"
#include "recmix/errors.hpp"
#include "recmix/metrics.hpp"
#include "recmix/mixing.hpp"

namespace {

using recmix::composition;
using recmix::Ensemble;
using recmix::evolve_step;
using recmix::init_ensemble;
using recmix::PriorSpec;
using recmix::Rng;
using recmix::TransitionKernelSpec;

TEST(InitEnsemble, DeterministicGivenSeed) {
  const auto a = init_ensemble(100, PriorSpec::normal(0.0, 1.0), std::uint64_t{7});
  const auto b = init_ensemble(100, PriorSpec::normal(0.0, 1.0), std::uint64_t{7});
  ASSERT_EQ(a.size(), 100U);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  const auto c = init_ensemble(100, PriorSpec::normal(0.0, 1.0), std::uint64_t{8});
  EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
}

TEST(InitEnsemble, PointMass) {
  const auto e = init_ensemble(1, PriorSpec::point_mass(3.0), std::uint64_t{123});
  EXPECT_EQ(e.sample(0)[0], 3.0);
  EXPECT_EQ(e.births()[0], 0);
  EXPECT_EQ(e.step(), 0);
}

TEST(InitEnsemble, MomentsOfLargeNormalDraw) {
  // Standard errors at L = 10000: 0.01 for the mean, ~0.007 for the std; 0.05 is > 5 SE.
  const auto e = init_ensemble(10000, PriorSpec::normal(0.0, 1.0), std::uint64_t{1});
  const auto v = e.values();
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / 10000.0;
  double ss = 0.0;
  for (const double x : v) {
    ss += (x - mean) * (x - mean);
  }
  EXPECT_NEAR(mean, 0.0, 0.05);
  EXPECT_NEAR(std::sqrt(ss / 9999.0), 1.0, 0.05);
}

TEST(InitEnsemble, RejectsInvalidPrior) {
  EXPECT_THROW((void)init_ensemble(10, PriorSpec::normal(0.0, -1.0), std::uint64_t{1}), recmix::InvalidParameter);
  EXPECT_THROW((void)init_ensemble(10, PriorSpec::uniform(1.0, 1.0), std::uint64_t{1}), recmix::InvalidParameter);
  EXPECT_THROW((void)init_ensemble(0, PriorSpec::normal(0.0, 1.0), std::uint64_t{1}), recmix::InvalidParameter);
}

TEST(Composition, FreshEnsembleSitsAtLagOne) {
  const auto e = init_ensemble(25, PriorSpec::normal(0.0, 1.0), std::uint64_t{3});
  const auto c = composition(e);
  EXPECT_EQ(c.count(1), 25U);
  EXPECT_EQ(c.total(), 25U);
}

TEST(EvolveStep, BetaOneReplacesEverything) {
  Rng rng(9);
  auto e = init_ensemble(50, PriorSpec::normal(0.0, 1.0), rng);
  for (int step = 0; step < 4; ++step) {
    e = evolve_step(std::move(e), TransitionKernelSpec::random_walk(0.5), 1.0, rng);
    const auto c = composition(e);
    EXPECT_EQ(c.count(1), 50U);
    EXPECT_EQ(c.counts.size(), 1U);
  }
}

TEST(EvolveStep, BetaZeroOnlyAdvancesTime) {
  Rng rng(2);
  const auto before = init_ensemble(30, PriorSpec::normal(0.0, 1.0), rng);
  const auto after = evolve_step(before, TransitionKernelSpec::random_walk(1.0), 0.0, rng);
  EXPECT_EQ(after.step(), 1);
  EXPECT_TRUE(std::equal(before.values().begin(), before.values().end(), after.values().begin()));
  EXPECT_TRUE(std::equal(before.births().begin(), before.births().end(), after.births().begin()));
}

TEST(EvolveStep, RefreshCountFollowsRounding) {
  // L * beta = 3.0 for L = 10, beta = 0.3: three fresh samples at lag 1, seven initial ones at lag 2.
  Rng rng(4);
  auto e = init_ensemble(10, PriorSpec::normal(0.0, 1.0), rng);
  e = evolve_step(std::move(e), TransitionKernelSpec::identity(), 0.3, rng);
  const auto c = composition(e);
  EXPECT_EQ(c.count(1), 3U);
  EXPECT_EQ(c.count(2), 7U);
  EXPECT_EQ(std::count(e.births().begin(), e.births().end(), 1), 3);
}

TEST(EvolveStep, IdentityKernelOnlyCopiesExistingValues) {
  Rng rng(6);
  const auto start = init_ensemble(40, PriorSpec::normal(0.0, 1.0), rng);
  auto e = start;
  for (int step = 0; step < 10; ++step) {
    e = evolve_step(std::move(e), TransitionKernelSpec::identity(), 0.4, rng);
  }
  for (const double v : e.values()) {
    EXPECT_NE(std::find(start.values().begin(), start.values().end(), v), start.values().end());
  }
}

TEST(EvolveStep, InvariantsHoldEveryStep) {
  Rng rng(12);
  auto e = init_ensemble(101, PriorSpec::normal(0.0, 1.0, 2), rng);
  const auto bytes = e.storage_bytes();
  recmix::StepBuffers buffers;
  for (int step = 1; step <= 200; ++step) {
    evolve_step(e, TransitionKernelSpec::random_walk(0.1, 2), 0.37, rng, buffers);
    ASSERT_EQ(e.size(), 101U);
    ASSERT_EQ(e.storage_bytes(), bytes);
    ASSERT_NO_THROW(e.validate());
    ASSERT_EQ(std::count(e.births().begin(), e.births().end(), step),
              static_cast<std::ptrdiff_t>(recmix::refresh_count(101, 0.37)));
    ASSERT_EQ(composition(e).total(), 101U);
  }
}

TEST(EvolveStep, RejectsInvalidBeta) {
  Rng rng(1);
  auto e = init_ensemble(4, PriorSpec::normal(0.0, 1.0), rng);
  EXPECT_THROW((void)evolve_step(e, TransitionKernelSpec::identity(), 1.2, rng), recmix::InvalidParameter);
}

TEST(RunChain, SingleStepBetaOne) {
  const auto run = recmix::run_chain(64, PriorSpec::normal(0.0, 1.0), TransitionKernelSpec::identity(), 1.0, 1, 3);
  ASSERT_EQ(run.compositions.size(), 1U);
  EXPECT_EQ(run.compositions[0].count(1), 64U);
}

TEST(RunChain, LagOneCountIsDeterministic) {
  const auto run = recmix::run_chain(1000, PriorSpec::normal(0.0, 1.0), TransitionKernelSpec::identity(), 0.5, 20, 99);
  ASSERT_EQ(run.compositions.size(), 20U);
  for (const auto& c : run.compositions) {
    EXPECT_EQ(c.count(1), 500U);
  }
}

TEST(RunChain, FrozenChainKeepsInitialSamples) {
  const auto run = recmix::run_chain(100, PriorSpec::normal(0.0, 1.0), TransitionKernelSpec::identity(), 0.0, 20, 5);
  EXPECT_EQ(run.compositions.back().step, 20);
  // Initial samples represent the lag t + 1 component.
  EXPECT_EQ(run.compositions.back().count(21), 100U);
}

TEST(RunChain, Reproducible) {
  const auto a = recmix::run_chain(200, PriorSpec::normal(0.0, 1.0), TransitionKernelSpec::random_walk(0.3), 0.4, 15, 17);
  const auto b = recmix::run_chain(200, PriorSpec::normal(0.0, 1.0), TransitionKernelSpec::random_walk(0.3), 0.4, 15, 17);
  EXPECT_TRUE(std::equal(a.final_ensemble.values().begin(), a.final_ensemble.values().end(),
                         b.final_ensemble.values().begin()));
  for (std::size_t t = 0; t < a.compositions.size(); ++t) {
    EXPECT_EQ(a.compositions[t].counts, b.compositions[t].counts);
  }
}

TEST(RunChain, RejectsZeroSteps) {
  EXPECT_THROW((void)recmix::run_chain(10, PriorSpec::normal(0.0, 1.0), TransitionKernelSpec::identity(), 0.5, 0, 1),
               recmix::InvalidParameter);
}

TEST(RunChain, MeanCompositionFollowsGeometricLaw) {
  // beta = 0.5, L = 100: expected lag counts 50, 25, 12.5, 6.25, 3.125.
  std::vector<recmix::LagComposition> finals;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    finals.push_back(
        recmix::run_chain(100, PriorSpec::normal(0.0, 1.0), TransitionKernelSpec::identity(), 0.5, 12, seed)
            .compositions.back());
  }
  const auto rows = recmix::composition_deviation(finals, 0.5, 100, 5);
  const double expected[] = {50.0, 25.0, 12.5, 6.25, 3.125};
  for (std::size_t m = 0; m < 5; ++m) {
    EXPECT_DOUBLE_EQ(rows[m].expected, expected[m]);
    EXPECT_LT(std::abs(rows[m].z), 3.0) << "lag " << m + 1 << " mean " << rows[m].mean;
  }
}

TEST(RunChain, BetaOneMatchesDirectFirstOrderSimulation) {
  // A beta = 1 step is L independent kernel draws from uniformly chosen parents.
  // Compare against that written out directly, with an independent stream.
  const std::size_t size = 4000;
  const auto kernel = TransitionKernelSpec::random_walk(1.0);
  const auto chain = recmix::run_chain(size, PriorSpec::normal(0.0, 1.0), kernel, 1.0, 1, 21);

  Rng rng(22);
  const auto parents = init_ensemble(size, PriorSpec::normal(0.0, 1.0), rng);
  std::vector<double> direct(size);
  for (auto& v : direct) {
    v = recmix::kernel_sample(kernel, parents.values()[rng.index(size)], rng);
  }
  std::vector<double> replica(size);
  Rng rng2(23);
  const auto parents2 = init_ensemble(size, PriorSpec::normal(0.0, 1.0), rng2);
  for (auto& v : replica) {
    v = recmix::kernel_sample(kernel, parents2.values()[rng2.index(size)], rng2);
  }
  const double distance = recmix::wasserstein1(chain.final_ensemble.values(), direct);
  const double baseline = recmix::wasserstein1(replica, direct);
  // Both are N(0, 2) samples of size 4000; W1 noise is O(0.03).
  EXPECT_LT(distance, 0.1);
  EXPECT_LT(distance, 3.0 * baseline + 0.02);
}

}  // namespace
