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

#ifndef RECMIX_TOOLS_COMMANDS_HPP
#define RECMIX_TOOLS_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace recmix::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitDegenerateWeights = 3;
inline constexpr int kExitInvalidParameter = 4;

struct WeightsOptions {
  std::vector<double> betas{0.1, 0.3, 0.5, 0.7, 0.9};
  std::size_t max_lag = 5;
  std::string output;
};

struct ChainOptions {
  double beta = 0.5;
  std::size_t particles = 1000;
  std::size_t steps = 20;
  std::uint64_t seed = 1;
  std::size_t runs = 1;
  std::size_t threads = 1;
  std::size_t max_lag = 0;
  std::string kernel = "identity";
  std::string prior = "normal:0,1";
  std::string output;
};

struct FilterOptions {
  double beta = 0.5;
  std::size_t particles = 1000;
  std::uint64_t seed = 1;
  std::vector<double> noise_std{0.1};
  double obs_std = 1.0;
  std::string kernel = "identity";
  std::string model = "gaussian";
  std::string prior = "normal:0,1";
  std::string scheme = "multinomial";
  std::string input;
  std::string generator;
  std::size_t steps = 100;
  std::string output;
  std::string report;
};

struct GenerateOptions {
  std::string generator = "changepoint:0,5@50";
  std::size_t steps = 100;
  double obs_std = 1.0;
  std::uint64_t seed = 1;
  std::string output;
};

struct CompareOracleOptions {
  double beta = 0.5;
  std::size_t particles = 10000;
  std::size_t steps = 20;
  std::uint64_t seed = 1;
  std::size_t runs = 1;
  std::string kernel = "identity";
  std::string prior = "normal:0,1";
  std::string output;
};

struct BenchOptions {
  double beta = 0.5;
  std::size_t particles = 1000;
  std::size_t steps = 10000;
  std::uint64_t seed = 1;
  double noise_std = 0.1;
  double obs_std = 1.0;
  std::size_t oracle_particles = 100;
  std::string output;
};

/// Each command writes its result to `output` (stdout when empty) and returns an exit code.
/// Library errors propagate as recmix::Error; main() maps them onto exit codes.
int run_weights(const WeightsOptions& options);
int run_chain(const ChainOptions& options);
int run_filter(const FilterOptions& options);
int run_generate(const GenerateOptions& options);
int run_compare_oracle(const CompareOracleOptions& options);
int run_bench(const BenchOptions& options);

}  // namespace recmix::cli

#endif  // RECMIX_TOOLS_COMMANDS_HPP
