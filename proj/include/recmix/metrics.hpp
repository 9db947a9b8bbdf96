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

#ifndef RECMIX_METRICS_HPP
#define RECMIX_METRICS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "recmix/chain.hpp"

namespace recmix {

/// Exact Wasserstein-1 distance between two equal-size scalar sample sets:
/// the mean absolute difference of the sorted sequences.
[[nodiscard]] double wasserstein1(std::span<const double> a, std::span<const double> b);

/// Two-sample Kolmogorov-Smirnov statistic, sup |F_a(x) - F_b(x)|.
[[nodiscard]] double ks_statistic(std::span<const double> a, std::span<const double> b);

[[nodiscard]] double rmse(std::span<const double> estimates, std::span<const double> truths);

/// Observed-versus-expected lag counts across replicated chain runs.
struct LagDeviation {
  std::size_t lag = 0;
  double expected = 0.0;
  double mean = 0.0;
  /// Standard error of `mean` across runs.
  double standard_error = 0.0;
  /// (mean - expected) / standard_error; 0 when both numerator and denominator vanish.
  double z = 0.0;
};

/// Compares the mean lag-m counts of `compositions` (one per replica, all at the
/// same step t > max_lag) against L * beta * (1 - beta)^(m - 1) for m = 1..max_lag.
[[nodiscard]] std::vector<LagDeviation> composition_deviation(const std::vector<LagComposition>& compositions,
                                                              double beta, std::size_t size, std::size_t max_lag);

/// One row of a filter evaluation.
struct MetricRow {
  std::int64_t t = 0;
  double estimate = 0.0;
  double truth = 0.0;
  double ess = 0.0;
};

struct MetricReport {
  double rmse = 0.0;
  double mean_ess = 0.0;
  double min_ess = 0.0;
  std::vector<MetricRow> rows;
};

/// Aggregates per-step estimates into RMSE and ESS statistics.
[[nodiscard]] MetricReport make_report(std::vector<MetricRow> rows);

}  // namespace recmix

#endif  // RECMIX_METRICS_HPP
