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

#include "recmix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "recmix/errors.hpp"
#include "recmix/mixing.hpp"

namespace recmix {

double wasserstein1(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidParameter("wasserstein1 needs equal-size sample sets");
  }
  if (a.empty()) {
    throw InvalidParameter("wasserstein1 needs nonempty sample sets");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double total = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    total += std::abs(sa[i] - sb[i]);
  }
  return total / static_cast<double>(sa.size());
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw InvalidParameter("ks_statistic needs nonempty sample sets");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const auto na = static_cast<double>(sa.size());
  const auto nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < sa.size() && j < sb.size()) {
    // Advance past every copy of the smaller value so ties are evaluated after the full CDF step.
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) {
      ++i;
    }
    while (j < sb.size() && sb[j] == x) {
      ++j;
    }
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return std::min(sup, 1.0);
}

double rmse(std::span<const double> estimates, std::span<const double> truths) {
  if (estimates.size() != truths.size()) {
    throw InvalidParameter("rmse needs sequences of equal length");
  }
  if (estimates.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double d = estimates[i] - truths[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(estimates.size()));
}

std::vector<LagDeviation> composition_deviation(const std::vector<LagComposition>& compositions, double beta,
                                                std::size_t size, std::size_t max_lag) {
  if (compositions.empty()) {
    throw InvalidParameter("composition_deviation needs at least one run");
  }
  const auto runs = static_cast<double>(compositions.size());
  std::vector<LagDeviation> out;
  out.reserve(max_lag);
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    LagDeviation row;
    row.lag = lag;
    row.expected = static_cast<double>(size) * lag_fraction(beta, lag);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& c : compositions) {
      const auto n = static_cast<double>(c.count(lag));
      sum += n;
      sum_sq += n * n;
    }
    row.mean = sum / runs;
    const double variance = compositions.size() > 1 ? std::max(0.0, (sum_sq - runs * row.mean * row.mean) / (runs - 1.0)) : 0.0;
    row.standard_error = std::sqrt(variance / runs);
    const double diff = row.mean - row.expected;
    if (row.standard_error > 0.0) {
      row.z = diff / row.standard_error;
    } else if (std::abs(diff) > 1e-9 * std::max(1.0, row.expected)) {
      row.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    out.push_back(row);
  }
  return out;
}

MetricReport make_report(std::vector<MetricRow> rows) {
  MetricReport report;
  if (rows.empty()) {
    return report;
  }
  std::vector<double> estimates;
  std::vector<double> truths;
  estimates.reserve(rows.size());
  truths.reserve(rows.size());
  double ess_sum = 0.0;
  report.min_ess = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    estimates.push_back(r.estimate);
    truths.push_back(r.truth);
    ess_sum += r.ess;
    report.min_ess = std::min(report.min_ess, r.ess);
  }
  report.rmse = rmse(estimates, truths);
  report.mean_ess = ess_sum / static_cast<double>(rows.size());
  report.rows = std::move(rows);
  return report;
}

}  // namespace recmix
