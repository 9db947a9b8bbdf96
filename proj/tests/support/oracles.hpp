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

#ifndef RECMIX_TESTS_SUPPORT_ORACLES_HPP
#define RECMIX_TESTS_SUPPORT_ORACLES_HPP

// Independent reference computations used to derive expected values in tests.
// Nothing here calls into the recmix library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace recmix::testing {

/// Exact rational value num / den.
struct Rational {
  std::int64_t num;
  std::int64_t den;

  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Normalized weights for beta = 1/2 over `horizon` lags, in exact integers:
/// (1/2)^m / sum_k (1/2)^k = 2^(M - m) / (2^M - 1).
inline std::vector<Rational> half_decay_weights(int horizon) {
  const std::int64_t den = (std::int64_t{1} << horizon) - 1;
  std::vector<Rational> out;
  for (int m = 1; m <= horizon; ++m) {
    out.push_back({std::int64_t{1} << (horizon - m), den});
  }
  return out;
}

/// Hamilton (largest remainder) apportionment in exact integer arithmetic.
/// Ties go to the lower index.
inline std::vector<std::int64_t> hamilton(std::int64_t total, const std::vector<Rational>& shares) {
  std::vector<std::int64_t> counts(shares.size());
  std::vector<std::int64_t> remainders(shares.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    // All shares must use the same denominator for the remainders to be comparable.
    const std::int64_t scaled = shares[i].num * total;
    counts[i] = scaled / shares[i].den;
    remainders[i] = scaled % shares[i].den;
    assigned += counts[i];
  }
  std::vector<std::size_t> order(shares.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return remainders[a] > remainders[b]; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) {
    ++counts[order[i]];
  }
  return counts;
}

/// Minimum-cost perfect matching between equal-size scalar sets by enumerating
/// every permutation. Only for tiny sets.
inline double brute_force_wasserstein1(const std::vector<double>& a, std::vector<double> b) {
  std::sort(b.begin(), b.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      cost += std::abs(a[i] - b[i]);
    }
    best = std::min(best, cost / static_cast<double>(a.size()));
  } while (std::next_permutation(b.begin(), b.end()));
  return best;
}

/// KS statistic by evaluating both empirical CDFs at every sample point.
inline double brute_force_ks(const std::vector<double>& a, const std::vector<double>& b) {
  const auto cdf = [](const std::vector<double>& s, double x) {
    return static_cast<double>(std::count_if(s.begin(), s.end(), [x](double v) { return v <= x; })) /
           static_cast<double>(s.size());
  };
  double sup = 0.0;
  for (const auto* set : {&a, &b}) {
    for (const double x : *set) {
      sup = std::max(sup, std::abs(cdf(a, x) - cdf(b, x)));
    }
  }
  return sup;
}

/// Smallest M with (1 - beta)^M < epsilon by direct enumeration in long double.
inline std::size_t enumerate_horizon(double beta, double epsilon) {
  const long double keep = 1.0L - static_cast<long double>(beta);
  long double tail = keep;
  std::size_t m = 1;
  while (!(tail < static_cast<long double>(epsilon))) {
    tail *= keep;
    ++m;
  }
  return m;
}

/// Scalar Kalman recursion written out independently of recmix::kalman_step.
struct ScalarKalman {
  double mean;
  double variance;

  void update(double y, double obs_var, double process_var) {
    const double prior_var = variance + process_var;
    const double posterior_var = 1.0 / (1.0 / prior_var + 1.0 / obs_var);
    mean = posterior_var * (mean / prior_var + y / obs_var);
    variance = posterior_var;
  }
};

}  // namespace recmix::testing

#endif  // RECMIX_TESTS_SUPPORT_ORACLES_HPP
