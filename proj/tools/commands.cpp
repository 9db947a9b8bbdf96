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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "recmix/chain.hpp"
#include "recmix/detail/format.hpp"
#include "recmix/errors.hpp"
#include "recmix/filter.hpp"
#include "recmix/io.hpp"
#include "recmix/metrics.hpp"
#include "recmix/mixing.hpp"
#include "recmix/models.hpp"
#include "recmix/oracle.hpp"

namespace recmix::cli {

namespace {

using detail::format_double;

/// Writes `text` to `path`, or stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot open output file '" + path + "'");
  }
  out << text;
}

void require_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw InvalidParameter("--beta must lie in [0, 1], got " + format_double(beta));
  }
}

ResamplingScheme parse_scheme(const std::string& text) {
  if (text == "multinomial") {
    return ResamplingScheme::kMultinomial;
  }
  if (text == "systematic") {
    return ResamplingScheme::kSystematic;
  }
  throw InvalidParameter("unknown resampling scheme '" + text + "'");
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

/// Median latency over the 1-based step windows [10, 20] and [steps - 10, steps].
nlohmann::json window_medians(const std::vector<double>& step_ns) {
  const std::size_t steps = step_ns.size();
  const std::vector<double> early(step_ns.begin() + 9, step_ns.begin() + 20);
  const std::vector<double> late(step_ns.end() - 11, step_ns.end());
  const double early_median = median(early);
  const double late_median = median(late);
  return {{"early_window", {10, 20}},
          {"late_window", {steps - 10, steps}},
          {"early_median_ns", early_median},
          {"late_median_ns", late_median},
          {"ratio", early_median > 0.0 ? late_median / early_median : 0.0}};
}

}  // namespace

int run_weights(const WeightsOptions& options) {
  if (options.max_lag == 0) {
    throw InvalidParameter("--max-lag must be at least 1");
  }
  for (const double beta : options.betas) {
    require_beta(beta);
    if (beta == 0.0) {
      throw NonNormalizable("beta = 0 has no normalizable infinite-horizon weights");
    }
  }
  std::ostringstream out;
  io::write_header(out, "weights", {{"command", "weights"},
                                    {"beta", detail::join_doubles(options.betas)},
                                    {"max_lag", std::to_string(options.max_lag)}});
  io::write_weights_csv(out, options.betas, options.max_lag);
  emit(options.output, out.str());
  return kExitOk;
}

int run_chain(const ChainOptions& options) {
  require_beta(options.beta);
  if (options.runs == 0 || options.particles == 0 || options.steps == 0) {
    throw InvalidParameter("--runs, --particles and --steps must be positive");
  }
  const auto kernel = parse_kernel(options.kernel);
  const auto prior = parse_prior(options.prior);

  // Replica r uses seed + r; results are merged in replica order whatever the thread count.
  std::vector<std::vector<LagComposition>> replicas(options.runs);
  const auto worker = [&](std::size_t first, std::size_t stride) {
    for (std::size_t r = first; r < options.runs; r += stride) {
      replicas[r] = recmix::run_chain(options.particles, prior, kernel, options.beta, options.steps,
                                      options.seed + r).compositions;
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, options.runs);
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) {
      pool.emplace_back(worker, i, threads);
    }
  }

  const auto size = static_cast<double>(options.particles);
  const auto runs = static_cast<double>(options.runs);
  std::vector<io::CompositionRow> rows;
  for (std::size_t step = 0; step < options.steps; ++step) {
    const auto t = static_cast<std::size_t>(replicas[0][step].step);
    const std::size_t last_lag = options.max_lag == 0 ? t + 1 : std::min(options.max_lag, t + 1);
    for (std::size_t lag = 1; lag <= last_lag; ++lag) {
      double sum = 0.0;
      double sum_sq = 0.0;
      for (const auto& replica : replicas) {
        const auto n = static_cast<double>(replica[step].count(lag));
        sum += n;
        sum_sq += n * n;
      }
      io::CompositionRow row;
      row.t = static_cast<std::int64_t>(t);
      row.lag = lag;
      row.count = sum / runs;
      // Samples still carrying the initial tag sit at lag t + 1 with expected share (1 - beta)^t.
      row.expected_count = lag <= t ? size * lag_fraction(options.beta, lag)
                                    : size * std::pow(1.0 - options.beta, static_cast<double>(t));
      if (options.runs > 1) {
        const double variance = std::max(0.0, (sum_sq - runs * row.count * row.count) / (runs - 1.0));
        row.count_se = std::sqrt(variance / runs);
      }
      rows.push_back(row);
    }
  }

  std::ostringstream out;
  io::write_header(out, "chain", {{"command", "chain"},
                                  {"beta", format_double(options.beta)},
                                  {"particles", std::to_string(options.particles)},
                                  {"steps", std::to_string(options.steps)},
                                  {"seed", std::to_string(options.seed)},
                                  {"runs", std::to_string(options.runs)},
                                  {"max_lag", std::to_string(options.max_lag)},
                                  {"kernel", to_string(kernel)},
                                  {"prior", to_string(prior)}});
  io::write_composition_csv(out, rows);
  emit(options.output, out.str());
  return kExitOk;
}

int run_filter(const FilterOptions& options) {
  require_beta(options.beta);
  if (!options.input.empty() && !options.generator.empty()) {
    throw InvalidParameter("pass either --input or --generator, not both");
  }
  if (options.input.empty() && options.generator.empty()) {
    throw InputError("no observations: pass --input or --generator");
  }

  FilterConfig config;
  config.particles = options.particles;
  config.decay.beta = options.beta;
  config.noise_std = options.noise_std;
  config.kernel = parse_kernel(options.kernel);
  config.obs_model = options.model == "gaussian" ? ObservationModelSpec::gaussian(options.obs_std)
                                                 : parse_observation_model(options.model);
  config.prior = parse_prior(options.prior);
  config.scheme = parse_scheme(options.scheme);
  config.seed = options.seed;
  config.validate();

  std::vector<ObservationRecord> records;
  std::string source;
  if (!options.input.empty()) {
    records = io::ingest(options.input);
    source = "input:" + options.input;
  } else {
    auto spec = parse_generator(options.generator);
    spec.length = options.steps;
    spec.obs_std = options.obs_std;
    spec.seed = options.seed;
    records = generate(spec);
    source = "generator:" + to_string(spec) + ";length=" + std::to_string(spec.length) +
             ";obs_std=" + format_double(spec.obs_std);
  }

  const auto trace = recmix::run_filter(config, records);

  const io::RunHeader header{{"command", "filter"},
                             {"beta", format_double(options.beta)},
                             {"particles", std::to_string(config.particles)},
                             {"seed", std::to_string(config.seed)},
                             {"noise_std", detail::join_doubles(config.noise_std)},
                             {"kernel", to_string(config.kernel)},
                             {"model", to_string(config.obs_model)},
                             {"prior", to_string(config.prior)},
                             {"scheme", options.scheme},
                             {"source", source}};
  std::ostringstream out;
  io::write_header(out, "trace", header);
  io::write_trace_csv(out, trace);
  emit(options.output, out.str());

  if (!options.report.empty()) {
    std::vector<MetricRow> rows;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      if (records[i].truth && !records[i].truth->empty()) {
        rows.push_back({trace[i].summary.t, trace[i].summary.mean[0], (*records[i].truth)[0], trace[i].summary.ess});
      }
    }
    const auto report = make_report(std::move(rows));
    if (options.report.size() >= 4 && options.report.ends_with(".csv")) {
      std::ostringstream csv;
      io::write_header(csv, "report", header);
      io::write_report_csv(csv, report);
      emit(options.report, csv.str());
    } else {
      emit(options.report, io::report_json(report, header));
    }
  }
  return kExitOk;
}

int run_generate(const GenerateOptions& options) {
  auto spec = parse_generator(options.generator);
  spec.length = options.steps;
  spec.obs_std = options.obs_std;
  spec.seed = options.seed;
  spec.validate();
  std::ostringstream out;
  io::write_header(out, "observations", {{"command", "generate"},
                                         {"generator", to_string(spec)},
                                         {"steps", std::to_string(spec.length)},
                                         {"obs_std", format_double(spec.obs_std)},
                                         {"seed", std::to_string(spec.seed)}});
  io::write_observations_jsonl(out, generate(spec));
  emit(options.output, out.str());
  return kExitOk;
}

int run_compare_oracle(const CompareOracleOptions& options) {
  require_beta(options.beta);
  if (options.runs == 0 || options.steps == 0 || options.particles == 0) {
    throw InvalidParameter("--runs, --steps and --particles must be positive");
  }
  const auto kernel = parse_kernel(options.kernel);
  const auto prior = parse_prior(options.prior);
  std::vector<std::uint64_t> seeds(options.runs);
  for (std::size_t r = 0; r < options.runs; ++r) {
    seeds[r] = options.seed + r;
  }
  const auto rows = oracle_vs_chain_distance(options.steps, options.particles, options.beta, kernel, prior, seeds);
  std::ostringstream out;
  io::write_header(out, "oracle", {{"command", "compare-oracle"},
                                   {"beta", format_double(options.beta)},
                                   {"particles", std::to_string(options.particles)},
                                   {"steps", std::to_string(options.steps)},
                                   {"seed", std::to_string(options.seed)},
                                   {"runs", std::to_string(options.runs)},
                                   {"kernel", to_string(kernel)},
                                   {"prior", to_string(prior)}});
  io::write_oracle_csv(out, rows);
  emit(options.output, out.str());
  return kExitOk;
}

int run_bench(const BenchOptions& options) {
  require_beta(options.beta);
  if (options.steps < 10000) {
    throw InvalidParameter("--steps must be at least 10000 for the bench");
  }
  using Clock = std::chrono::steady_clock;
  const auto elapsed_ns = [](Clock::time_point start) {
    return static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
  };

  FilterConfig config;
  config.particles = options.particles;
  config.decay.beta = options.beta;
  config.noise_std = {options.noise_std};
  config.obs_model = ObservationModelSpec::gaussian(options.obs_std);
  config.seed = options.seed;
  GeneratorSpec stream;
  stream.kind = GeneratorSpec::Kind::kSinusoid;
  stream.amplitude = 1.0;
  stream.period = 50.0;
  stream.obs_std = options.obs_std;
  stream.length = options.steps;
  stream.seed = options.seed;
  const auto records = generate(stream);

  auto state = init_filter(config);
  std::vector<double> filter_ns(options.steps);
  std::size_t size_min = state.ensemble.size();
  std::size_t size_max = size_min;
  std::size_t bytes_min = state.ensemble.storage_bytes();
  std::size_t bytes_max = bytes_min;
  double last_mean = 0.0;
  for (std::size_t i = 0; i < options.steps; ++i) {
    const auto start = Clock::now();
    const auto summary = filter_step(state, records[i].y, config);
    filter_ns[i] = elapsed_ns(start);
    last_mean = summary.mean[0];
    size_min = std::min(size_min, state.ensemble.size());
    size_max = std::max(size_max, state.ensemble.size());
    bytes_min = std::min(bytes_min, state.ensemble.storage_bytes());
    bytes_max = std::max(bytes_max, state.ensemble.storage_bytes());
  }

  Rng chain_rng(options.seed);
  auto ensemble = init_ensemble(options.particles, config.prior, chain_rng);
  StepBuffers buffers;
  std::vector<double> chain_ns(options.steps);
  for (std::size_t i = 0; i < options.steps; ++i) {
    const auto start = Clock::now();
    evolve_step(ensemble, config.kernel, options.beta, chain_rng, buffers);
    chain_ns[i] = elapsed_ns(start);
  }

  // The explicit mixture keeps every bank; this is the memory the fixed-budget ensemble avoids.
  Rng oracle_rng = Rng::derive(options.seed, 1);
  DecaySpec oracle_spec{options.beta, 1.0, std::nullopt};
  if (oracle_spec.frozen()) {
    oracle_spec.horizon = options.steps;
  }
  const auto history =
      run_oracle(options.steps, options.oracle_particles, oracle_spec, config.kernel, config.prior, oracle_rng);

  nlohmann::json doc;
  doc["format"] = "recmix-bench";
  doc["version"] = io::kFormatVersion;
  doc["config"] = {{"command", "bench"},
                   {"beta", options.beta},
                   {"particles", options.particles},
                   {"steps", options.steps},
                   {"seed", options.seed},
                   {"noise_std", options.noise_std},
                   {"obs_std", options.obs_std},
                   {"oracle_particles", options.oracle_particles}};
  doc["ensemble"] = {{"size_min", size_min},
                     {"size_max", size_max},
                     {"bytes_min", bytes_min},
                     {"bytes_max", bytes_max},
                     {"final_step", state.step()},
                     {"final_mean", last_mean}};
  doc["history"] = {{"banks", history.size()}, {"bytes", history.storage_bytes()}};
  doc["timing"] = {{"filter", window_medians(filter_ns)}, {"chain", window_medians(chain_ns)}};
  emit(options.output, doc.dump(2) + "\n");
  return kExitOk;
}

}  // namespace recmix::cli
