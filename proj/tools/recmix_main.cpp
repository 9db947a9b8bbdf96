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

// Command-line front end: data emitters for the mixing law and lag composition,
// the recency-weighted filter, oracle comparisons and the constant-cost bench.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "recmix/errors.hpp"

namespace {

int exit_code(recmix::ErrorKind kind) {
  using recmix::ErrorKind;
  switch (kind) {
    case ErrorKind::kInputError:
    case ErrorKind::kNoData:
      return recmix::cli::kExitInputError;
    case ErrorKind::kDegenerateWeights:
      return recmix::cli::kExitDegenerateWeights;
    default:
      return recmix::cli::kExitInvalidParameter;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace recmix::cli;

  CLI::App app{"recmix: recency-weighted high-order Markov inference with fixed per-step cost"};
  app.set_config("--config", "", "TOML/INI file setting any flag; command-line flags take precedence");
  app.require_subcommand(1);

  WeightsOptions weights;
  auto* weights_cmd = app.add_subcommand("weights", "Mixing coefficients beta*(1-beta)^(m-1) per lag");
  weights_cmd->add_option("--beta", weights.betas, "Decay rates in (0, 1]")->delimiter(',');
  weights_cmd->add_option("--max-lag", weights.max_lag, "Number of lags");
  weights_cmd->add_option("--output,-o", weights.output, "Output CSV (stdout when omitted)");

  ChainOptions chain;
  auto* chain_cmd = app.add_subcommand("chain", "Lag composition of the fixed-budget sample chain");
  chain_cmd->add_option("--beta", chain.beta, "Refresh fraction per step");
  chain_cmd->add_option("--particles,-L", chain.particles, "Ensemble size");
  chain_cmd->add_option("--steps,-T", chain.steps, "Number of steps");
  chain_cmd->add_option("--seed", chain.seed, "Base seed; replica r uses seed + r");
  chain_cmd->add_option("--runs", chain.runs, "Replicas averaged per row");
  chain_cmd->add_option("--threads", chain.threads, "Worker threads for replicas");
  chain_cmd->add_option("--max-lag", chain.max_lag, "Largest lag written (0 = all)");
  chain_cmd->add_option("--kernel", chain.kernel, "identity | linear:A | random_walk:STD");
  chain_cmd->add_option("--prior", chain.prior, "normal:MEAN,STD | uniform:LO,HI | point:VALUE");
  chain_cmd->add_option("--output,-o", chain.output, "Output CSV (stdout when omitted)");

  FilterOptions filter;
  auto* filter_cmd = app.add_subcommand("filter", "Run the recency-weighted importance filter");
  filter_cmd->add_option("--beta", filter.beta, "Posterior refresh fraction per step");
  filter_cmd->add_option("--particles,-L", filter.particles, "Number of particles");
  filter_cmd->add_option("--seed", filter.seed, "Seed for the filter and any generator");
  filter_cmd->add_option("--noise-std", filter.noise_std, "System noise std (one value or one per dimension)")
      ->delimiter(',');
  filter_cmd->add_option("--obs-std", filter.obs_std, "Gaussian observation std (model and generator)");
  filter_cmd->add_option("--kernel", filter.kernel, "identity | linear:A | random_walk:STD");
  filter_cmd->add_option("--model", filter.model, "gaussian[:STD] | bernoulli_logit");
  filter_cmd->add_option("--prior", filter.prior, "normal:MEAN,STD | uniform:LO,HI | point:VALUE");
  filter_cmd->add_option("--scheme", filter.scheme, "multinomial | systematic");
  filter_cmd->add_option("--input,-i", filter.input, "Observations (.jsonl or .csv)");
  filter_cmd->add_option("--generator", filter.generator, "changepoint:L0,L1@T1 | drift:STD | sinusoid:AMP,PERIOD");
  filter_cmd->add_option("--steps,-T", filter.steps, "Generator length");
  filter_cmd->add_option("--output,-o", filter.output, "Trace CSV (stdout when omitted)");
  filter_cmd->add_option("--report", filter.report, "Metric report (.json or .csv) against ground truth");

  GenerateOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic observation stream as JSONL");
  gen_cmd->add_option("--generator", gen.generator, "changepoint:L0,L1@T1 | drift:STD | sinusoid:AMP,PERIOD");
  gen_cmd->add_option("--steps,-T", gen.steps, "Number of records");
  gen_cmd->add_option("--obs-std", gen.obs_std, "Observation noise std");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--output,-o", gen.output, "Output JSONL (stdout when omitted)");

  CompareOracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("compare-oracle", "Distance between the chain and the explicit mixture");
  oracle_cmd->add_option("--beta", oracle.beta, "Refresh fraction per step");
  oracle_cmd->add_option("--particles,-L", oracle.particles, "Ensemble size");
  oracle_cmd->add_option("--steps,-T", oracle.steps, "Number of steps");
  oracle_cmd->add_option("--seed", oracle.seed, "Base seed");
  oracle_cmd->add_option("--runs", oracle.runs, "Seeds averaged per row");
  oracle_cmd->add_option("--kernel", oracle.kernel, "identity | linear:A | random_walk:STD");
  oracle_cmd->add_option("--prior", oracle.prior, "normal:MEAN,STD | uniform:LO,HI | point:VALUE");
  oracle_cmd->add_option("--output,-o", oracle.output, "Output CSV (stdout when omitted)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Per-step latency and memory over a long run");
  bench_cmd->add_option("--beta", bench.beta, "Refresh fraction per step");
  bench_cmd->add_option("--particles,-L", bench.particles, "Number of particles");
  bench_cmd->add_option("--steps,-T", bench.steps, "Number of steps (>= 10000)");
  bench_cmd->add_option("--seed", bench.seed, "Seed");
  bench_cmd->add_option("--noise-std", bench.noise_std, "System noise std");
  bench_cmd->add_option("--obs-std", bench.obs_std, "Observation std");
  bench_cmd->add_option("--oracle-particles", bench.oracle_particles, "Bank size of the explicit-mixture contrast");
  bench_cmd->add_option("--output,-o", bench.output, "Report JSON (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidParameter;
  }

  try {
    if (*weights_cmd) {
      return run_weights(weights);
    }
    if (*chain_cmd) {
      return run_chain(chain);
    }
    if (*filter_cmd) {
      return run_filter(filter);
    }
    if (*gen_cmd) {
      return run_generate(gen);
    }
    if (*oracle_cmd) {
      return run_compare_oracle(oracle);
    }
    if (*bench_cmd) {
      return run_bench(bench);
    }
  } catch (const recmix::Error& e) {
    std::cerr << "recmix: " << recmix::to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return kExitOk;
}
