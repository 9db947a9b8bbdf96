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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "recmix/chain.hpp"
#include "recmix/errors.hpp"
#include "recmix/filter.hpp"
#include "recmix/metrics.hpp"
#include "recmix/mixing.hpp"
#include "recmix/models.hpp"
#include "recmix/oracle.hpp"

namespace py = pybind11;

namespace {

std::vector<recmix::ObservationRecord> scalar_records(const std::vector<double>& y,
                                                      const std::optional<std::vector<double>>& truth) {
  if (truth && truth->size() != y.size()) {
    throw recmix::InvalidParameter("truth must have one entry per observation");
  }
  std::vector<recmix::ObservationRecord> out(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) {
    out[t].t = static_cast<std::int64_t>(t);
    out[t].y = {y[t]};
    if (truth) {
      out[t].truth = std::vector<double>{(*truth)[t]};
    }
  }
  return out;
}

recmix::ResamplingScheme parse_scheme(const std::string& name) {
  if (name == "multinomial") {
    return recmix::ResamplingScheme::kMultinomial;
  }
  if (name == "systematic") {
    return recmix::ResamplingScheme::kSystematic;
  }
  throw recmix::InvalidParameter("unknown resampling scheme '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_recmix, m) {
  m.doc() = "Fixed-budget recency-weighted sampling and filtering";

  auto base = py::register_exception<recmix::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<recmix::InvalidParameter>(m, "InvalidParameter", base.ptr());
  py::register_exception<recmix::NonNormalizable>(m, "NonNormalizable", base.ptr());
  py::register_exception<recmix::InvalidState>(m, "InvalidState", base.ptr());
  py::register_exception<recmix::Unsupported>(m, "Unsupported", base.ptr());
  py::register_exception<recmix::DegenerateWeights>(m, "DegenerateWeights", base.ptr());
  py::register_exception<recmix::InputError>(m, "InputError", base.ptr());
  py::register_exception<recmix::NoData>(m, "NoData", base.ptr());

  m.def(
      "mixing_weights",
      [](double beta, std::optional<std::size_t> horizon, double theta0) {
        return recmix::mixing_weights(recmix::DecaySpec{beta, theta0, horizon}).weights;
      },
      py::arg("beta"), py::arg("horizon") = py::none(), py::arg("theta0") = 1.0,
      "Normalized lag weights, lag 1 first. Without a horizon the closed form is returned, truncated once the tail "
      "drops below 1e-12.");
  m.def(
      "allocate_samples",
      [](std::size_t total, std::vector<double> weights) {
        return recmix::allocate_samples(total, recmix::MixingWeights{std::move(weights)}).counts;
      },
      py::arg("total"), py::arg("weights"), "Largest-remainder split of `total` samples across lags.");
  m.def("effective_horizon", &recmix::effective_horizon, py::arg("beta"), py::arg("epsilon"));
  m.def("refresh_count", &recmix::refresh_count, py::arg("total"), py::arg("beta"));

  m.def(
      "run_chain",
      [](std::size_t particles, double beta, std::size_t steps, std::uint64_t seed, const std::string& kernel,
         const std::string& prior) {
        const auto run = recmix::run_chain(particles, recmix::parse_prior(prior), recmix::parse_kernel(kernel), beta,
                                           steps, seed);
        py::list compositions;
        for (const auto& c : run.compositions) {
          compositions.append(py::cast(c.counts));
        }
        py::dict out;
        out["compositions"] = compositions;
        out["values"] = std::vector<double>(run.final_ensemble.values().begin(), run.final_ensemble.values().end());
        out["births"] = std::vector<std::int64_t>(run.final_ensemble.births().begin(), run.final_ensemble.births().end());
        return out;
      },
      py::arg("particles"), py::arg("beta"), py::arg("steps"), py::arg("seed") = 0, py::arg("kernel") = "identity",
      py::arg("prior") = "normal:0,1",
      "Run the fixed-budget chain. Returns per-step {lag: count} maps and the final ensemble.");

  m.def(
      "run_filter",
      [](const std::vector<double>& y, std::size_t particles, double beta, double noise_std, std::uint64_t seed,
         const std::string& model, const std::string& kernel, const std::string& prior, const std::string& scheme,
         const std::optional<std::vector<double>>& truth) {
        recmix::FilterConfig config;
        config.particles = particles;
        config.decay.beta = beta;
        config.noise_std = {noise_std};
        config.obs_model = recmix::parse_observation_model(model);
        config.kernel = recmix::parse_kernel(kernel);
        config.prior = recmix::parse_prior(prior);
        config.scheme = parse_scheme(scheme);
        config.seed = seed;
        const auto trace = recmix::run_filter(config, scalar_records(y, truth));
        std::vector<double> mean, sd, ess, lml;
        for (const auto& row : trace) {
          mean.push_back(row.summary.mean[0]);
          sd.push_back(row.summary.std[0]);
          ess.push_back(row.summary.ess);
          lml.push_back(row.summary.log_marginal_increment);
        }
        py::dict out;
        out["mean"] = mean;
        out["std"] = sd;
        out["ess"] = ess;
        out["log_marginal_increment"] = lml;
        return out;
      },
      py::arg("y"), py::arg("particles") = 1000, py::arg("beta") = 0.5, py::arg("noise_std") = 0.1,
      py::arg("seed") = 0, py::arg("model") = "gaussian:1", py::arg("kernel") = "identity",
      py::arg("prior") = "normal:0,1", py::arg("scheme") = "multinomial", py::arg("truth") = py::none(),
      "Filter a scalar observation stream. Returns per-step posterior summaries.");

  m.def(
      "generate",
      [](const std::string& spec, std::size_t length, double obs_std, std::uint64_t seed) {
        auto gen = recmix::parse_generator(spec);
        gen.length = length;
        gen.obs_std = obs_std;
        gen.seed = seed;
        std::vector<double> y, truth;
        for (const auto& r : recmix::generate(gen)) {
          y.push_back(r.y[0]);
          truth.push_back((*r.truth)[0]);
        }
        py::dict out;
        out["y"] = y;
        out["truth"] = truth;
        return out;
      },
      py::arg("spec"), py::arg("length") = 100, py::arg("obs_std") = 1.0, py::arg("seed") = 0,
      "Synthetic stream from a generator spec such as 'changepoint:0,5@50'.");

  m.def(
      "kalman_step",
      [](double mean, double variance, double y, double obs_noise, double process_noise) {
        const auto b = recmix::kalman_step({mean, variance}, y, obs_noise, process_noise);
        return py::make_tuple(b.mean, b.variance);
      },
      py::arg("mean"), py::arg("variance"), py::arg("y"), py::arg("obs_noise"), py::arg("process_noise") = 0.0,
      "One scalar Kalman update. Noise arguments are variances. Returns (mean, variance).");

  m.def(
      "oracle_vs_chain_distance",
      [](std::size_t steps, std::size_t particles, double beta, const std::vector<std::uint64_t>& seeds,
         const std::string& kernel, const std::string& prior) {
        const auto rows = recmix::oracle_vs_chain_distance(steps, particles, beta, recmix::parse_kernel(kernel),
                                                           recmix::parse_prior(prior), seeds);
        std::vector<double> distance, baseline;
        for (const auto& r : rows) {
          distance.push_back(r.distance);
          baseline.push_back(r.baseline);
        }
        py::dict out;
        out["distance"] = distance;
        out["baseline"] = baseline;
        return out;
      },
      py::arg("steps"), py::arg("particles"), py::arg("beta"), py::arg("seeds"), py::arg("kernel") = "identity",
      py::arg("prior") = "normal:0,1");

  using Samples = const std::vector<double>&;
  m.def("wasserstein1", [](Samples a, Samples b) { return recmix::wasserstein1(a, b); }, py::arg("a"), py::arg("b"),
        "W1 between two equal-size scalar sample sets.");
  m.def("ks_statistic", [](Samples a, Samples b) { return recmix::ks_statistic(a, b); }, py::arg("a"), py::arg("b"));
  m.def("rmse", [](Samples e, Samples t) { return recmix::rmse(e, t); }, py::arg("estimate"), py::arg("truth"));
}
