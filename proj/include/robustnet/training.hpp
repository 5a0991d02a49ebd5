/*
 * Copyright 2026 The robustnet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ROBUSTNET_TRAINING_HPP
#define ROBUSTNET_TRAINING_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "robustnet/datagen.hpp"
#include "robustnet/losses.hpp"
#include "robustnet/network.hpp"
#include "robustnet/rng.hpp"

namespace robustnet {

struct TrainConfig {
  double step_size = 0.05;
  std::size_t iterations = 500;
  std::size_t batch_size = 0;  // 0 means full batch
  double init_scale = -1.0;    // < 0 means b_M / sqrt(width)
  std::size_t restarts = 0;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(step_size > 0.0)) throw std::invalid_argument("step_size must be positive");
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  }
};

struct TrainResult {
  NetworkParams params;
  double best_empirical_risk = std::numeric_limits<double>::infinity();
  std::vector<double> risk_trace;
};

struct DivergedError : std::runtime_error {
  DivergedError() : std::runtime_error("training diverged; reduce step size") {}
};

/// (1/n) sum h(y_i - f_Theta(x_i)), the objective of the ERM.
inline double empirical_risk(const NetworkParams& p, const Dataset& data,
                             const LossFunction& loss) {
  if (data.size() == 0) throw std::invalid_argument("empty dataset");
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    sum += loss.eval(data.ys[i] - forward(p, data.xs[i]));
  }
  return sum / static_cast<double>(data.size());
}

namespace detail {

/// Single projected subgradient descent run from a random in-ball start.
/// Tracks the best iterate (earliest among ties).
inline TrainResult descend(const Dataset& data, const LossFunction& loss,
                           const Architecture& arch, double ball_radius,
                           const TrainConfig& cfg, std::uint64_t stream_seed) {
  Rng rng(stream_seed);
  const std::size_t n = data.size();
  double init_scale = cfg.init_scale >= 0.0
                          ? cfg.init_scale
                          : ball_radius / std::sqrt(static_cast<double>(arch.width()));
  NetworkParams params = random_params(arch, ball_radius, init_scale, rng);

  TrainResult result;
  result.params = params;
  result.best_empirical_risk = empirical_risk(params, data, loss);
  result.risk_trace.push_back(result.best_empirical_risk);

  const std::size_t batch = cfg.batch_size == 0 ? n : std::min(cfg.batch_size, n);
  std::vector<std::size_t> idx(batch);

  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    if (batch == n) {
      for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    } else {
      for (std::size_t i = 0; i < batch; ++i) idx[i] = rng.below(n);
    }

    LayerGrads total;
    for (std::size_t j = 0; j < params.layers.size(); ++j) {
      total.emplace_back(params.layers[j].rows(), params.layers[j].cols());
    }
    for (std::size_t i : idx) {
      double residual = data.ys[i] - forward(params, data.xs[i]);
      // d/dTheta h(y - f) = -h'(residual) * df/dTheta
      double upstream = -loss.subgradient(residual) / static_cast<double>(batch);
      if (upstream == 0.0) continue;
      LayerGrads g = backward(params, data.xs[i], upstream);
      for (std::size_t j = 0; j < total.size(); ++j) {
        for (std::size_t k = 0; k < total[j].data().size(); ++k) {
          total[j].data()[k] += g[j].data()[k];
        }
      }
    }
    for (std::size_t j = 0; j < params.layers.size(); ++j) {
      for (std::size_t k = 0; k < params.layers[j].data().size(); ++k) {
        params.layers[j].data()[k] -= cfg.step_size * total[j].data()[k];
      }
    }
    params = project_to_ball(std::move(params));

    double risk = empirical_risk(params, data, loss);
    if (!std::isfinite(risk)) throw DivergedError();
    result.risk_trace.push_back(risk);
    if (risk < result.best_empirical_risk) {
      result.best_empirical_risk = risk;
      result.params = params;
    }
  }
  return result;
}

}  // namespace detail

/// Approximate ERM over the weight-decay ball: projected subgradient descent
/// with best-iterate return and optional random restarts. Deterministic per
/// (cfg.seed, restart index).
inline TrainResult train_erm(const Dataset& data, const LossFunction& loss,
                             const Architecture& arch, double ball_radius,
                             const TrainConfig& cfg) {
  cfg.validate();
  if (ball_radius < 0.0) throw std::invalid_argument("ball_radius must be >= 0");
  if (data.size() == 0) throw std::invalid_argument("empty dataset");
  if (data.dim() != arch.input_dim) throw std::invalid_argument("data dim mismatch");

  TrainResult best;
  for (std::size_t r = 0; r <= cfg.restarts; ++r) {
    TrainResult run =
        detail::descend(data, loss, arch, ball_radius, cfg, derive_seed(cfg.seed, r));
    if (run.best_empirical_risk < best.best_empirical_risk) {
      double keep_risk = run.best_empirical_risk;
      std::vector<double> trace = std::move(best.risk_trace);
      trace.insert(trace.end(), run.risk_trace.begin(), run.risk_trace.end());
      best = std::move(run);
      best.best_empirical_risk = keep_risk;
      best.risk_trace = std::move(trace);
    } else {
      best.risk_trace.insert(best.risk_trace.end(), run.risk_trace.begin(),
                             run.risk_trace.end());
    }
  }
  return best;
}

}  // namespace robustnet

#endif  // ROBUSTNET_TRAINING_HPP
