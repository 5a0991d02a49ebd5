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

#ifndef ROBUSTNET_COMPLEXITY_HPP
#define ROBUSTNET_COMPLEXITY_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "robustnet/datagen.hpp"
#include "robustnet/network.hpp"
#include "robustnet/rng.hpp"

namespace robustnet {

struct ComplexityReport {
  double s_x_hat = 0.0;
  double s_y_given_x_hat = 0.0;
  double rademacher_estimate = 0.0;
  double rademacher_upper = 0.0;
  double envelope_estimate = 0.0;
  double envelope_upper = 0.0;
  std::size_t mc_reps = 0;
  std::size_t ascent_budget = 0;
  std::uint64_t seed = 0;
};

/// Budget for the inner maximization of the intractable suprema. The achieved
/// maxima are lower estimates; the closed-form formulas bound from above.
struct AscentConfig {
  std::size_t starts = 8;
  std::size_t steps_per_start = 100;
  double step_fraction = 0.05;  // step size = fraction * ball_radius

  std::size_t budget() const { return starts * steps_per_start; }
};

/// Plug-in estimate of sqrt(E ||x||^2).
inline double estimate_s_x(const Dataset& data) {
  if (data.size() == 0) throw std::invalid_argument("empty dataset");
  double sum = 0.0;
  for (const auto& x : data.xs) sum += squared_norm(x);
  return std::sqrt(sum / static_cast<double>(data.size()));
}

/// Plug-in estimate of sqrt(E |y - f*(x)|^2).
inline double estimate_s_y_given_x(const Dataset& data, const OracleNetwork& oracle) {
  if (data.size() == 0) throw std::invalid_argument("empty dataset");
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double r = data.ys[i] - oracle(data.xs[i]);
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(data.size()));
}

/// 3 b^{l+1} sqrt(l+1) s_x / sqrt(n), the closed-form Rademacher bound for the
/// Frobenius-constrained ReLU class.
inline double rademacher_upper_bound(double b, std::size_t l, double s_x, std::size_t n) {
  if (b < 0.0) throw std::invalid_argument("b must be >= 0");
  if (l < 1 || n < 1) throw std::invalid_argument("need l >= 1 and n >= 1");
  return 3.0 * std::pow(b, static_cast<double>(l + 1)) *
         std::sqrt(static_cast<double>(l + 1)) * s_x / std::sqrt(static_cast<double>(n));
}

/// 4 b^{l+1} l s_x, the closed-form envelope bound.
inline double envelope_upper_bound(double b, std::size_t l, double s_x) {
  if (b < 0.0) throw std::invalid_argument("b must be >= 0");
  if (l < 1) throw std::invalid_argument("need l >= 1");
  return 4.0 * std::pow(b, static_cast<double>(l + 1)) * static_cast<double>(l) * s_x;
}

namespace detail {

/// Maximize |objective(Theta)| over the ball by multi-start projected gradient
/// ascent. `grad` must fill per-layer gradients of the raw (unsigned)
/// objective at the current parameters and return the objective value.
template <typename Objective>
double ascend_max_abs(const Architecture& arch, double ball_radius,
                      const AscentConfig& ascent, Rng& rng, Objective&& objective) {
  double best = 0.0;
  double init_scale = ball_radius / std::sqrt(static_cast<double>(arch.width()));
  double step = ascent.step_fraction * ball_radius;
  for (std::size_t s = 0; s < ascent.starts; ++s) {
    NetworkParams params = random_params(arch, ball_radius, init_scale, rng);
    for (std::size_t it = 0; it < ascent.steps_per_start; ++it) {
      LayerGrads grads;
      for (const Matrix& m : params.layers) grads.emplace_back(m.rows(), m.cols());
      double value = objective(params, grads);
      if (std::abs(value) > best) best = std::abs(value);
      double sign = value >= 0.0 ? 1.0 : -1.0;  // ascend on |value|
      for (std::size_t j = 0; j < params.layers.size(); ++j) {
        for (std::size_t k = 0; k < params.layers[j].data().size(); ++k) {
          params.layers[j].data()[k] += step * sign * grads[j].data()[k];
        }
      }
      params = project_to_ball(std::move(params));
    }
    LayerGrads scratch;
    for (const Matrix& m : params.layers) scratch.emplace_back(m.rows(), m.cols());
    double value = objective(params, scratch);
    if (std::abs(value) > best) best = std::abs(value);
  }
  return best;
}

}  // namespace detail

/// Monte Carlo lower estimate of the Rademacher complexity: resample sign
/// vectors, approximately maximize |(1/n) sum r_i f_Theta(x_i)| over the ball,
/// average the achieved maxima.
inline double estimate_rademacher(const Dataset& data, const Architecture& arch,
                                  double ball_radius, std::size_t mc_reps,
                                  const AscentConfig& ascent, std::uint64_t seed) {
  if (mc_reps < 1) throw std::invalid_argument("mc_reps must be >= 1");
  if (data.size() == 0) throw std::invalid_argument("empty dataset");
  if (ball_radius == 0.0) return 0.0;
  const std::size_t n = data.size();
  double total = 0.0;
  for (std::size_t rep = 0; rep < mc_reps; ++rep) {
    Rng rng(derive_seed(seed, rep));
    std::vector<double> signs(n);
    for (double& r : signs) r = rng.rademacher();
    auto objective = [&](const NetworkParams& params, LayerGrads& grads) {
      double value = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double fx = forward(params, data.xs[i]);
        value += signs[i] * fx;
        LayerGrads g = backward(params, data.xs[i], signs[i] / static_cast<double>(n));
        for (std::size_t j = 0; j < grads.size(); ++j) {
          for (std::size_t k = 0; k < grads[j].data().size(); ++k) {
            grads[j].data()[k] += g[j].data()[k];
          }
        }
      }
      return value / static_cast<double>(n);
    };
    total += detail::ascend_max_abs(arch, ball_radius, ascent, rng, objective);
  }
  return total / static_cast<double>(mc_reps);
}

/// Monte Carlo lower estimate of the envelope size: for sampled inputs x,
/// approximately maximize |f_Theta(x) - f*(x)|^2 over the ball; return the
/// root of the mean achieved maxima. The integrand is y-free, so only inputs
/// are sampled.
inline double estimate_envelope(const Dataset& data, const OracleNetwork& oracle,
                                std::size_t mc_samples, const AscentConfig& ascent,
                                std::uint64_t seed) {
  if (mc_samples < 1) throw std::invalid_argument("mc_samples must be >= 1");
  if (data.size() == 0) throw std::invalid_argument("empty dataset");
  const Architecture& arch = oracle.params.architecture;
  const double ball_radius = oracle.params.ball_radius;
  if (ball_radius == 0.0) return 0.0;
  double total = 0.0;
  for (std::size_t rep = 0; rep < mc_samples; ++rep) {
    Rng rng(derive_seed(seed, rep ^ 0x5eed0e9fULL));
    const std::vector<double>& x = data.xs[rng.below(data.size())];
    double fstar = oracle(x);
    auto objective = [&](const NetworkParams& params, LayerGrads& grads) {
      double diff = forward(params, x) - fstar;
      LayerGrads g = backward(params, x, 2.0 * diff);
      for (std::size_t j = 0; j < grads.size(); ++j) {
        for (std::size_t k = 0; k < grads[j].data().size(); ++k) {
          grads[j].data()[k] += g[j].data()[k];
        }
      }
      return diff * diff;
    };
    total += detail::ascend_max_abs(arch, ball_radius, ascent, rng, objective);
  }
  return std::sqrt(total / static_cast<double>(mc_samples));
}

/// Assemble estimates plus their closed-form upper bounds.
inline ComplexityReport complexity_report(const Dataset& data, const OracleNetwork& oracle,
                                          std::size_t mc_reps, const AscentConfig& ascent,
                                          std::uint64_t seed) {
  const Architecture& arch = oracle.params.architecture;
  const double b = oracle.params.ball_radius;
  const std::size_t l = arch.depth();
  ComplexityReport report;
  report.s_x_hat = estimate_s_x(data);
  report.s_y_given_x_hat = estimate_s_y_given_x(data, oracle);
  report.rademacher_estimate =
      estimate_rademacher(data, arch, b, mc_reps, ascent, derive_seed(seed, 1));
  report.rademacher_upper = rademacher_upper_bound(b, l, report.s_x_hat, data.size());
  report.envelope_estimate =
      estimate_envelope(data, oracle, mc_reps, ascent, derive_seed(seed, 2));
  report.envelope_upper = envelope_upper_bound(b, l, report.s_x_hat);
  report.mc_reps = mc_reps;
  report.ascent_budget = ascent.budget();
  report.seed = seed;
  return report;
}

}  // namespace robustnet

#endif  // ROBUSTNET_COMPLEXITY_HPP
