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

#ifndef ROBUSTNET_DATAGEN_HPP
#define ROBUSTNET_DATAGEN_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "robustnet/network.hpp"
#include "robustnet/rng.hpp"

namespace robustnet {

/// Fixed reference network f* = f_{Theta*}; must lie in the weight-decay ball.
struct OracleNetwork {
  NetworkParams params;

  explicit OracleNetwork(NetworkParams p) : params(std::move(p)) {
    if (!params.in_ball(1e-9)) {
      throw std::invalid_argument("oracle parameters must lie in the ball");
    }
  }

  double operator()(const std::vector<double>& x) const { return forward(params, x); }
};

enum class CorruptionKind { LogNormal, PointMass };

/// Heavy-tailed input-contamination mixture: each input component is drawn
/// from the corruption distribution with probability `corruption_level`, else
/// from N(0, sigma^2). Responses are f*(x) plus Gaussian noise.
struct ContaminationConfig {
  std::size_t d = 1;
  double sigma = 1.0;
  double corruption_level = 0.0;  // c in [0,1]
  CorruptionKind cor_kind = CorruptionKind::LogNormal;
  double gamma = 1.0;       // log-normal(0, gamma^2) parameter
  double point_mass = 0.0;  // value for PointMass corruption
  double noise_std = 1.0;
  bool per_row = false;  // corrupt whole rows instead of single components

  void validate() const {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (corruption_level < 0.0 || corruption_level > 1.0) {
      throw std::invalid_argument("corruption_level must be in [0,1]");
    }
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    if (noise_std < 0.0) throw std::invalid_argument("noise_std must be >= 0");
  }

  double corruption_second_moment() const {
    switch (cor_kind) {
      case CorruptionKind::LogNormal:
        return std::exp(2.0 * gamma * gamma);
      case CorruptionKind::PointMass:
        return point_mass * point_mass;
    }
    throw std::logic_error("unreachable");
  }
};

/// n regression pairs plus the record of which input components were drawn
/// from the corruption distribution.
struct Dataset {
  std::vector<std::vector<double>> xs;
  std::vector<double> ys;
  std::vector<std::vector<bool>> corrupted_mask;
  std::uint64_t seed = 0;

  std::size_t size() const { return ys.size(); }
  std::size_t dim() const { return xs.empty() ? 0 : xs.front().size(); }
};

inline double sample_corrupted_component(const ContaminationConfig& cfg, Rng& rng) {
  switch (cfg.cor_kind) {
    case CorruptionKind::LogNormal:
      return rng.lognormal(cfg.gamma);
    case CorruptionKind::PointMass:
      return cfg.point_mass;
  }
  throw std::logic_error("unreachable");
}

/// Draw n pairs; deterministic per seed, rows generated from counter-based
/// substreams so the output does not depend on evaluation order.
inline Dataset sample_contaminated(const ContaminationConfig& cfg,
                                   const OracleNetwork& oracle, std::size_t n,
                                   std::uint64_t seed) {
  cfg.validate();
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (oracle.params.architecture.input_dim != cfg.d) {
    throw std::invalid_argument("oracle input dim must equal cfg.d");
  }
  Dataset data;
  data.seed = seed;
  data.xs.resize(n);
  data.ys.resize(n);
  data.corrupted_mask.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, i));
    std::vector<double>& x = data.xs[i];
    std::vector<bool>& mask = data.corrupted_mask[i];
    x.resize(cfg.d);
    mask.resize(cfg.d);
    bool row_corrupt = cfg.per_row && rng.bernoulli(cfg.corruption_level);
    for (std::size_t j = 0; j < cfg.d; ++j) {
      bool corrupt = cfg.per_row ? row_corrupt : rng.bernoulli(cfg.corruption_level);
      mask[j] = corrupt;
      x[j] = corrupt ? sample_corrupted_component(cfg, rng) : rng.normal(0.0, cfg.sigma);
    }
    data.ys[i] = oracle(x) + (cfg.noise_std > 0.0 ? rng.normal(0.0, cfg.noise_std) : 0.0);
  }
  return data;
}

struct TheoreticalInputSize {
  double exact;      // sqrt(d ((1-c) sigma^2 + c E[x_cor^2]))
  double displayed;  // (1-c) sqrt(d) sigma + c sqrt(d E[x_cor^2])
};

/// Closed-form s_x of the contamination mixture. The `displayed` variant is
/// the linearly mixed expression; `exact` mixes the second moments. They agree
/// at the endpoints c = 0 and c = 1.
inline TheoreticalInputSize theoretical_s_x(const ContaminationConfig& cfg) {
  cfg.validate();
  const double c = cfg.corruption_level;
  const double m2 = cfg.corruption_second_moment();
  const double d = static_cast<double>(cfg.d);
  TheoreticalInputSize out;
  out.exact = std::sqrt(d * ((1.0 - c) * cfg.sigma * cfg.sigma + c * m2));
  out.displayed = (1.0 - c) * std::sqrt(d) * cfg.sigma + c * std::sqrt(d * m2);
  return out;
}

/// Random in-ball oracle network; deterministic per seed.
inline OracleNetwork sample_oracle(const Architecture& arch, double ball_radius,
                                   std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x0acce55ULL));
  double init_scale =
      ball_radius / std::sqrt(static_cast<double>(std::max<std::size_t>(arch.width(), 1)));
  return OracleNetwork(random_params(arch, ball_radius, init_scale, rng));
}

}  // namespace robustnet

#endif  // ROBUSTNET_DATAGEN_HPP
