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

#ifndef ROBUSTNET_BOUNDS_HPP
#define ROBUSTNET_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "robustnet/datagen.hpp"
#include "robustnet/losses.hpp"

namespace robustnet {

/// Everything the risk-bound calculators consume. The constant `a_constant`
/// defaults to 996 = 48 + 948: consolidating 48 sqrt(l+1) <= 48 (l+1) and
/// 948 l <= 948 (l+1) covers every depth.
struct BoundInputs {
  double empirical_risk = 0.0;
  double oracle_population_risk = 0.0;
  double oracle_empirical_risk = 0.0;
  double c_h = 0.0;
  double c_F = 0.0;
  double w_F = 0.0;
  double s_x = 0.0;
  double s_y_given_x = 0.0;
  std::size_t n = 1;
  double t = 0.1;
  double b = 0.0;
  std::size_t l = 1;
  double a_constant = 996.0;
};

/// empirical_risk + 16 c_h c_F + 236 c_h (w_F + s_{y|x}) / (sqrt(n) t)
inline double theorem1_rhs(const BoundInputs& in) {
  if (!(in.t > 0.0 && in.t < 1.0)) throw std::domain_error("t must be in (0,1)");
  if (in.n < 1) throw std::domain_error("n must be >= 1");
  return in.empirical_risk + 16.0 * in.c_h * in.c_F +
         236.0 * in.c_h * (in.w_F + in.s_y_given_x) /
             (std::sqrt(static_cast<double>(in.n)) * in.t);
}

/// Same right-hand side with the empirical risk replaced by the oracle's
/// empirical risk (population risk plus its centered deviation, telescoped).
/// Sharing the theorem1_rhs arithmetic keeps the identity exact in floating
/// point.
inline double corollary2_rhs(const BoundInputs& in) {
  BoundInputs sub = in;
  sub.empirical_risk = in.oracle_empirical_risk;
  return theorem1_rhs(sub);
}

/// oracle risk + a c_h (b^{l+1} (l+1) s_x + s_{y|x}) / (sqrt(n) t)
inline double theorem3_first_rhs(const BoundInputs& in) {
  if (!(in.t > 0.0 && in.t < 0.5)) throw std::domain_error("t must be in (0,1/2)");
  if (in.l < 1) throw std::domain_error("l must be >= 1");
  double complexity = std::pow(in.b, static_cast<double>(in.l + 1)) *
                          static_cast<double>(in.l + 1) * in.s_x +
                      in.s_y_given_x;
  return in.oracle_population_risk +
         in.a_constant * in.c_h * complexity / (std::sqrt(static_cast<double>(in.n)) * in.t);
}

struct Theorem3Second {
  double rhs;
  bool n_large_enough;  // proxy: a sqrt(ln n / n) <= 0.1
};

/// 1.1 c_h s_{y|x} + a c_h b^{l+1} (l+1) s_x sqrt(ln n / n). The asymptotic
/// premise has no stated threshold, so it is reported as a flag, not enforced.
inline Theorem3Second theorem3_second_rhs(const BoundInputs& in) {
  if (in.n < 2) throw std::domain_error("n must be >= 2");
  if (in.l < 1) throw std::domain_error("l must be >= 1");
  double rate = std::sqrt(std::log(static_cast<double>(in.n)) / static_cast<double>(in.n));
  double rhs = 1.1 * in.c_h * in.s_y_given_x +
               in.a_constant * in.c_h * std::pow(in.b, static_cast<double>(in.l + 1)) *
                   static_cast<double>(in.l + 1) * in.s_x * rate;
  return {rhs, in.a_constant * rate <= 0.1};
}

struct BoundReport {
  double theorem1_rhs = 0.0;
  double corollary2_rhs = 0.0;
  double theorem3_first_rhs = 0.0;
  double theorem3_second_rhs = 0.0;
  bool theorem3_n_large_enough = false;
  BoundInputs inputs;
};

inline BoundReport evaluate_bounds(const BoundInputs& in) {
  BoundReport r;
  r.theorem1_rhs = theorem1_rhs(in);
  r.corollary2_rhs = corollary2_rhs(in);
  r.theorem3_first_rhs = theorem3_first_rhs(in);
  Theorem3Second second = theorem3_second_rhs(in);
  r.theorem3_second_rhs = second.rhs;
  r.theorem3_n_large_enough = second.n_large_enough;
  r.inputs = in;
  return r;
}

/// Monte Carlo estimate of E[h(y - f*(x))] over fresh samples from `sampler`.
/// The sampler fills (x, y) for sample index i deterministically per seed.
using PairSampler =
    std::function<void(std::uint64_t seed, std::size_t index, std::vector<double>& x, double& y)>;

inline double oracle_population_risk(const OracleNetwork& oracle, const LossFunction& loss,
                                     const PairSampler& sampler, std::size_t mc_n,
                                     std::uint64_t seed) {
  if (mc_n < 1) throw std::invalid_argument("mc_n must be >= 1");
  double sum = 0.0;
  std::vector<double> x(oracle.params.architecture.input_dim);
  for (std::size_t i = 0; i < mc_n; ++i) {
    double y = 0.0;
    sampler(seed, i, x, y);
    sum += loss.eval(y - oracle(x));
  }
  return sum / static_cast<double>(mc_n);
}

/// Sampler drawing inputs and noise from a contamination config.
inline PairSampler contamination_sampler(const ContaminationConfig& cfg,
                                         const OracleNetwork& oracle) {
  return [cfg, &oracle](std::uint64_t seed, std::size_t index, std::vector<double>& x,
                        double& y) {
    Rng rng(derive_seed(seed, index));
    x.resize(cfg.d);
    for (std::size_t j = 0; j < cfg.d; ++j) {
      bool corrupt = rng.bernoulli(cfg.corruption_level);
      x[j] = corrupt ? sample_corrupted_component(cfg, rng) : rng.normal(0.0, cfg.sigma);
    }
    y = oracle(x) + (cfg.noise_std > 0.0 ? rng.normal(0.0, cfg.noise_std) : 0.0);
  };
}

}  // namespace robustnet

#endif  // ROBUSTNET_BOUNDS_HPP
