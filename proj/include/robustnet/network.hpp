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

#ifndef ROBUSTNET_NETWORK_HPP
#define ROBUSTNET_NETWORK_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "robustnet/matrix.hpp"
#include "robustnet/rng.hpp"

namespace robustnet {

/// Layered feedforward topology: input dim d, hidden widths p^1..p^l, scalar
/// output. Depth l >= 1 so at least one ReLU is composed.
struct Architecture {
  std::size_t input_dim = 1;
  std::vector<std::size_t> hidden_dims;

  Architecture() = default;
  Architecture(std::size_t d, std::vector<std::size_t> hidden)
      : input_dim(d), hidden_dims(std::move(hidden)) {
    if (input_dim < 1) throw std::invalid_argument("input_dim must be >= 1");
    if (hidden_dims.empty()) throw std::invalid_argument("depth must be >= 1");
    for (std::size_t h : hidden_dims) {
      if (h < 1) throw std::invalid_argument("hidden dims must be >= 1");
    }
  }

  std::size_t depth() const { return hidden_dims.size(); }
  std::size_t width() const {
    return *std::max_element(hidden_dims.begin(), hidden_dims.end());
  }

  /// Layer j maps dim_of(j) -> dim_of(j+1); dim_of(0) = d, dim_of(l+1) = 1.
  std::size_t dim_of(std::size_t j) const {
    if (j == 0) return input_dim;
    if (j <= depth()) return hidden_dims[j - 1];
    return 1;
  }

  /// Parse "d:h1,h2,...".
  static Architecture parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("arch spec needs d:h1,h2");
    std::size_t d = std::stoul(spec.substr(0, colon));
    std::vector<std::size_t> hidden;
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      auto comma = rest.find(',', pos);
      std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
      hidden.push_back(std::stoul(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return Architecture(d, std::move(hidden));
  }

  friend bool operator==(const Architecture& a, const Architecture& b) {
    return a.input_dim == b.input_dim && a.hidden_dims == b.hidden_dims;
  }
};

/// Weight matrices Theta^0..Theta^l plus the Frobenius-ball radius b_M of the
/// weight-decay constraint max_j ||Theta^j||_F <= b_M. No bias terms.
struct NetworkParams {
  Architecture architecture;
  std::vector<Matrix> layers;
  double ball_radius = 0.0;

  NetworkParams() = default;
  NetworkParams(Architecture arch, std::vector<Matrix> mats, double radius)
      : architecture(std::move(arch)), layers(std::move(mats)), ball_radius(radius) {
    if (ball_radius < 0.0) throw std::invalid_argument("ball_radius must be >= 0");
    if (layers.size() != architecture.depth() + 1) {
      throw std::invalid_argument("layer count must be depth + 1");
    }
    for (std::size_t j = 0; j < layers.size(); ++j) {
      if (layers[j].rows() != architecture.dim_of(j + 1) ||
          layers[j].cols() != architecture.dim_of(j)) {
        throw std::invalid_argument("layer " + std::to_string(j) + " shape mismatch");
      }
    }
  }

  static NetworkParams zeros(const Architecture& arch, double radius) {
    std::vector<Matrix> mats;
    for (std::size_t j = 0; j <= arch.depth(); ++j) {
      mats.emplace_back(arch.dim_of(j + 1), arch.dim_of(j));
    }
    return NetworkParams(arch, std::move(mats), radius);
  }

  bool in_ball(double tol = 0.0) const {
    for (const Matrix& m : layers) {
      if (m.frobenius_norm() > ball_radius + tol) return false;
    }
    return true;
  }
};

/// Per-layer subgradient matrices, same shapes as the parameter layers.
using LayerGrads = std::vector<Matrix>;

inline std::vector<double> frobenius_norms(const NetworkParams& p) {
  std::vector<double> norms;
  norms.reserve(p.layers.size());
  for (const Matrix& m : p.layers) norms.push_back(m.frobenius_norm());
  return norms;
}

/// f_Theta(x) = Theta^l relu(Theta^{l-1} ... relu(Theta^0 x)); ReLU after every
/// layer except the last.
inline double forward(const NetworkParams& p, const std::vector<double>& x) {
  if (x.size() != p.architecture.input_dim) {
    throw std::invalid_argument("input dimension mismatch");
  }
  std::vector<double> h = p.layers[0].apply(x);
  const std::size_t l = p.architecture.depth();
  for (std::size_t j = 1; j <= l; ++j) {
    for (double& v : h) v = v > 0.0 ? v : 0.0;
    h = p.layers[j].apply(h);
  }
  return h[0];
}

/// Subgradient of Theta -> upstream * f_Theta(x), with ReLU subgradient 0 at 0.
inline LayerGrads backward(const NetworkParams& p, const std::vector<double>& x,
                           double upstream) {
  if (x.size() != p.architecture.input_dim) {
    throw std::invalid_argument("input dimension mismatch");
  }
  const std::size_t l = p.architecture.depth();
  // forward pass keeping post-activation inputs of every layer
  std::vector<std::vector<double>> inputs(l + 1);
  inputs[0] = x;
  std::vector<std::vector<double>> preacts(l);
  std::vector<double> h = p.layers[0].apply(x);
  for (std::size_t j = 1; j <= l; ++j) {
    preacts[j - 1] = h;
    for (double& v : h) v = v > 0.0 ? v : 0.0;
    inputs[j] = h;
    h = p.layers[j].apply(h);
  }

  LayerGrads grads;
  grads.reserve(l + 1);
  for (std::size_t j = 0; j <= l; ++j) {
    grads.emplace_back(p.layers[j].rows(), p.layers[j].cols());
  }

  // backward pass: delta holds d(output)/d(layer input), scaled by upstream
  std::vector<double> delta{upstream};
  for (std::size_t j = l + 1; j-- > 0;) {
    Matrix& g = grads[j];
    const std::vector<double>& in = inputs[j];
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c) g(r, c) = delta[r] * in[c];
    }
    if (j == 0) break;
    delta = p.layers[j].apply_transposed(delta);
    for (std::size_t r = 0; r < delta.size(); ++r) {
      if (preacts[j - 1][r] <= 0.0) delta[r] = 0.0;
    }
  }
  return grads;
}

/// Radially rescale each layer whose Frobenius norm exceeds b_M. Idempotent.
inline NetworkParams project_to_ball(NetworkParams p) {
  for (Matrix& m : p.layers) {
    double norm = m.frobenius_norm();
    if (norm > p.ball_radius) m.scale(p.ball_radius / norm);
  }
  return p;
}

struct LipschitzCheck {
  double lhs;  // |f_Theta(x) - f_Gamma(x)|^2
  double rhs;  // 4 b^{2l} l ||x||^2 sum_j ||Theta^j - Gamma^j||_F^2
};

/// Parameter-Lipschitz inequality for in-ball pairs: lhs <= rhs always holds.
inline LipschitzCheck param_lipschitz_check(const NetworkParams& p1,
                                            const NetworkParams& p2,
                                            const std::vector<double>& x) {
  if (!(p1.architecture == p2.architecture) || p1.ball_radius != p2.ball_radius) {
    throw std::invalid_argument("parameter pair must share architecture and radius");
  }
  constexpr double kTol = 1e-9;
  if (!p1.in_ball(kTol) || !p2.in_ball(kTol)) {
    throw std::domain_error("parameters outside the weight-decay ball");
  }
  double diff = forward(p1, x) - forward(p2, x);
  double sum_sq = 0.0;
  for (std::size_t j = 0; j < p1.layers.size(); ++j) {
    Matrix d = p1.layers[j];
    for (std::size_t i = 0; i < d.data().size(); ++i) {
      d.data()[i] -= p2.layers[j].data()[i];
    }
    double f = d.frobenius_norm();
    sum_sq += f * f;
  }
  const double b = p1.ball_radius;
  const double l = static_cast<double>(p1.architecture.depth());
  double rhs = 4.0 * std::pow(b, 2.0 * l) * l * squared_norm(x) * sum_sq;
  return {diff * diff, rhs};
}

/// Random in-ball network: i.i.d. uniform entries on [-init_scale, init_scale],
/// then projected.
inline NetworkParams random_params(const Architecture& arch, double ball_radius,
                                   double init_scale, Rng& rng) {
  NetworkParams p = NetworkParams::zeros(arch, ball_radius);
  for (Matrix& m : p.layers) {
    for (double& v : m.data()) v = rng.uniform(-init_scale, init_scale);
  }
  return project_to_ball(std::move(p));
}

}  // namespace robustnet

#endif  // ROBUSTNET_NETWORK_HPP
