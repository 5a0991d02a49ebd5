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

#ifndef ROBUSTNET_LOSSES_HPP
#define ROBUSTNET_LOSSES_HPP

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace robustnet {

enum class LossKind { LAD, Huber, Cauchy, Tukey, LeastSquares };

/// Robust regression losses with their subgradients and Lipschitz constants.
/// All kinds satisfy h(0) = 0, h(a) = h(-a), h >= 0. LeastSquares is the
/// non-Lipschitz baseline; asking for its Lipschitz constant throws.
class LossFunction {
 public:
  // Classical 95%-efficiency scales for Huber and Tukey.
  static constexpr double kDefaultHuberScale = 1.345;
  static constexpr double kDefaultTukeyScale = 4.685;
  static constexpr double kDefaultCauchyScale = 1.0;

  LossFunction(LossKind kind, double scale) : kind_(kind), scale_(scale) {
    if (uses_scale() && !(scale > 0.0)) {
      throw std::invalid_argument("loss scale must be positive");
    }
  }

  static LossFunction lad() { return {LossKind::LAD, 1.0}; }
  static LossFunction huber(double k = kDefaultHuberScale) { return {LossKind::Huber, k}; }
  static LossFunction cauchy(double k = kDefaultCauchyScale) { return {LossKind::Cauchy, k}; }
  static LossFunction tukey(double k = kDefaultTukeyScale) { return {LossKind::Tukey, k}; }
  static LossFunction least_squares() { return {LossKind::LeastSquares, 1.0}; }

  LossKind kind() const { return kind_; }
  double scale() const { return scale_; }
  bool uses_scale() const {
    return kind_ == LossKind::Huber || kind_ == LossKind::Cauchy || kind_ == LossKind::Tukey;
  }
  bool is_lipschitz() const { return kind_ != LossKind::LeastSquares; }

  double eval(double a) const {
    if (!std::isfinite(a)) throw std::invalid_argument("non-finite residual");
    const double k = scale_;
    switch (kind_) {
      case LossKind::LAD:
        return std::abs(a);
      case LossKind::Huber:
        return std::abs(a) <= k ? 0.5 * a * a : k * std::abs(a) - 0.5 * k * k;
      case LossKind::Cauchy:
        return 0.5 * k * k * std::log1p((a / k) * (a / k));
      case LossKind::Tukey: {
        if (std::abs(a) > k) return k * k / 6.0;
        double u = 1.0 - (a / k) * (a / k);
        return k * k / 6.0 * (1.0 - u * u * u);
      }
      case LossKind::LeastSquares:
        return a * a;
    }
    throw std::logic_error("unreachable");
  }

  /// An element of the subdifferential; 0 at LAD's kink by convention.
  double subgradient(double a) const {
    if (!std::isfinite(a)) throw std::invalid_argument("non-finite residual");
    const double k = scale_;
    switch (kind_) {
      case LossKind::LAD:
        return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
      case LossKind::Huber:
        return std::abs(a) <= k ? a : (a > 0.0 ? k : -k);
      case LossKind::Cauchy:
        return a / (1.0 + (a / k) * (a / k));
      case LossKind::Tukey: {
        if (std::abs(a) > k) return 0.0;
        double u = 1.0 - (a / k) * (a / k);
        return a * u * u;
      }
      case LossKind::LeastSquares:
        return 2.0 * a;
    }
    throw std::logic_error("unreachable");
  }

  /// Tightest c_h with |h(a)-h(b)| <= c_h |a-b|. Tukey's derivative
  /// a(1-(a/k)^2)^2 is maximal at a = k/sqrt(5), giving 16k/(25 sqrt(5)).
  double lipschitz_constant() const {
    const double k = scale_;
    switch (kind_) {
      case LossKind::LAD:
        return 1.0;
      case LossKind::Huber:
        return k;
      case LossKind::Cauchy:
        return 0.5 * k;
      case LossKind::Tukey:
        return 16.0 * k / (25.0 * std::sqrt(5.0));
      case LossKind::LeastSquares:
        throw std::domain_error("least-squares loss is not Lipschitz");
    }
    throw std::logic_error("unreachable");
  }

  /// Max difference quotient |h(a)-h(b)|/|a-b| over all pairs of an equispaced
  /// grid on [-half_width, half_width]. For least squares this grows with the
  /// grid width, demonstrating the missing Lipschitz bound.
  double verify_lipschitz(double half_width, int grid_points) const {
    if (grid_points < 2) throw std::invalid_argument("need at least 2 grid points");
    std::vector<double> values(static_cast<std::size_t>(grid_points));
    std::vector<double> points(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
      double a = -half_width + 2.0 * half_width * i / (grid_points - 1);
      points[static_cast<std::size_t>(i)] = a;
      values[static_cast<std::size_t>(i)] = eval(a);
    }
    double worst = 0.0;
    for (int i = 0; i < grid_points; ++i) {
      for (int j = i + 1; j < grid_points; ++j) {
        double da = points[static_cast<std::size_t>(j)] - points[static_cast<std::size_t>(i)];
        double q = std::abs(values[static_cast<std::size_t>(j)] -
                            values[static_cast<std::size_t>(i)]) /
                   da;
        if (q > worst) worst = q;
      }
    }
    return worst;
  }

  /// Loss spec string: `lad`, `huber:k`, `cauchy:k`, `tukey:k`, `ls`.
  static LossFunction parse(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    bool has_scale = colon != std::string::npos;
    double k = has_scale ? std::stod(spec.substr(colon + 1)) : 0.0;
    if (name == "lad") return lad();
    if (name == "ls") return least_squares();
    if (name == "huber") return has_scale ? huber(k) : huber();
    if (name == "cauchy") return has_scale ? cauchy(k) : cauchy();
    if (name == "tukey") return has_scale ? tukey(k) : tukey();
    throw std::invalid_argument("unknown loss spec: " + spec);
  }

  std::string spec() const {
    switch (kind_) {
      case LossKind::LAD:
        return "lad";
      case LossKind::LeastSquares:
        return "ls";
      case LossKind::Huber:
        return "huber:" + format_scale();
      case LossKind::Cauchy:
        return "cauchy:" + format_scale();
      case LossKind::Tukey:
        return "tukey:" + format_scale();
    }
    throw std::logic_error("unreachable");
  }

 private:
  std::string format_scale() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", scale_);
    return buf;
  }

  LossKind kind_;
  double scale_;
};

}  // namespace robustnet

#endif  // ROBUSTNET_LOSSES_HPP
