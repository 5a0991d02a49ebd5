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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "robustnet/io.hpp"
#include "robustnet/network.hpp"
#include "robustnet/rng.hpp"

using namespace robustnet;

namespace {

NetworkParams one_one_one(double w0, double w1, double ball) {
  return NetworkParams(Architecture(1, {1}),
                       {Matrix::from_rows({{w0}}), Matrix::from_rows({{w1}})}, ball);
}

// random in-ball network with pre-activations bounded away from zero for x
NetworkParams random_net(const Architecture& arch, double ball, Rng& rng) {
  return random_params(arch, ball, ball, rng);
}

}  // namespace

TEST_CASE("architecture basics") {
  Architecture arch(2, {3, 5});
  CHECK(arch.depth() == 2);
  CHECK(arch.width() == 5);
  CHECK(arch.dim_of(0) == 2);
  CHECK(arch.dim_of(1) == 3);
  CHECK(arch.dim_of(2) == 5);
  CHECK(arch.dim_of(3) == 1);
  CHECK_THROWS_AS(Architecture(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Architecture(0, {1}), std::invalid_argument);
  CHECK(Architecture::parse("4:8,3") == Architecture(4, {8, 3}));
}

TEST_CASE("forward evaluates the layered ReLU map") {
  auto net = one_one_one(1.0, 1.0, 10.0);
  CHECK(forward(net, {2.0}) == 2.0);
  CHECK(forward(net, {-2.0}) == 0.0);  // ReLU kills negatives

  auto zero = NetworkParams::zeros(Architecture(3, {4, 2}), 1.0);
  CHECK(forward(zero, {1.0, -2.0, 5.0}) == 0.0);

  NetworkParams net2(Architecture(2, {2}),
                     {Matrix::from_rows({{1.0, -1.0}, {0.0, 2.0}}),
                      Matrix::from_rows({{1.0, 1.0}})},
                     10.0);
  CHECK(forward(net2, {3.0, 1.0}) == 4.0);  // relu(2) + relu(2)

  CHECK_THROWS_AS(forward(net2, {1.0}), std::invalid_argument);
}

TEST_CASE("backward hand-checked on the 1-1-1 net") {
  auto net = one_one_one(1.0, 2.0, 10.0);
  LayerGrads g = backward(net, {3.0}, 1.0);
  CHECK(g[1](0, 0) == 3.0);  // d/dTheta^1 = relu(1*3)
  CHECK(g[0](0, 0) == 6.0);  // d/dTheta^0 = 2 * 3

  auto zero = NetworkParams::zeros(Architecture(2, {3}), 1.0);
  LayerGrads gz = backward(zero, {1.0, 2.0}, 1.0);
  for (const Matrix& m : gz) {
    for (double v : m.data()) CHECK(v == 0.0);
  }
}

TEST_CASE("backward matches finite differences away from ReLU kinks") {
  Rng rng(3);
  Architecture arch(2, {3});
  int checked = 0;
  while (checked < 50) {
    NetworkParams net = random_net(arch, 2.0, rng);
    std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    // skip draws with pre-activations near the kink
    std::vector<double> pre = net.layers[0].apply(x);
    bool near_kink = false;
    for (double v : pre) {
      if (std::abs(v) < 1e-3) near_kink = true;
    }
    if (near_kink) continue;
    ++checked;
    LayerGrads g = backward(net, x, 1.0);
    const double eps = 1e-5;
    for (std::size_t j = 0; j < net.layers.size(); ++j) {
      for (std::size_t k = 0; k < net.layers[j].data().size(); ++k) {
        NetworkParams plus = net, minus = net;
        plus.layers[j].data()[k] += eps;
        minus.layers[j].data()[k] -= eps;
        double fd = (forward(plus, x) - forward(minus, x)) / (2.0 * eps);
        CHECK(g[j].data()[k] == Catch::Approx(fd).margin(1e-6).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("frobenius norms") {
  NetworkParams net(Architecture(2, {1}),
                    {Matrix::from_rows({{3.0, 4.0}}), Matrix::from_rows({{0.0}})}, 10.0);
  auto norms = frobenius_norms(net);
  CHECK(norms[0] == 5.0);
  CHECK(norms[1] == 0.0);
  Matrix eye = Matrix::from_rows({{1.0, 0.0}, {0.0, 1.0}});
  CHECK(eye.frobenius_norm() == Catch::Approx(std::sqrt(2.0)));
}

TEST_CASE("project_to_ball rescales, never grows norms, and is idempotent") {
  NetworkParams net(Architecture(2, {1}),
                    {Matrix::from_rows({{1.2, 1.6}}), Matrix::from_rows({{0.5}})}, 1.0);
  NetworkParams proj = project_to_ball(net);
  CHECK(proj.layers[0](0, 0) == Catch::Approx(0.6));
  CHECK(proj.layers[0](0, 1) == Catch::Approx(0.8));
  CHECK(proj.layers[1](0, 0) == 0.5);  // already inside, untouched
  CHECK(proj.in_ball(1e-12));

  NetworkParams twice = project_to_ball(proj);
  for (std::size_t j = 0; j < proj.layers.size(); ++j) {
    CHECK(twice.layers[j] == proj.layers[j]);
  }

  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    NetworkParams p = NetworkParams::zeros(Architecture(3, {4}), 1.5);
    for (Matrix& m : p.layers) {
      for (double& v : m.data()) v = rng.uniform(-3.0, 3.0);
    }
    auto before = frobenius_norms(p);
    NetworkParams q = project_to_ball(p);
    auto after = frobenius_norms(q);
    for (std::size_t j = 0; j < before.size(); ++j) {
      CHECK(after[j] <= before[j] + 1e-12);
      CHECK(after[j] <= 1.5 + 1e-12);
    }
  }
}

TEST_CASE("forward is jointly positively homogeneous") {
  Rng rng(9);
  Architecture arch(2, {3, 2});
  const double l_plus_1 = 3.0;
  for (int i = 0; i < 1000; ++i) {
    NetworkParams net = random_net(arch, 1.0, rng);
    std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    double c = rng.uniform(0.1, 3.0);
    NetworkParams scaled = net;
    scaled.ball_radius *= 10.0;  // keep the scaled layers feasible
    for (Matrix& m : scaled.layers) m.scale(c);
    double lhs = forward(scaled, x);
    double rhs = std::pow(c, l_plus_1) * forward(net, x);
    CHECK(lhs == Catch::Approx(rhs).margin(1e-12).epsilon(1e-9));
  }
}

TEST_CASE("param_lipschitz_check inequality") {
  Rng rng(21);
  Architecture arch(2, {3});

  NetworkParams p = random_net(arch, 1.0, rng);
  auto same = param_lipschitz_check(p, p, {0.7, -0.3});
  CHECK(same.lhs == 0.0);
  CHECK(same.rhs == 0.0);

  NetworkParams q = random_net(arch, 1.0, rng);
  auto zero_x = param_lipschitz_check(p, q, {0.0, 0.0});
  CHECK(zero_x.lhs == 0.0);
  CHECK(zero_x.rhs == 0.0);

  for (int i = 0; i < 10000; ++i) {
    NetworkParams a = random_net(arch, 1.0, rng);
    NetworkParams b = random_net(arch, 1.0, rng);
    std::vector<double> x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    auto check = param_lipschitz_check(a, b, x);
    REQUIRE(check.lhs <= check.rhs + 1e-12);
  }

  NetworkParams other_arch = random_net(Architecture(2, {4}), 1.0, rng);
  CHECK_THROWS_AS(param_lipschitz_check(p, other_arch, {1.0, 1.0}), std::invalid_argument);

  NetworkParams outside = p;
  outside.layers[0].scale(100.0);
  CHECK_THROWS_AS(param_lipschitz_check(outside, q, {1.0, 1.0}), std::domain_error);
}

TEST_CASE("network JSON serialization round-trips exactly") {
  Rng rng(33);
  NetworkParams net = random_net(Architecture(3, {5, 2}), 1.7, rng);
  json doc = network_to_json(net);
  // through text, as the CLI does
  std::stringstream ss;
  ss << doc.dump();
  json parsed = json::parse(ss.str());
  NetworkParams back = network_from_json(parsed);
  CHECK(back.architecture == net.architecture);
  CHECK(back.ball_radius == net.ball_radius);
  for (std::size_t j = 0; j < net.layers.size(); ++j) {
    REQUIRE(back.layers[j] == net.layers[j]);
  }
}
