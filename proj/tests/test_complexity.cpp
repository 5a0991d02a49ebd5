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

#include "robustnet/complexity.hpp"
#include "robustnet/datagen.hpp"

using namespace robustnet;

namespace {

Dataset gaussian_inputs(std::size_t n, std::size_t d, double sigma, std::uint64_t seed) {
  Dataset data;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, i));
    std::vector<double> x(d);
    for (double& v : x) v = rng.normal(0.0, sigma);
    data.xs.push_back(std::move(x));
    data.ys.push_back(0.0);
    data.corrupted_mask.push_back(std::vector<bool>(d, false));
  }
  return data;
}

}  // namespace

TEST_CASE("estimate_s_x") {
  Dataset zeros;
  zeros.xs = {{0.0, 0.0}, {0.0, 0.0}};
  zeros.ys = {0.0, 0.0};
  CHECK(estimate_s_x(zeros) == 0.0);

  Dataset single;
  single.xs = {{3.0, 4.0}};
  single.ys = {0.0};
  CHECK(estimate_s_x(single) == 5.0);

  // N(0, I_4) at n = 1e5: s_x = sqrt(d) = 2 within 3 standard errors
  Dataset gauss = gaussian_inputs(100000, 4, 1.0, 99);
  CHECK(estimate_s_x(gauss) == Catch::Approx(2.0).margin(0.02));

  Dataset empty;
  CHECK_THROWS_AS(estimate_s_x(empty), std::invalid_argument);
}

TEST_CASE("estimate_s_y_given_x") {
  Architecture arch(2, {2});
  OracleNetwork oracle = sample_oracle(arch, 1.0, 5);

  ContaminationConfig cfg;
  cfg.d = 2;
  cfg.noise_std = 0.0;
  Dataset noiseless = sample_contaminated(cfg, oracle, 50, 1);
  CHECK(estimate_s_y_given_x(noiseless, oracle) == 0.0);

  Dataset pm = noiseless;
  for (std::size_t i = 0; i < pm.size(); ++i) {
    pm.ys[i] = oracle(pm.xs[i]) + (i % 2 ? 1.0 : -1.0);
  }
  CHECK(estimate_s_y_given_x(pm, oracle) == Catch::Approx(1.0));

  cfg.noise_std = 1.0;
  Dataset noisy = sample_contaminated(cfg, oracle, 100000, 2);
  CHECK(estimate_s_y_given_x(noisy, oracle) == Catch::Approx(1.0).margin(0.01));
}

TEST_CASE("rademacher_upper_bound formula") {
  // 3 b^{l+1} sqrt(l+1) s_x / sqrt(n)
  CHECK(rademacher_upper_bound(1.0, 1, 1.0, 9) == Catch::Approx(std::sqrt(2.0)));
  CHECK(rademacher_upper_bound(1.0, 1, 0.0, 9) == 0.0);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    double b = rng.uniform(0.0, 3.0);
    std::size_t l = 1 + rng.below(4);
    double s_x = rng.uniform(0.0, 10.0);
    std::size_t n = 1 + rng.below(1000);
    // quadrupling n halves the value exactly
    CHECK(rademacher_upper_bound(b, l, s_x, 4 * n) ==
          Catch::Approx(0.5 * rademacher_upper_bound(b, l, s_x, n)).epsilon(1e-15));
  }
}

TEST_CASE("envelope_upper_bound formula") {
  CHECK(envelope_upper_bound(1.0, 1, 1.0) == 4.0);
  CHECK(envelope_upper_bound(1.0, 1, 0.0) == 0.0);
  CHECK(envelope_upper_bound(2.0, 2, 1.0) == 64.0);  // 4 * 8 * 2
}

TEST_CASE("upper bounds are monotone in b, l, s_x and decreasing in n") {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    double b = rng.uniform(0.0, 2.0);
    std::size_t l = 1 + rng.below(3);
    double s_x = rng.uniform(0.0, 5.0);
    std::size_t n = 2 + rng.below(500);
    CHECK(rademacher_upper_bound(b + 0.5, l, s_x, n) >= rademacher_upper_bound(b, l, s_x, n));
    CHECK(rademacher_upper_bound(b, l, s_x + 1.0, n) >= rademacher_upper_bound(b, l, s_x, n));
    CHECK(rademacher_upper_bound(b, l, s_x, n + 100) <= rademacher_upper_bound(b, l, s_x, n));
    if (b >= 1.0) {
      CHECK(rademacher_upper_bound(b, l + 1, s_x, n) >= rademacher_upper_bound(b, l, s_x, n));
      CHECK(envelope_upper_bound(b, l + 1, s_x) >= envelope_upper_bound(b, l, s_x));
    }
    CHECK(envelope_upper_bound(b + 0.5, l, s_x) >= envelope_upper_bound(b, l, s_x));
    CHECK(envelope_upper_bound(b, l, s_x + 1.0) >= envelope_upper_bound(b, l, s_x));
  }
}

TEST_CASE("estimate_rademacher degenerate cases") {
  Architecture arch(2, {2});
  AscentConfig ascent{2, 20, 0.05};
  Dataset gauss = gaussian_inputs(16, 2, 1.0, 3);
  CHECK(estimate_rademacher(gauss, arch, 0.0, 10, ascent, 1) == 0.0);

  Dataset zeros;
  for (int i = 0; i < 16; ++i) {
    zeros.xs.push_back({0.0, 0.0});
    zeros.ys.push_back(0.0);
    zeros.corrupted_mask.push_back({false, false});
  }
  CHECK(estimate_rademacher(zeros, arch, 1.0, 10, ascent, 1) == 0.0);
}

TEST_CASE("rademacher estimate is dominated by the closed-form bound") {
  Architecture arch(2, {2});
  Dataset data = gaussian_inputs(32, 2, 1.0, 7);
  AscentConfig ascent{4, 60, 0.05};
  double est = estimate_rademacher(data, arch, 1.0, 200, ascent, 11);
  double upper = rademacher_upper_bound(1.0, 1, estimate_s_x(data), 32);
  CHECK(est > 0.0);
  CHECK(est <= upper * 1.05);
}

TEST_CASE("envelope estimate degenerate cases and dominance") {
  Architecture arch(2, {2});
  AscentConfig ascent{4, 60, 0.05};
  Dataset data = gaussian_inputs(32, 2, 1.0, 13);

  OracleNetwork zero_oracle(NetworkParams::zeros(arch, 0.0));
  CHECK(estimate_envelope(data, zero_oracle, 10, ascent, 1) == 0.0);

  Dataset zeros;
  for (int i = 0; i < 8; ++i) {
    zeros.xs.push_back({0.0, 0.0});
    zeros.ys.push_back(0.0);
    zeros.corrupted_mask.push_back({false, false});
  }
  OracleNetwork oracle = sample_oracle(arch, 1.0, 17);
  CHECK(estimate_envelope(zeros, oracle, 10, ascent, 1) == 0.0);

  double est = estimate_envelope(data, oracle, 64, ascent, 19);
  double upper = envelope_upper_bound(1.0, 1, estimate_s_x(data));
  CHECK(est > 0.0);
  CHECK(est <= upper * 1.05);
}

TEST_CASE("scale equivariance of estimate_s_x") {
  Rng rng(23);
  Dataset data = gaussian_inputs(100, 3, 1.0, 29);
  for (int i = 0; i < 20; ++i) {
    double c = rng.uniform(0.1, 10.0);
    Dataset scaled = data;
    for (auto& x : scaled.xs) {
      for (double& v : x) v *= c;
    }
    CHECK(estimate_s_x(scaled) == Catch::Approx(c * estimate_s_x(data)).epsilon(1e-12));
  }
}

TEST_CASE("fixed seed reproduces estimates") {
  Architecture arch(2, {3});
  Dataset data = gaussian_inputs(24, 2, 1.0, 31);
  OracleNetwork oracle = sample_oracle(arch, 1.0, 37);
  AscentConfig ascent{2, 30, 0.05};
  ComplexityReport a = complexity_report(data, oracle, 10, ascent, 41);
  ComplexityReport b = complexity_report(data, oracle, 10, ascent, 41);
  CHECK(a.rademacher_estimate == b.rademacher_estimate);
  CHECK(a.envelope_estimate == b.envelope_estimate);
  CHECK(a.s_x_hat == b.s_x_hat);
  ComplexityReport c = complexity_report(data, oracle, 10, ascent, 42);
  CHECK(a.rademacher_estimate != c.rademacher_estimate);
}
