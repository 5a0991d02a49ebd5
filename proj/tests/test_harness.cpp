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

#include "robustnet/harness.hpp"

using namespace robustnet;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.loss_specs = {"huber:1.345"};
  cfg.corruption_levels = {0.1};
  cfg.gammas = {1.0};
  cfg.ns = {32};
  cfg.arch_specs = {"2:4"};
  cfg.ball_radii = {1.0};
  cfg.repetitions = 1;
  cfg.test_set_size = 200;
  cfg.train.iterations = 40;
  cfg.complexity_mc_reps = 2;
  cfg.ascent = AscentConfig{2, 20, 0.05};
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST_CASE("one-cell sweep produces a finite, bound-applicable record") {
  auto records = run_sweep(tiny_config());
  REQUIRE(records.size() == 1);
  const ExperimentRecord& r = records.front();
  CHECK(r.cell == 0);
  CHECK(r.repetition == 0);
  CHECK(r.loss_spec == "huber:1.345");
  CHECK(r.n == 32);
  CHECK(std::isfinite(r.empirical_risk));
  CHECK(std::isfinite(r.heldout_risk));
  CHECK(std::isfinite(r.clean_median_abs_err));
  CHECK(std::isfinite(r.theorem1_rhs));
  CHECK(std::isfinite(r.theorem3_first_rhs));
  CHECK(r.bound_applicable);
  CHECK_FALSE(r.diverged);
  CHECK(r.complexity.rademacher_upper > 0.0);
  CHECK(r.complexity.envelope_upper > 0.0);
  CHECK(r.wall_time > 0.0);
}

TEST_CASE("least-squares cells are marked bound-inapplicable") {
  ExperimentConfig cfg = tiny_config();
  cfg.loss_specs = {"ls"};
  auto records = run_sweep(cfg);
  REQUIRE(records.size() == 1);
  CHECK_FALSE(records.front().bound_applicable);
  CHECK_FALSE(records.front().bound_violated);
  CHECK(std::isnan(records.front().theorem1_rhs));
}

TEST_CASE("same seed gives byte-identical CSV") {
  ExperimentConfig cfg = tiny_config();
  auto a = run_sweep(cfg);
  auto b = run_sweep(cfg);
  REQUIRE(a.size() == b.size());
  CHECK(records_to_csv(a) == records_to_csv(b));
  CHECK(summaries_to_csv(summarize(a)) == summaries_to_csv(summarize(b)));
}

TEST_CASE("grid enumeration covers the product of lists") {
  ExperimentConfig cfg = tiny_config();
  cfg.loss_specs = {"lad", "ls"};
  cfg.ns = {16, 32};
  cfg.repetitions = 2;
  cfg.train.iterations = 10;
  cfg.test_set_size = 50;
  auto records = run_sweep(cfg);
  REQUIRE(records.size() == 2 * 2 * 2);
  std::size_t max_cell = 0;
  for (const auto& r : records) max_cell = std::max(max_cell, r.cell);
  CHECK(max_cell == 3);
  auto cells = summarize(records);
  REQUIRE(cells.size() == 4);
  for (const auto& s : cells) CHECK(s.repetitions == 2);
}

TEST_CASE("summarize on a single record reduces to that record") {
  auto records = run_sweep(tiny_config());
  auto cells = summarize(records);
  REQUIRE(cells.size() == 1);
  const CellSummary& s = cells.front();
  const ExperimentRecord& r = records.front();
  CHECK(s.median_heldout_risk == r.heldout_risk);
  CHECK(s.iqr_heldout_risk == 0.0);
  CHECK(s.median_clean_abs_err == r.clean_median_abs_err);
  CHECK(s.violation_rate == (r.bound_violated ? 1.0 : 0.0));
  CHECK(s.mean_bound_slack == Catch::Approx(r.theorem1_rhs - r.heldout_risk));
}

TEST_CASE("violation rate counts only applicable records") {
  ExperimentRecord good;
  good.cell = 0;
  good.bound_applicable = true;
  good.bound_violated = false;
  good.theorem1_rhs = 10.0;
  good.heldout_risk = 1.0;
  ExperimentRecord bad = good;
  bad.bound_violated = true;
  ExperimentRecord ls = good;
  ls.bound_applicable = false;
  auto cells = summarize({good, good, good, bad, ls});
  REQUIRE(cells.size() == 1);
  CHECK(cells.front().violation_rate == Catch::Approx(0.25));
}

TEST_CASE("invariants hold on a default sweep with positive slack") {
  ExperimentConfig cfg = tiny_config();
  cfg.repetitions = 3;
  auto records = run_sweep(cfg);
  CHECK(invariants_hold(records, cfg.t));
  for (const auto& s : summarize(records)) {
    CHECK(s.mean_bound_slack >= 0.0);
  }
}

TEST_CASE("invariants_hold rejects estimate above upper bound") {
  auto records = run_sweep(tiny_config());
  records.front().complexity.rademacher_estimate =
      2.0 * records.front().complexity.rademacher_upper + 1.0;
  CHECK_FALSE(invariants_hold(records, 0.1));
}

TEST_CASE("records CSV has the documented header and one line per record") {
  auto records = run_sweep(tiny_config());
  std::string csv = records_to_csv(records);
  CHECK(csv.rfind("cell,repetition,loss,", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv) {
    if (ch == '\n') ++lines;
  }
  CHECK(lines == records.size() + 1);
}

TEST_CASE("config JSON round-trips") {
  ExperimentConfig cfg = tiny_config();
  cfg.loss_specs = {"lad", "tukey:4.685"};
  cfg.corruption_levels = {0.0, 0.2};
  cfg.seed = 99;
  json doc = experiment_config_to_json(cfg);
  ExperimentConfig back = experiment_config_from_json(doc);
  CHECK(back.loss_specs == cfg.loss_specs);
  CHECK(back.corruption_levels == cfg.corruption_levels);
  CHECK(back.ns == cfg.ns);
  CHECK(back.arch_specs == cfg.arch_specs);
  CHECK(back.seed == cfg.seed);
  CHECK(back.train.iterations == cfg.train.iterations);
  CHECK(back.complexity_mc_reps == cfg.complexity_mc_reps);

  json invalid;
  invalid["t"] = 0.9;
  CHECK_THROWS_AS(experiment_config_from_json(invalid), std::invalid_argument);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg = tiny_config();
  cfg.repetitions = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = tiny_config();
  cfg.loss_specs.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("plotdata emits one line per cell") {
  auto records = run_sweep(tiny_config());
  auto cells = summarize(records);
  std::string pd = plotdata(cells);
  std::size_t lines = 0;
  for (char ch : pd) {
    if (ch == '\n') ++lines;
  }
  CHECK(lines == cells.size());
}
