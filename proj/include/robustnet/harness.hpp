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

#ifndef ROBUSTNET_HARNESS_HPP
#define ROBUSTNET_HARNESS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "robustnet/bounds.hpp"
#include "robustnet/complexity.hpp"
#include "robustnet/datagen.hpp"
#include "robustnet/io.hpp"
#include "robustnet/losses.hpp"
#include "robustnet/training.hpp"

namespace robustnet {

/// Sweep grid plus per-run budgets. Every grid list must be nonempty.
struct ExperimentConfig {
  std::vector<std::string> loss_specs{"huber:1.345"};
  std::vector<double> corruption_levels{0.0};
  std::vector<double> gammas{1.0};
  std::vector<std::size_t> ns{128};
  std::vector<std::string> arch_specs{"4:8"};
  std::vector<double> ball_radii{1.0};
  std::size_t repetitions = 1;
  std::size_t test_set_size = 0;  // 0 means max(10 n, 10^4)
  double t = 0.1;
  double sigma = 1.0;
  double noise_std = 1.0;
  TrainConfig train;
  std::size_t complexity_mc_reps = 8;
  AscentConfig ascent{2, 40, 0.05};
  std::uint64_t seed = 0;

  void validate() const {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (loss_specs.empty() || corruption_levels.empty() || gammas.empty() || ns.empty() ||
        arch_specs.empty() || ball_radii.empty()) {
      throw std::invalid_argument("all grid lists must be nonempty");
    }
    if (!(t > 0.0 && t < 0.5)) throw std::invalid_argument("t must be in (0,1/2)");
  }
};

/// One row per (grid cell, repetition). Units: risks in loss units, errors in
/// response units, wall_time in seconds.
struct ExperimentRecord {
  std::size_t cell = 0;
  std::size_t repetition = 0;
  std::string loss_spec;
  double corruption_level = 0.0;
  double gamma = 0.0;
  std::size_t n = 0;
  std::string arch_spec;
  double ball_radius = 0.0;
  std::size_t depth = 0;
  double empirical_risk = 0.0;
  double heldout_risk = 0.0;        // loss risk on a held-out contaminated set
  double clean_median_abs_err = 0.0;  // |y - f(x)| median on a clean test set
  ComplexityReport complexity;
  double theorem1_rhs = std::numeric_limits<double>::quiet_NaN();
  double theorem3_first_rhs = std::numeric_limits<double>::quiet_NaN();
  bool bound_applicable = false;  // false for the least-squares baseline
  bool bound_violated = false;
  bool diverged = false;
  double wall_time = 0.0;  // in-memory only; kept out of the CSV so re-runs
                           // with one seed stay byte-identical
};

namespace detail {

inline double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  double pos = q * static_cast<double>(v.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  std::size_t hi = std::min(lo + 1, v.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace detail

/// Run the full grid. Training divergence flags the record instead of
/// aborting. Deterministic per cfg.seed; cells and repetitions use derived
/// seeds, so the emitted values do not depend on execution order.
inline std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ExperimentRecord> records;
  std::size_t cell = 0;
  for (const std::string& loss_spec : cfg.loss_specs) {
    for (double c : cfg.corruption_levels) {
      for (double gamma : cfg.gammas) {
        for (std::size_t n : cfg.ns) {
          for (const std::string& arch_spec : cfg.arch_specs) {
            for (double b : cfg.ball_radii) {
              LossFunction loss = LossFunction::parse(loss_spec);
              Architecture arch = Architecture::parse(arch_spec);
              ContaminationConfig gen;
              gen.d = arch.input_dim;
              gen.sigma = cfg.sigma;
              gen.corruption_level = c;
              gen.gamma = gamma;
              gen.noise_std = cfg.noise_std;
              ContaminationConfig clean = gen;
              clean.corruption_level = 0.0;

              std::uint64_t cell_seed = derive_seed(cfg.seed, cell);
              // one oracle per cell, shared by all repetitions
              OracleNetwork oracle = sample_oracle(arch, b, derive_seed(cell_seed, 0));
              std::size_t test_n = cfg.test_set_size
                                       ? cfg.test_set_size
                                       : std::max<std::size_t>(10 * n, 10000);

              for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
                auto start = std::chrono::steady_clock::now();
                std::uint64_t rep_seed = derive_seed(cell_seed, rep + 1);
                ExperimentRecord rec;
                rec.cell = cell;
                rec.repetition = rep;
                rec.loss_spec = loss_spec;
                rec.corruption_level = c;
                rec.gamma = gamma;
                rec.n = n;
                rec.arch_spec = arch_spec;
                rec.ball_radius = b;
                rec.depth = arch.depth();

                Dataset train_data =
                    sample_contaminated(gen, oracle, n, derive_seed(rep_seed, 1));
                Dataset heldout =
                    sample_contaminated(gen, oracle, test_n, derive_seed(rep_seed, 2));
                Dataset clean_test =
                    sample_contaminated(clean, oracle, test_n, derive_seed(rep_seed, 3));

                TrainConfig train_cfg = cfg.train;
                train_cfg.seed = derive_seed(rep_seed, 4);
                NetworkParams fitted = NetworkParams::zeros(arch, b);
                try {
                  TrainResult result = train_erm(train_data, loss, arch, b, train_cfg);
                  fitted = result.params;
                  rec.empirical_risk = result.best_empirical_risk;
                } catch (const DivergedError&) {
                  rec.diverged = true;
                  rec.empirical_risk = empirical_risk(fitted, train_data, loss);
                }

                rec.heldout_risk = empirical_risk(fitted, heldout, loss);
                std::vector<double> abs_errs(clean_test.size());
                for (std::size_t i = 0; i < clean_test.size(); ++i) {
                  abs_errs[i] =
                      std::abs(clean_test.ys[i] - forward(fitted, clean_test.xs[i]));
                }
                rec.clean_median_abs_err = detail::median(std::move(abs_errs));

                rec.complexity = complexity_report(train_data, oracle, cfg.complexity_mc_reps,
                                                   cfg.ascent, derive_seed(rep_seed, 5));

                if (loss.is_lipschitz()) {
                  // certified inputs: closed-form upper bounds, never the
                  // Monte Carlo lower estimates
                  BoundInputs in;
                  in.empirical_risk = rec.empirical_risk;
                  in.c_h = loss.lipschitz_constant();
                  in.c_F = rec.complexity.rademacher_upper;
                  in.w_F = rec.complexity.envelope_upper;
                  in.s_x = rec.complexity.s_x_hat;
                  in.s_y_given_x = rec.complexity.s_y_given_x_hat;
                  in.n = n;
                  in.t = cfg.t;
                  in.b = b;
                  in.l = arch.depth();
                  rec.theorem1_rhs = theorem1_rhs(in);
                  rec.theorem3_first_rhs = theorem3_first_rhs(in);
                  rec.bound_applicable = true;
                  rec.bound_violated = rec.heldout_risk > rec.theorem1_rhs;
                }

                rec.wall_time = std::chrono::duration<double>(
                                    std::chrono::steady_clock::now() - start)
                                    .count();
                records.push_back(std::move(rec));
              }
              ++cell;
            }
          }
        }
      }
    }
  }
  return records;
}

struct CellSummary {
  std::size_t cell = 0;
  std::string loss_spec;
  double corruption_level = 0.0;
  double gamma = 0.0;
  std::size_t n = 0;
  std::string arch_spec;
  double ball_radius = 0.0;
  std::size_t repetitions = 0;
  double median_heldout_risk = 0.0;
  double iqr_heldout_risk = 0.0;
  double median_clean_abs_err = 0.0;
  double iqr_clean_abs_err = 0.0;
  double violation_rate = 0.0;
  double mean_bound_slack = 0.0;  // mean(theorem1_rhs - heldout_risk)
};

inline std::vector<CellSummary> summarize(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records to summarize");
  std::size_t max_cell = 0;
  for (const auto& r : records) max_cell = std::max(max_cell, r.cell);
  std::vector<CellSummary> out;
  for (std::size_t c = 0; c <= max_cell; ++c) {
    std::vector<double> risks, errs, slacks;
    std::size_t violations = 0, applicable = 0;
    CellSummary s;
    bool seen = false;
    for (const auto& r : records) {
      if (r.cell != c) continue;
      if (!seen) {
        s.cell = c;
        s.loss_spec = r.loss_spec;
        s.corruption_level = r.corruption_level;
        s.gamma = r.gamma;
        s.n = r.n;
        s.arch_spec = r.arch_spec;
        s.ball_radius = r.ball_radius;
        seen = true;
      }
      risks.push_back(r.heldout_risk);
      errs.push_back(r.clean_median_abs_err);
      if (r.bound_applicable) {
        ++applicable;
        if (r.bound_violated) ++violations;
        slacks.push_back(r.theorem1_rhs - r.heldout_risk);
      }
    }
    if (!seen) continue;
    s.repetitions = risks.size();
    s.median_heldout_risk = detail::median(risks);
    s.iqr_heldout_risk = detail::quantile(risks, 0.75) - detail::quantile(risks, 0.25);
    s.median_clean_abs_err = detail::median(errs);
    s.iqr_clean_abs_err = detail::quantile(errs, 0.75) - detail::quantile(errs, 0.25);
    s.violation_rate = applicable
                           ? static_cast<double>(violations) / static_cast<double>(applicable)
                           : 0.0;
    double slack_sum = 0.0;
    for (double v : slacks) slack_sum += v;
    s.mean_bound_slack = slacks.empty() ? std::numeric_limits<double>::quiet_NaN()
                                        : slack_sum / static_cast<double>(slacks.size());
    out.push_back(std::move(s));
  }
  return out;
}

/// Coverage plus dominance invariants; the CLI exits nonzero if this fails.
inline bool invariants_hold(const std::vector<ExperimentRecord>& records, double t,
                            double dominance_slack = 0.05) {
  for (const auto& s : summarize(records)) {
    if (s.violation_rate > t) return false;
  }
  for (const auto& r : records) {
    if (r.complexity.rademacher_estimate >
        r.complexity.rademacher_upper * (1.0 + dominance_slack)) {
      return false;
    }
    if (r.complexity.envelope_estimate >
        r.complexity.envelope_upper * (1.0 + dominance_slack)) {
      return false;
    }
  }
  return true;
}

// ---- CSV export ------------------------------------------------------------

inline std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  out << "cell,repetition,loss,corruption_level,gamma,n,arch,ball_radius,depth,"
         "empirical_risk,heldout_risk,clean_median_abs_err,"
         "s_x_hat,s_y_given_x_hat,rademacher_estimate,rademacher_upper,"
         "envelope_estimate,envelope_upper,mc_reps,ascent_budget,"
         "theorem1_rhs,theorem3_first_rhs,bound_applicable,bound_violated,diverged\n";
  for (const auto& r : records) {
    out << r.cell << "," << r.repetition << "," << r.loss_spec << ","
        << format_double(r.corruption_level) << "," << format_double(r.gamma) << "," << r.n
        << "," << r.arch_spec << "," << format_double(r.ball_radius) << "," << r.depth << ","
        << format_double(r.empirical_risk) << "," << format_double(r.heldout_risk) << ","
        << format_double(r.clean_median_abs_err) << "," << format_double(r.complexity.s_x_hat)
        << "," << format_double(r.complexity.s_y_given_x_hat) << ","
        << format_double(r.complexity.rademacher_estimate) << ","
        << format_double(r.complexity.rademacher_upper) << ","
        << format_double(r.complexity.envelope_estimate) << ","
        << format_double(r.complexity.envelope_upper) << "," << r.complexity.mc_reps << ","
        << r.complexity.ascent_budget << "," << format_double(r.theorem1_rhs) << ","
        << format_double(r.theorem3_first_rhs) << "," << (r.bound_applicable ? 1 : 0) << ","
        << (r.bound_violated ? 1 : 0) << "," << (r.diverged ? 1 : 0) << "\n";
  }
  return out.str();
}

inline std::string summaries_to_csv(const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  out << "cell,loss,corruption_level,gamma,n,arch,ball_radius,repetitions,"
         "median_heldout_risk,iqr_heldout_risk,median_clean_abs_err,iqr_clean_abs_err,"
         "violation_rate,mean_bound_slack\n";
  for (const auto& s : cells) {
    out << s.cell << "," << s.loss_spec << "," << format_double(s.corruption_level) << ","
        << format_double(s.gamma) << "," << s.n << "," << s.arch_spec << ","
        << format_double(s.ball_radius) << "," << s.repetitions << ","
        << format_double(s.median_heldout_risk) << "," << format_double(s.iqr_heldout_risk)
        << "," << format_double(s.median_clean_abs_err) << ","
        << format_double(s.iqr_clean_abs_err) << "," << format_double(s.violation_rate) << ","
        << format_double(s.mean_bound_slack) << "\n";
  }
  return out.str();
}

/// Per-cell (corruption level, median clean error) series for external plotting.
inline std::string plotdata(const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  for (const auto& s : cells) {
    out << format_double(s.corruption_level) << " " << format_double(s.median_clean_abs_err)
        << "\n";
  }
  return out.str();
}

// ---- config JSON -----------------------------------------------------------

inline ExperimentConfig experiment_config_from_json(const json& doc) {
  ExperimentConfig cfg;
  if (doc.contains("losses")) cfg.loss_specs = doc["losses"].get<std::vector<std::string>>();
  if (doc.contains("corruption_levels")) {
    cfg.corruption_levels = doc["corruption_levels"].get<std::vector<double>>();
  }
  if (doc.contains("gammas")) cfg.gammas = doc["gammas"].get<std::vector<double>>();
  if (doc.contains("ns")) cfg.ns = doc["ns"].get<std::vector<std::size_t>>();
  if (doc.contains("archs")) cfg.arch_specs = doc["archs"].get<std::vector<std::string>>();
  if (doc.contains("ball_radii")) cfg.ball_radii = doc["ball_radii"].get<std::vector<double>>();
  cfg.repetitions = doc.value("repetitions", cfg.repetitions);
  cfg.test_set_size = doc.value("test_set_size", cfg.test_set_size);
  cfg.t = doc.value("t", cfg.t);
  cfg.sigma = doc.value("sigma", cfg.sigma);
  cfg.noise_std = doc.value("noise_std", cfg.noise_std);
  cfg.train.step_size = doc.value("step", cfg.train.step_size);
  cfg.train.iterations = doc.value("iters", cfg.train.iterations);
  cfg.train.batch_size = doc.value("batch", cfg.train.batch_size);
  cfg.train.restarts = doc.value("restarts", cfg.train.restarts);
  cfg.complexity_mc_reps = doc.value("complexity_reps", cfg.complexity_mc_reps);
  cfg.ascent.starts = doc.value("ascent_starts", cfg.ascent.starts);
  cfg.ascent.steps_per_start = doc.value("ascent_steps", cfg.ascent.steps_per_start);
  cfg.seed = doc.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

inline json experiment_config_to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["losses"] = cfg.loss_specs;
  doc["corruption_levels"] = cfg.corruption_levels;
  doc["gammas"] = cfg.gammas;
  doc["ns"] = cfg.ns;
  doc["archs"] = cfg.arch_specs;
  doc["ball_radii"] = cfg.ball_radii;
  doc["repetitions"] = cfg.repetitions;
  doc["test_set_size"] = cfg.test_set_size;
  doc["t"] = cfg.t;
  doc["sigma"] = cfg.sigma;
  doc["noise_std"] = cfg.noise_std;
  doc["step"] = cfg.train.step_size;
  doc["iters"] = cfg.train.iterations;
  doc["batch"] = cfg.train.batch_size;
  doc["restarts"] = cfg.train.restarts;
  doc["complexity_reps"] = cfg.complexity_mc_reps;
  doc["ascent_starts"] = cfg.ascent.starts;
  doc["ascent_steps"] = cfg.ascent.steps_per_start;
  doc["seed"] = cfg.seed;
  return doc;
}

}  // namespace robustnet

#endif  // ROBUSTNET_HARNESS_HPP
