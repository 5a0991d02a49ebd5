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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "robustnet/robustnet.hpp"

namespace fs = std::filesystem;
using namespace robustnet;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json doc;
  in >> doc;
  return doc;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

int cmd_gen(const std::string& config_path, const std::string& arch_spec, double ball,
            std::size_t n, std::uint64_t oracle_seed, std::uint64_t seed,
            const std::string& out_path, const std::string& oracle_out) {
  ContaminationConfig cfg = contamination_from_json(read_json_file(config_path));
  Architecture arch = Architecture::parse(arch_spec);
  if (arch.input_dim != cfg.d) throw std::runtime_error("arch input dim must match config d");
  OracleNetwork oracle = sample_oracle(arch, ball, oracle_seed);
  Dataset data = sample_contaminated(cfg, oracle, n, seed);
  save_dataset(data, out_path);
  if (!oracle_out.empty()) save_network(oracle.params, oracle_out);
  std::cout << "wrote " << data.size() << " rows to " << out_path << "\n";
  return 0;
}

int cmd_train(const std::string& data_path, const std::string& loss_spec,
              const std::string& arch_spec, double ball, const TrainConfig& cfg,
              const std::string& out_path, const std::string& report_path) {
  Dataset data = load_dataset(data_path);
  LossFunction loss = LossFunction::parse(loss_spec);
  Architecture arch = Architecture::parse(arch_spec);
  TrainResult result = train_erm(data, loss, arch, ball, cfg);
  save_network(result.params, out_path);
  if (!report_path.empty()) {
    json report;
    report["loss"] = loss.spec();
    report["arch"] = arch_spec;
    report["ball_radius"] = ball;
    report["n"] = data.size();
    report["l"] = arch.depth();
    report["empirical_risk"] = result.best_empirical_risk;
    report["seed"] = cfg.seed;
    write_text(report_path, report.dump(2) + "\n");
  }
  std::cout << "best empirical risk " << format_double(result.best_empirical_risk) << "\n";
  return 0;
}

int cmd_complexity(const std::string& data_path, const std::string& arch_spec, double ball,
                   std::size_t reps, std::uint64_t seed, const std::string& oracle_path,
                   const AscentConfig& ascent, const std::string& out_path) {
  Dataset data = load_dataset(data_path);
  Architecture arch = Architecture::parse(arch_spec);
  // f* defaults to the zero network, which always lies in the ball
  OracleNetwork oracle = oracle_path.empty()
                             ? OracleNetwork(NetworkParams::zeros(arch, ball))
                             : OracleNetwork(load_network(oracle_path));
  ComplexityReport report = complexity_report(data, oracle, reps, ascent, seed);
  std::string text = complexity_report_to_json(report).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text(out_path, text);
  }
  return 0;
}

int cmd_bound(const std::string& inputs_path, const std::string& run_dir) {
  BoundInputs in;
  if (!run_dir.empty()) {
    json run = read_json_file((fs::path(run_dir) / "run.json").string());
    json cx = read_json_file((fs::path(run_dir) / "complexity.json").string());
    LossFunction loss = LossFunction::parse(run.at("loss").get<std::string>());
    in.empirical_risk = run.at("empirical_risk").get<double>();
    in.c_h = loss.lipschitz_constant();
    in.n = run.at("n").get<std::size_t>();
    in.b = run.at("ball_radius").get<double>();
    in.l = run.at("l").get<std::size_t>();
    in.c_F = cx.at("rademacher_upper").get<double>();
    in.w_F = cx.at("envelope_upper").get<double>();
    in.s_x = cx.at("s_x_hat").get<double>();
    in.s_y_given_x = cx.at("s_y_given_x_hat").get<double>();
    if (run.contains("t")) in.t = run["t"].get<double>();
  } else {
    in = bound_inputs_from_json(read_json_file(inputs_path));
  }
  std::cout << bound_report_to_json(evaluate_bounds(in)).dump(2) << "\n";
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir,
                   bool emit_plotdata) {
  ExperimentConfig cfg = experiment_config_from_json(read_json_file(config_path));
  fs::create_directories(out_dir);
  std::vector<ExperimentRecord> records = run_sweep(cfg);
  std::vector<CellSummary> cells = summarize(records);
  write_text((fs::path(out_dir) / "records.csv").string(), records_to_csv(records));
  write_text((fs::path(out_dir) / "summary.csv").string(), summaries_to_csv(cells));
  write_text((fs::path(out_dir) / "config.lock.json").string(),
             experiment_config_to_json(cfg).dump(2) + "\n");
  if (emit_plotdata) {
    write_text((fs::path(out_dir) / "plotdata.txt").string(), plotdata(cells));
  }
  bool ok = invariants_hold(records, cfg.t);
  std::cout << records.size() << " records, " << cells.size() << " cells, invariants "
            << (ok ? "hold" : "VIOLATED") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust-loss ERM for ReLU networks: training, complexity measures, risk bounds"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a contaminated synthetic dataset");
  std::string gen_config, gen_arch = "4:8", gen_out = "data.csv", gen_oracle_out;
  double gen_ball = 1.0;
  std::size_t gen_n = 128;
  std::uint64_t gen_oracle_seed = 0, gen_seed = 0;
  gen->add_option("--config", gen_config, "ContaminationConfig JSON file")->required();
  gen->add_option("--arch", gen_arch, "architecture d:h1,h2");
  gen->add_option("--ball", gen_ball, "Frobenius ball radius");
  gen->add_option("--n", gen_n, "number of samples");
  gen->add_option("--oracle-seed", gen_oracle_seed, "seed for the oracle network");
  gen->add_option("--seed", gen_seed, "sampling seed");
  gen->add_option("--out", gen_out, "output CSV path");
  gen->add_option("--save-oracle", gen_oracle_out, "also save the oracle network JSON");

  // train
  auto* train = app.add_subcommand("train", "Fit a network by projected subgradient descent");
  std::string tr_data, tr_loss = "huber:1.345", tr_arch, tr_out = "model.json", tr_report;
  double tr_ball = 1.0;
  TrainConfig tr_cfg;
  train->add_option("--data", tr_data, "dataset CSV")->required();
  train->add_option("--loss", tr_loss, "loss spec: lad|huber:k|cauchy:k|tukey:k|ls");
  train->add_option("--arch", tr_arch, "architecture d:h1,h2")->required();
  train->add_option("--ball", tr_ball, "Frobenius ball radius");
  train->add_option("--iters", tr_cfg.iterations, "iterations");
  train->add_option("--step", tr_cfg.step_size, "step size");
  train->add_option("--batch", tr_cfg.batch_size, "batch size (0 = full)");
  train->add_option("--restarts", tr_cfg.restarts, "random restarts");
  train->add_option("--seed", tr_cfg.seed, "seed");
  train->add_option("--out", tr_out, "output model JSON");
  train->add_option("--report", tr_report, "also write a run report JSON");

  // complexity
  auto* cx = app.add_subcommand("complexity", "Estimate and bound the complexity measures");
  std::string cx_data, cx_arch, cx_oracle, cx_out;
  double cx_ball = 1.0;
  std::size_t cx_reps = 200;
  std::uint64_t cx_seed = 0;
  AscentConfig cx_ascent;
  cx->add_option("--data", cx_data, "dataset CSV")->required();
  cx->add_option("--arch", cx_arch, "architecture d:h1,h2")->required();
  cx->add_option("--ball", cx_ball, "Frobenius ball radius");
  cx->add_option("--reps", cx_reps, "Monte Carlo repetitions");
  cx->add_option("--seed", cx_seed, "seed");
  cx->add_option("--oracle", cx_oracle, "oracle network JSON (default: zero network)");
  cx->add_option("--ascent-starts", cx_ascent.starts, "ascent restarts per repetition");
  cx->add_option("--ascent-steps", cx_ascent.steps_per_start, "ascent steps per start");
  cx->add_option("--out", cx_out, "output JSON path (default: stdout)");

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate the risk-bound right-hand sides");
  std::string bd_inputs, bd_run;
  bound->add_option("--inputs", bd_inputs, "BoundInputs JSON file");
  bound->add_option("--from-run", bd_run, "directory with run.json and complexity.json");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a sweep");
  exp->require_subcommand(1);
  auto* exp_run = exp->add_subcommand("run", "Run the configured grid sweep");
  std::string ex_config, ex_out = "out";
  bool ex_plot = false;
  exp_run->add_option("--config", ex_config, "ExperimentConfig JSON")->required();
  exp_run->add_option("--out", ex_out, "output directory");
  exp_run->add_flag("--emit-plotdata", ex_plot, "write per-cell plot series");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_config, gen_arch, gen_ball, gen_n, gen_oracle_seed, gen_seed, gen_out,
                     gen_oracle_out);
    }
    if (train->parsed()) {
      return cmd_train(tr_data, tr_loss, tr_arch, tr_ball, tr_cfg, tr_out, tr_report);
    }
    if (cx->parsed()) {
      return cmd_complexity(cx_data, cx_arch, cx_ball, cx_reps, cx_seed, cx_oracle, cx_ascent,
                            cx_out);
    }
    if (bound->parsed()) {
      if (bd_inputs.empty() && bd_run.empty()) {
        std::cerr << "bound: need --inputs or --from-run\n";
        return 2;
      }
      return cmd_bound(bd_inputs, bd_run);
    }
    if (exp_run->parsed()) {
      return cmd_experiment(ex_config, ex_out, ex_plot);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
