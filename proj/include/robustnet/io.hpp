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

#ifndef ROBUSTNET_IO_HPP
#define ROBUSTNET_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "robustnet/bounds.hpp"
#include "robustnet/complexity.hpp"
#include "robustnet/datagen.hpp"
#include "robustnet/network.hpp"

namespace robustnet {

using json = nlohmann::json;

/// Decimal formatting used everywhere a double reaches a file; 17 significant
/// digits round-trip exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---- network -------------------------------------------------------------

inline json network_to_json(const NetworkParams& p) {
  json doc;
  doc["input_dim"] = p.architecture.input_dim;
  doc["hidden_dims"] = p.architecture.hidden_dims;
  doc["ball_radius"] = p.ball_radius;
  json layers = json::array();
  for (const Matrix& m : p.layers) {
    json layer;
    layer["rows"] = m.rows();
    layer["cols"] = m.cols();
    layer["data"] = m.data();  // row-major
    layers.push_back(std::move(layer));
  }
  doc["layers"] = std::move(layers);
  return doc;
}

inline NetworkParams network_from_json(const json& doc) {
  Architecture arch(doc.at("input_dim").get<std::size_t>(),
                    doc.at("hidden_dims").get<std::vector<std::size_t>>());
  std::vector<Matrix> layers;
  for (const json& layer : doc.at("layers")) {
    Matrix m(layer.at("rows").get<std::size_t>(), layer.at("cols").get<std::size_t>());
    m.data() = layer.at("data").get<std::vector<double>>();
    if (m.data().size() != m.rows() * m.cols()) {
      throw std::invalid_argument("layer data size mismatch");
    }
    layers.push_back(std::move(m));
  }
  return NetworkParams(std::move(arch), std::move(layers),
                       doc.at("ball_radius").get<double>());
}

inline void save_network(const NetworkParams& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << network_to_json(p).dump(2) << "\n";
}

inline NetworkParams load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json doc;
  in >> doc;
  return network_from_json(doc);
}

// ---- dataset CSV ----------------------------------------------------------

/// Header: y,x1..xd,mask1..maskd. Doubles at 17 significant digits.
inline std::string dataset_to_csv(const Dataset& data) {
  std::ostringstream out;
  const std::size_t d = data.dim();
  out << "y";
  for (std::size_t j = 1; j <= d; ++j) out << ",x" << j;
  for (std::size_t j = 1; j <= d; ++j) out << ",mask" << j;
  out << "\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << format_double(data.ys[i]);
    for (std::size_t j = 0; j < d; ++j) out << "," << format_double(data.xs[i][j]);
    for (std::size_t j = 0; j < d; ++j) out << "," << (data.corrupted_mask[i][j] ? 1 : 0);
    out << "\n";
  }
  return out.str();
}

inline void save_dataset(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << dataset_to_csv(data);
}

inline Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("empty dataset file");
  std::size_t cols = 1;
  for (char ch : header) {
    if (ch == ',') ++cols;
  }
  if (cols < 3 || (cols - 1) % 2 != 0) {
    throw std::runtime_error("malformed dataset header: " + header);
  }
  const std::size_t d = (cols - 1) / 2;
  Dataset data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tok;
    std::getline(row, tok, ',');
    data.ys.push_back(std::stod(tok));
    std::vector<double> x(d);
    for (std::size_t j = 0; j < d; ++j) {
      if (!std::getline(row, tok, ',')) throw std::runtime_error("short dataset row");
      x[j] = std::stod(tok);
    }
    std::vector<bool> mask(d);
    for (std::size_t j = 0; j < d; ++j) {
      if (!std::getline(row, tok, ',')) throw std::runtime_error("short dataset row");
      mask[j] = std::stoi(tok) != 0;
    }
    data.xs.push_back(std::move(x));
    data.corrupted_mask.push_back(std::move(mask));
  }
  if (data.size() == 0) throw std::runtime_error("dataset has no rows");
  return data;
}

// ---- reports ---------------------------------------------------------------

inline json complexity_report_to_json(const ComplexityReport& r) {
  json doc;
  doc["s_x_hat"] = r.s_x_hat;
  doc["s_y_given_x_hat"] = r.s_y_given_x_hat;
  doc["rademacher_estimate"] = r.rademacher_estimate;
  doc["rademacher_upper"] = r.rademacher_upper;
  doc["envelope_estimate"] = r.envelope_estimate;
  doc["envelope_upper"] = r.envelope_upper;
  doc["mc_reps"] = r.mc_reps;
  doc["ascent_budget"] = r.ascent_budget;
  doc["seed"] = r.seed;
  return doc;
}

inline json bound_inputs_to_json(const BoundInputs& in) {
  json doc;
  doc["empirical_risk"] = in.empirical_risk;
  doc["oracle_population_risk"] = in.oracle_population_risk;
  doc["oracle_empirical_risk"] = in.oracle_empirical_risk;
  doc["c_h"] = in.c_h;
  doc["c_F"] = in.c_F;
  doc["w_F"] = in.w_F;
  doc["s_x"] = in.s_x;
  doc["s_y_given_x"] = in.s_y_given_x;
  doc["n"] = in.n;
  doc["t"] = in.t;
  doc["b"] = in.b;
  doc["l"] = in.l;
  doc["a_constant"] = in.a_constant;
  return doc;
}

inline BoundInputs bound_inputs_from_json(const json& doc) {
  BoundInputs in;
  in.empirical_risk = doc.value("empirical_risk", 0.0);
  in.oracle_population_risk = doc.value("oracle_population_risk", 0.0);
  in.oracle_empirical_risk = doc.value("oracle_empirical_risk", 0.0);
  in.c_h = doc.value("c_h", 0.0);
  in.c_F = doc.value("c_F", 0.0);
  in.w_F = doc.value("w_F", 0.0);
  in.s_x = doc.value("s_x", 0.0);
  in.s_y_given_x = doc.value("s_y_given_x", 0.0);
  in.n = doc.value("n", std::size_t{1});
  in.t = doc.value("t", 0.1);
  in.b = doc.value("b", 0.0);
  in.l = doc.value("l", std::size_t{1});
  in.a_constant = doc.value("a_constant", 996.0);
  return in;
}

inline json bound_report_to_json(const BoundReport& r) {
  json doc;
  doc["theorem1_rhs"] = r.theorem1_rhs;
  doc["corollary2_rhs"] = r.corollary2_rhs;
  doc["theorem3_first_rhs"] = r.theorem3_first_rhs;
  doc["theorem3_second_rhs"] = r.theorem3_second_rhs;
  doc["theorem3_n_large_enough"] = r.theorem3_n_large_enough;
  doc["inputs"] = bound_inputs_to_json(r.inputs);
  return doc;
}

// ---- contamination config --------------------------------------------------

inline ContaminationConfig contamination_from_json(const json& doc) {
  ContaminationConfig cfg;
  cfg.d = doc.value("d", std::size_t{1});
  cfg.sigma = doc.value("sigma", 1.0);
  cfg.corruption_level = doc.value("corruption_level", 0.0);
  std::string kind = doc.value("cor_kind", std::string("LogNormal"));
  if (kind == "LogNormal") {
    cfg.cor_kind = CorruptionKind::LogNormal;
  } else if (kind == "PointMass") {
    cfg.cor_kind = CorruptionKind::PointMass;
  } else {
    throw std::invalid_argument("unknown cor_kind: " + kind);
  }
  cfg.gamma = doc.value("gamma", 1.0);
  cfg.point_mass = doc.value("point_mass", 0.0);
  cfg.noise_std = doc.value("noise_std", 1.0);
  cfg.per_row = doc.value("per_row", false);
  cfg.validate();
  return cfg;
}

inline json contamination_to_json(const ContaminationConfig& cfg) {
  json doc;
  doc["d"] = cfg.d;
  doc["sigma"] = cfg.sigma;
  doc["corruption_level"] = cfg.corruption_level;
  doc["cor_kind"] = cfg.cor_kind == CorruptionKind::LogNormal ? "LogNormal" : "PointMass";
  doc["gamma"] = cfg.gamma;
  doc["point_mass"] = cfg.point_mass;
  doc["noise_std"] = cfg.noise_std;
  doc["per_row"] = cfg.per_row;
  return doc;
}

}  // namespace robustnet

#endif  // ROBUSTNET_IO_HPP
