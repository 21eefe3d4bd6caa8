/*
 * Copyright 2026 The qgpr Authors
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

#include "qgpr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include <CLI11.hpp>

#include "qgpr/block_encoding.hpp"
#include "qgpr/coherent_kernel.hpp"
#include "qgpr/dataset_io.hpp"
#include "qgpr/errors.hpp"
#include "qgpr/hamiltonian_sim.hpp"
#include "qgpr/pipeline.hpp"

namespace qgpr {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string data;
  double sigma2 = 0.1;
  int qpe_bits = 8;
  std::string c = "auto";
  double delta = 1e-6;
  std::string mode = "exact";
  std::string kernel = "classical";
  std::string shots = "ideal";
  std::uint64_t seed = 0;
  std::string out;
  bool timings = false;
};

RunConfig to_config(const Options& o) {
  RunConfig c;
  c.noise_variance = o.sigma2;
  c.qpe_bits = o.qpe_bits;
  if (o.c != "auto") c.rotation_constant = std::stod(o.c);
  c.truncation_delta = o.delta;
  c.eigenvalue_mode = parse_eigenvalue_mode(o.mode);
  c.kernel_source = parse_kernel_source(o.kernel);
  c.shots = o.shots == "ideal" ? 0 : std::stoull(o.shots);
  c.seed = o.seed;
  return c;
}

json outcome_json(const InterferenceOutcome& o) {
  json j;
  j["probability"] = o.probability;
  j["signed_sum"] = o.signed_sum;
  if (o.shots) {
    j["shots"] = o.shots->shots;
    j["hits"] = o.shots->hits;
    j["probability_interval"] = {o.shots->probability_interval.low, o.shots->probability_interval.high};
  }
  return j;
}

json named_json(const NamedValues& v) {
  json j = json::object();
  for (const auto& [k, x] : v) j[k] = x;
  return j;
}

json classical_command(const Dataset& d, const RunConfig& cfg) {
  Prediction p;
  try {
    p = predict_cholesky(d, Hyperparams{cfg.noise_variance});
  } catch (const std::exception& e) {
    throw StageError("classical", e.what());
  }
  json j;
  j["command"] = "classical";
  j["mean"] = p.mean;
  j["variance"] = p.variance;
  j["config"] = config_to_json(cfg);
  return j;
}

json quantum_command(const Dataset& d, const RunConfig& cfg, bool timings) {
  const QuantumResult q = run_quantum(d, cfg);
  json j;
  j["command"] = "quantum";
  j["mean"] = q.prediction.mean;
  j["variance"] = q.prediction.variance;
  j["success_probabilities"] = named_json(q.success_probabilities);
  j["rotation_constant"] = q.rotation_constant;
  if (cfg.eigenvalue_mode == EigenvalueMode::qpe) j["evolution_time"] = q.evolution_time;
  json inter = json::object();
  if (q.mean_outcome) inter["mean"] = outcome_json(*q.mean_outcome);
  if (q.variance_outcome) inter["variance"] = outcome_json(*q.variance_outcome);
  j["interference"] = inter;
  j["config"] = config_to_json(cfg);
  if (timings) j["timings"] = named_json(q.timings);
  return j;
}

json kernel_check_command(const Dataset& d, const RunConfig& cfg) {
  RunConfig coherent = cfg;
  coherent.kernel_source = KernelSource::coherent;
  SystemInputs in;
  try {
    cfg.validate();
    in = build_system(d, coherent);
  } catch (const std::exception& e) {
    throw StageError("kernel", e.what());
  }
  const Eigen::MatrixXd k = kernel_matrix(d).gram;
  const Eigen::VectorXd kv = kernel_vector(d);
  Eigen::MatrixXd all(d.size() + 1, d.dimension());
  all.topRows(d.size()) = d.inputs;
  all.row(d.size()) = d.test_point.transpose();
  const int t = truncation_for_points(all, cfg.truncation_delta);
  json j;
  j["command"] = "kernel-check";
  j["size"] = d.size();
  j["delta"] = cfg.truncation_delta;
  j["truncation"] = t;
  j["max_entry_deviation"] = (in.gram - k).cwiseAbs().maxCoeff();
  j["kernel_vector_max_deviation"] = (in.kernel_vector - kv).cwiseAbs().maxCoeff();
  j["entry_error_bound"] = kernel_entry_error_bound(all, t);
  j["success_probabilities"] = named_json(in.success_probabilities);
  return j;
}

json spectrum_command(const Dataset& d, const RunConfig& cfg) {
  KernelSystem ks;
  try {
    cfg.validate();
    ks = kernel_matrix(d);
  } catch (const std::exception& e) {
    throw StageError("kernel", e.what());
  }
  const double lmax = ks.eigenvalues.maxCoeff();
  const double lmin = ks.eigenvalues.minCoeff();
  const double t = safe_evolution_time(std::max(lmax, 1.0));
  const double scale = std::ldexp(1.0, cfg.qpe_bits) * t / (2.0 * M_PI);
  json phases = json::array();
  for (Eigen::Index i = 0; i < ks.eigenvalues.size(); ++i) phases.push_back(ks.eigenvalues(i) * scale);
  json j;
  j["command"] = "spectrum";
  j["size"] = d.size();
  j["eigenvalues"] = std::vector<double>(ks.eigenvalues.data(), ks.eigenvalues.data() + ks.eigenvalues.size());
  j["lambda_min"] = lmin;
  j["lambda_max"] = lmax;
  j["condition_number"] = std::isfinite(ks.condition_number) ? json(ks.condition_number) : json("inf");
  j["shifted_condition_number"] = (lmax + cfg.noise_variance) / (lmin + cfg.noise_variance);
  j["evolution_time"] = t;
  j["qpe_bits"] = cfg.qpe_bits;
  j["register_phases"] = phases;
  const LcuResult lcu = lcu_decompose(ks.gram);
  json l;
  if (const auto* dec = std::get_if<LcuDecomposition>(&lcu)) {
    l["circulant"] = true;
    l["coefficients"] = std::vector<double>(dec->coefficients.data(), dec->coefficients.data() + dec->coefficients.size());
  } else {
    l["circulant"] = false;
    l["residual"] = std::get<NotRepresentable>(lcu).residual;
  }
  j["lcu"] = l;
  return j;
}

int emit(const json& j, const Options& o, std::ostream& out, std::ostream& err) {
  const std::string text = dump_json(j);
  if (o.out.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream f(o.out);
  if (!f) {
    err << "error: cannot write '" << o.out << "'\n";
    return kExitUsage;
  }
  f << text;
  return kExitOk;
}

void add_options(CLI::App* sub, Options& o) {
  sub->add_option("--data", o.data, "dataset file (.csv or .json)")->required();
  sub->add_option("--sigma2", o.sigma2, "noise variance")->check(CLI::NonNegativeNumber);
  sub->add_option("--qpe-bits", o.qpe_bits, "eigenvalue register width")->check(CLI::Range(1, 12));
  sub->add_option("--c", o.c, "rotation constant or 'auto'")->check([](const std::string& s) -> std::string {
    if (s == "auto") return {};
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size() && v > 0.0 && std::isfinite(v)) return {};
    } catch (const std::exception&) {
    }
    return "expected a positive number or 'auto'";
  });
  sub->add_option("--delta", o.delta, "coherent-state truncation tolerance")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--mode", o.mode, "eigenvalue mode")->check(CLI::IsMember({"exact", "qpe"}));
  sub->add_option("--kernel", o.kernel, "kernel source")->check(CLI::IsMember({"classical", "coherent"}));
  sub->add_option("--shots", o.shots, "shot count or 'ideal'")->check([](const std::string& s) -> std::string {
    if (s == "ideal") return {};
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); }) &&
        s.size() < 19 && std::stoull(s) > 0)
      return {};
    return "expected a positive integer or 'ideal'";
  });
  sub->add_option("--seed", o.seed, "sampling seed");
  sub->add_option("--out", o.out, "write the report here instead of stdout");
  sub->add_flag("--timings", o.timings, "include per-stage wall-clock timings");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Gaussian process regression simulator", "qgpr"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"classical", "classical Cholesky prediction"},
      {"quantum", "quantum-simulated prediction"},
      {"compare", "classical and quantum predictions with errors"},
      {"kernel-check", "coherent-state kernel against the classical Gram matrix"},
      {"spectrum", "eigenvalue diagnostics of the kernel matrix"},
  };
  for (const auto& [name, help] : commands) add_options(app.add_subcommand(name, help), o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const RunConfig cfg = [&] {
      try {
        return to_config(o);
      } catch (const std::exception& e) {
        throw StageError("config", e.what());
      }
    }();
    const Dataset d = [&] {
      try {
        return load_dataset(o.data);
      } catch (const std::exception& e) {
        throw StageError("data", e.what());
      }
    }();
    json report;
    if (command == "classical")
      report = classical_command(d, cfg);
    else if (command == "quantum")
      report = quantum_command(d, cfg, o.timings);
    else if (command == "compare")
      report = report_to_json(compare(d, cfg, o.timings));
    else if (command == "kernel-check")
      report = kernel_check_command(d, cfg);
    else
      report = spectrum_command(d, cfg);
    return emit(report, o, out, err);
  } catch (const StageError& e) {
    json j;
    j["error"]["stage"] = e.stage();
    j["error"]["message"] = e.detail();
    out << dump_json(j);
    err << "error: " << e.what() << '\n';
    return kExitStage;
  } catch (const std::exception& e) {
    json j;
    j["error"]["stage"] = command;
    j["error"]["message"] = e.what();
    out << dump_json(j);
    err << "error: " << e.what() << '\n';
    return kExitStage;
  }
}

}  // namespace qgpr
