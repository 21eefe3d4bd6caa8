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

#include "qgpr/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <memory>

#include "qgpr/amplitude_encoding.hpp"
#include "qgpr/block_encoding.hpp"
#include "qgpr/coherent_kernel.hpp"
#include "qgpr/errors.hpp"
#include "qgpr/hamiltonian_sim.hpp"
#include "qgpr/qpe_conditioning.hpp"

namespace qgpr {

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
auto run_stage(const std::string& name, NamedValues& timings, F&& f) {
  const auto start = Clock::now();
  try {
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      timings.emplace_back(name, std::chrono::duration<double>(Clock::now() - start).count());
    } else {
      auto out = f();
      timings.emplace_back(name, std::chrono::duration<double>(Clock::now() - start).count());
      return out;
    }
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

Eigen::MatrixXd pad_gram(const Eigen::MatrixXd& k) {
  const Eigen::Index p = padded_dimension(k.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(p, p);
  out.topLeftCorner(k.rows(), k.cols()) = k;
  return out;
}

}  // namespace

std::string to_string(EigenvalueMode m) { return m == EigenvalueMode::exact ? "exact" : "qpe"; }
std::string to_string(KernelSource k) { return k == KernelSource::classical ? "classical" : "coherent"; }

EigenvalueMode parse_eigenvalue_mode(const std::string& s) {
  if (s == "exact") return EigenvalueMode::exact;
  if (s == "qpe") return EigenvalueMode::qpe;
  throw InvalidArgument("unknown eigenvalue mode '" + s + "'");
}

KernelSource parse_kernel_source(const std::string& s) {
  if (s == "classical") return KernelSource::classical;
  if (s == "coherent") return KernelSource::coherent;
  throw InvalidArgument("unknown kernel source '" + s + "'");
}

void RunConfig::validate() const {
  if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance))
    throw InvalidArgument("noise variance must be finite and nonnegative");
  if (qpe_bits < 1 || qpe_bits > 12) throw InvalidArgument("qpe_bits must lie in [1, 12]");
  if (rotation_constant && !(*rotation_constant > 0.0 && std::isfinite(*rotation_constant)))
    throw InvalidArgument("rotation constant must be positive");
  if (!(truncation_delta > 0.0 && truncation_delta < 1.0)) throw InvalidArgument("truncation delta must lie in (0, 1)");
}

SystemInputs build_system(const Dataset& d, const RunConfig& cfg) {
  d.validate();
  SystemInputs in;
  in.targets = d.targets;
  if (cfg.kernel_source == KernelSource::classical) {
    in.gram = kernel_matrix(d).gram;
    in.kernel_vector = kernel_vector(d);
    return in;
  }
  Eigen::MatrixXd all(d.size() + 1, d.dimension());
  all.topRows(d.size()) = d.inputs;
  all.row(d.size()) = d.test_point.transpose();
  const int t = truncation_for_points(all, cfg.truncation_delta);

  const DensityOperator rho = kernel_density(training_superposition(d.inputs, t));
  Eigen::MatrixXd k = kernel_from_density(rho, d.size());
  in.gram = 0.5 * (k + k.transpose());

  const AugmentedSystem aug = augment(d);
  const BlockEncoding be = encode_density(purify(aug, t), kernel_entry_error_bound(all, t));
  const Extraction ex = extract_kernel_vector(be, static_cast<std::uint64_t>(d.size()));
  in.kernel_vector = kernel_vector_from_extraction(ex, d.size()).kernel_vector;
  in.success_probabilities.emplace_back("kernel_extraction", ex.success_probability);
  return in;
}

QuantumResult predict_system(const SystemInputs& in, const RunConfig& cfg, std::optional<double> evolution_time) {
  cfg.validate();
  const Eigen::Index m = in.gram.rows();
  if (m < 1 || in.gram.cols() != m || in.kernel_vector.size() != m || in.targets.size() != m)
    throw StageError("inversion", "kernel system dimensions disagree");

  QuantumResult out;
  out.success_probabilities = in.success_probabilities;
  const double noise = cfg.noise_variance;
  const Eigen::MatrixXd padded = pad_gram(in.gram);
  out.padded_size = static_cast<int>(padded.rows());

  const double norm_y = in.targets.norm();
  const double norm_k = in.kernel_vector.norm();

  std::optional<EncodedVector> y_enc;
  std::optional<EncodedVector> k_enc;
  if (norm_y > 0.0) {
    y_enc = run_stage("encode_y", out.timings, [&] { return encode(in.targets, "system"); });
    out.success_probabilities.emplace_back("encode_y", y_enc->success_probability);
  }
  if (norm_k > 0.0) {
    k_enc = run_stage("encode_k", out.timings, [&] { return encode(in.kernel_vector, "system"); });
    out.success_probabilities.emplace_back("encode_k", k_enc->success_probability);
  }

  const InversionUnitary u = run_stage("inversion", out.timings, [&] {
    const KernelSystem ks = decompose(padded);
    if (cfg.eigenvalue_mode == EigenvalueMode::exact) {
      const double c = cfg.rotation_constant ? *cfg.rotation_constant
                                             : default_rotation_constant(ks.eigenvalues.minCoeff(), noise);
      return InversionUnitary::exact(ks, c, noise);
    }
    if (!cfg.rotation_constant && noise <= 0.0)
      throw InvalidArgument("automatic rotation constant in qpe mode needs a positive noise variance");
    QpeConfig q;
    q.n_bits = cfg.qpe_bits;
    q.evolution_time = evolution_time ? *evolution_time : safe_evolution_time(ks.eigenvalues.maxCoeff());
    q.rotation_constant = cfg.rotation_constant ? *cfg.rotation_constant : 0.99 * noise;
    auto oracle = std::make_shared<const EvolutionOracle>(padded, q.evolution_time, q.n_bits);
    return InversionUnitary::qpe(oracle, q, noise);
  });
  out.rotation_constant = u.rotation_constant();
  out.evolution_time = u.mode() == InversionUnitary::Mode::qpe ? u.config().evolution_time : 0.0;

  Sampling mean_sampling{cfg.shots, cfg.seed, 4.0};
  Sampling var_sampling{cfg.shots, cfg.seed + 1, 4.0};

  double mean = 0.0;
  double variance = 1.0;
  if (y_enc && k_enc) {
    out.mean_outcome =
        run_stage("mean_circuit", out.timings, [&] { return mean_circuit(u, k_enc->state, y_enc->state, mean_sampling); });
  }
  if (k_enc) {
    out.variance_outcome =
        run_stage("variance_circuit", out.timings, [&] { return variance_circuit(u, k_enc->state, var_sampling); });
  }
  run_stage("recovery", out.timings, [&] {
    if (out.mean_outcome) mean = recover_mean(*out.mean_outcome, std::sqrt(k_enc->norm_sq_estimate),
                                              std::sqrt(y_enc->norm_sq_estimate));
    if (out.variance_outcome) variance = recover_variance(*out.variance_outcome, std::sqrt(k_enc->norm_sq_estimate));
  });
  out.prediction = {mean, variance};
  return out;
}

QuantumResult run_quantum(const Dataset& d, const RunConfig& cfg) {
  NamedValues kernel_timing;
  run_stage("config", kernel_timing, [&] { cfg.validate(); });
  kernel_timing.clear();
  const SystemInputs in = run_stage("kernel", kernel_timing, [&] { return build_system(d, cfg); });
  QuantumResult out = predict_system(in, cfg);
  out.timings.insert(out.timings.begin(), kernel_timing.begin(), kernel_timing.end());
  return out;
}

Prediction qgpr_predict(const Dataset& d, const RunConfig& cfg) { return run_quantum(d, cfg).prediction; }

ComparisonReport compare(const Dataset& d, const RunConfig& cfg, bool with_timings) {
  ComparisonReport r;
  r.config = cfg;
  NamedValues timings;
  const Prediction classical =
      run_stage("classical", timings, [&] { return predict_cholesky(d, Hyperparams{cfg.noise_variance}); });
  QuantumResult q = run_quantum(d, cfg);
  r.classical_mean = classical.mean;
  r.classical_variance = classical.variance;
  r.quantum_mean = q.prediction.mean;
  r.quantum_variance = q.prediction.variance;
  r.abs_error_mean = std::abs(r.quantum_mean - r.classical_mean);
  r.abs_error_variance = std::abs(r.quantum_variance - r.classical_variance);
  r.success_probabilities = q.success_probabilities;
  if (with_timings) {
    r.timings = timings;
    r.timings.insert(r.timings.end(), q.timings.begin(), q.timings.end());
  }
  return r;
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["noise_variance"] = cfg.noise_variance;
  j["qpe_bits"] = cfg.qpe_bits;
  if (cfg.rotation_constant)
    j["rotation_constant"] = *cfg.rotation_constant;
  else
    j["rotation_constant"] = "auto";
  j["truncation_delta"] = cfg.truncation_delta;
  j["eigenvalue_mode"] = to_string(cfg.eigenvalue_mode);
  j["kernel_source"] = to_string(cfg.kernel_source);
  if (cfg.shots == 0)
    j["shots"] = "ideal";
  else
    j["shots"] = cfg.shots;
  j["seed"] = cfg.seed;
  return j;
}

RunConfig config_from_json(const nlohmann::ordered_json& j) {
  RunConfig c;
  c.noise_variance = j.at("noise_variance").get<double>();
  c.qpe_bits = j.at("qpe_bits").get<int>();
  const auto& rc = j.at("rotation_constant");
  if (rc.is_string()) {
    if (rc.get<std::string>() != "auto") throw InvalidArgument("rotation_constant must be a number or \"auto\"");
  } else {
    c.rotation_constant = rc.get<double>();
  }
  c.truncation_delta = j.at("truncation_delta").get<double>();
  c.eigenvalue_mode = parse_eigenvalue_mode(j.at("eigenvalue_mode").get<std::string>());
  c.kernel_source = parse_kernel_source(j.at("kernel_source").get<std::string>());
  const auto& shots = j.at("shots");
  if (shots.is_string()) {
    if (shots.get<std::string>() != "ideal") throw InvalidArgument("shots must be an integer or \"ideal\"");
  } else {
    c.shots = shots.get<std::uint64_t>();
  }
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

namespace {

nlohmann::ordered_json named_to_json(const NamedValues& v) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, x] : v) j[k] = x;
  return j;
}

NamedValues named_from_json(const nlohmann::ordered_json& j) {
  NamedValues out;
  for (auto it = j.begin(); it != j.end(); ++it) out.emplace_back(it.key(), it.value().get<double>());
  return out;
}

}  // namespace

nlohmann::ordered_json report_to_json(const ComparisonReport& r) {
  nlohmann::ordered_json j;
  j["classical_mean"] = r.classical_mean;
  j["classical_variance"] = r.classical_variance;
  j["quantum_mean"] = r.quantum_mean;
  j["quantum_variance"] = r.quantum_variance;
  j["abs_error_mean"] = r.abs_error_mean;
  j["abs_error_variance"] = r.abs_error_variance;
  j["success_probabilities"] = named_to_json(r.success_probabilities);
  j["config"] = config_to_json(r.config);
  if (!r.timings.empty()) j["timings"] = named_to_json(r.timings);
  return j;
}

ComparisonReport report_from_json(const nlohmann::ordered_json& j) {
  ComparisonReport r;
  try {
    r.classical_mean = j.at("classical_mean").get<double>();
    r.classical_variance = j.at("classical_variance").get<double>();
    r.quantum_mean = j.at("quantum_mean").get<double>();
    r.quantum_variance = j.at("quantum_variance").get<double>();
    r.abs_error_mean = j.at("abs_error_mean").get<double>();
    r.abs_error_variance = j.at("abs_error_variance").get<double>();
    r.success_probabilities = named_from_json(j.at("success_probabilities"));
    r.config = config_from_json(j.at("config"));
    if (j.contains("timings")) r.timings = named_from_json(j.at("timings"));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string dump_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace qgpr
