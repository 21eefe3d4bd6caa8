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

// End-to-end quantum-simulated GPR and the comparison report.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qgpr/classical_gpr.hpp"
#include "qgpr/signed_inner_product.hpp"

namespace qgpr {

enum class EigenvalueMode { exact, qpe };
enum class KernelSource { classical, coherent };

std::string to_string(EigenvalueMode m);
std::string to_string(KernelSource k);
EigenvalueMode parse_eigenvalue_mode(const std::string& s);
KernelSource parse_kernel_source(const std::string& s);

struct RunConfig {
  double noise_variance = 0.1;
  int qpe_bits = 8;
  std::optional<double> rotation_constant;  ///< empty means auto
  double truncation_delta = 1e-6;
  EigenvalueMode eigenvalue_mode = EigenvalueMode::exact;
  KernelSource kernel_source = KernelSource::classical;
  std::uint64_t shots = 0;  ///< 0 means ideal probabilities
  std::uint64_t seed = 0;

  void validate() const;
};

using NamedValues = std::vector<std::pair<std::string, double>>;

/// Kernel quantities handed to the linear-algebra stage.
struct SystemInputs {
  Eigen::MatrixXd gram;            ///< K, M x M
  Eigen::VectorXd kernel_vector;   ///< k_*
  Eigen::VectorXd targets;         ///< y
  NamedValues success_probabilities;
};

struct QuantumResult {
  Prediction prediction;
  NamedValues success_probabilities;
  std::optional<InterferenceOutcome> mean_outcome;  ///< empty when y or k_* vanishes
  std::optional<InterferenceOutcome> variance_outcome;
  double rotation_constant = 0.0;
  double evolution_time = 0.0;  ///< 0 in exact mode
  int padded_size = 0;
  NamedValues timings;  ///< seconds per stage
};

/// Classical or coherent kernel construction. Coherent mode rescales
/// rho = K / M back to K and extracts k_* from the block-encoding.
SystemInputs build_system(const Dataset& d, const RunConfig& cfg);

/// Linear-algebra stages on a prepared system. `evolution_time` overrides
/// the automatic choice in QPE mode.
QuantumResult predict_system(const SystemInputs& in, const RunConfig& cfg,
                             std::optional<double> evolution_time = std::nullopt);

QuantumResult run_quantum(const Dataset& d, const RunConfig& cfg);
Prediction qgpr_predict(const Dataset& d, const RunConfig& cfg);

struct ComparisonReport {
  double classical_mean = 0.0;
  double classical_variance = 0.0;
  double quantum_mean = 0.0;
  double quantum_variance = 0.0;
  double abs_error_mean = 0.0;
  double abs_error_variance = 0.0;
  NamedValues success_probabilities;
  RunConfig config;
  NamedValues timings;  ///< empty unless requested
};

ComparisonReport compare(const Dataset& d, const RunConfig& cfg, bool with_timings = false);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json report_to_json(const ComparisonReport& r);
ComparisonReport report_from_json(const nlohmann::ordered_json& j);

/// Serialized form used by the CLI: two-space indent, fixed field order,
/// doubles printed with round-trip precision.
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace qgpr
