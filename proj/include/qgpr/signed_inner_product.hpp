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

// Sign-preserving interference circuits. A controlled inversion unitary U
// and a flag marker are combined with a swap between two ancilla qubits so
// that measuring the control qubit reveals Re<y,1| U |k,0>, including its sign.

#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "qgpr/qpe_conditioning.hpp"
#include "qgpr/statevector.hpp"

namespace qgpr {

enum class InterferenceMode { mean, variance };

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Finite-shot record of the control-qubit measurement.
struct ShotRecord {
  std::uint64_t shots = 0;
  std::uint64_t hits = 0;  ///< outcomes projected onto (|0> - |1>)/sqrt(2)
  Interval probability_interval;  ///< Wilson interval mapped to `probability`
};

struct InterferenceOutcome {
  double probability = 0.5;  ///< (1 + signed_sum) / 2
  double signed_sum = 0.0;   ///< 2 probability - 1
  double constant_used = 0.0;
  InterferenceMode mode = InterferenceMode::mean;
  std::optional<ShotRecord> shots;
};

/// Ideal probabilities when shots == 0.
struct Sampling {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  double wilson_z = 4.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t hits, std::uint64_t shots, double z);

/// Runs the five-register mean circuit on unit states |k> and |y>, each a
/// single register as wide as U's system register.
///
/// The control qubit is measured with M = |-><-|. Its raw probability is
/// (1 + Re<y,1|U|k,0>) / 4; half of the population sits in the even-parity
/// sector of the two swapped qubits where the projector never fires, so the
/// reported probability is the odd-parity conditional 2 P(-).
InterferenceOutcome mean_circuit(const InversionUnitary& u, const StateVector& k_state, const StateVector& y_state,
                                 const Sampling& sampling = {});

/// mean_circuit with y := k.
InterferenceOutcome variance_circuit(const InversionUnitary& u, const StateVector& k_state,
                                     const Sampling& sampling = {});

/// mean = signed_sum / c * |k| |y|.
double recover_mean(const InterferenceOutcome& o, double norm_k, double norm_y);
/// variance = 1 - signed_sum / c * |k|^2.
double recover_variance(const InterferenceOutcome& o, double norm_k);

/// <y, 0, 1| U |k, 0, 0> computed directly (reference for the circuit).
std::complex<double> branch_overlap(const InversionUnitary& u, const StateVector& k_state, const StateVector& y_state);
/// <y, 0, 0| U |k, 0, 0>, the flag-0 contribution.
std::complex<double> flag0_overlap_with_marker(const InversionUnitary& u, const StateVector& k_state,
                                               const StateVector& y_state);

/// Magnitude-only swap test: P(ancilla = 0) = (1 + |<a|b>|^2) / 2, simulated
/// on an ancilla plus two copies of the register.
double swap_test_probability(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

}  // namespace qgpr
