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

// Phase estimation on e^{-iKt}, eigenvalue-conditioned flag rotation by
// c / (lambda + sigma^2) and uncomputation, packaged as one unitary U with
// U |k>|0> = sum_j alpha_j |u_j> (sqrt(1 - a_j^2) |0> + a_j |1>).

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgpr/classical_gpr.hpp"
#include "qgpr/hamiltonian_sim.hpp"
#include "qgpr/statevector.hpp"

namespace qgpr {

struct QpeConfig {
  int n_bits = 8;                  ///< eigenvalue register width, 1..12
  double evolution_time = 0.0;     ///< base time t of e^{-iKt}
  double rotation_constant = 0.0;  ///< c
};

/// Register names the inversion unitary acts on.
struct InversionRegisters {
  std::string system = "system";
  std::string eigen = "eigen";
  std::string flag = "flag";
};

/// Branches with less probability than this count as unpopulated.
inline constexpr double kPopulatedThreshold = 1e-20;

/// lambda~ = x / 2^n * 2 pi / t.
double decode_eigenvalue(std::uint64_t register_value, const QpeConfig& cfg);

/// Checks the register width, a positive time and the absence of phase
/// wraparound (every eigenvalue of the oracle in [0, 2 pi / t)).
void validate_qpe(const EvolutionOracle& oracle, const QpeConfig& cfg);

/// Appends an n_bits eigenvalue register named "eigen" to a single-register
/// input and runs phase estimation: Hadamards, controlled powers of
/// e^{-iKt}, then a Fourier transform that reads lambda t / 2 pi.
StateVector phase_estimate(const EvolutionOracle& oracle, const StateVector& input, const QpeConfig& cfg);
/// Inverse of phase_estimate on a state with an "eigen" register.
StateVector inverse_phase_estimate(const EvolutionOracle& oracle, const StateVector& s, const QpeConfig& cfg);

struct ConditionedState {
  StateVector state;
};

/// Appends a "flag" qubit and rotates it by c / (lambda~ + noise) per
/// eigenvalue-register branch. Throws InvalidArgument when a populated branch
/// needs an amplitude above 1.
ConditionedState conditioned_rotation(const StateVector& s, const QpeConfig& cfg, double noise);

/// Maximal valid c for known spectrum: 0.99 (lambda_min + noise).
double default_rotation_constant(double lambda_min, double noise);

/// The conditioned-inversion unitary U. In exact mode it is built directly in
/// the eigenbasis (no eigenvalue register). In QPE mode it is the circuit
/// QPE -> rotation -> QPE^dagger and carries the eigenvalue register as an
/// ancilla that starts and (for dyadic spectra) ends in |0>.
class InversionUnitary {
 public:
  enum class Mode { exact, qpe };

  /// Throws InvalidArgument when |c / (lambda_j + noise)| > 1 for some j or
  /// the spectrum has a negative eigenvalue.
  static InversionUnitary exact(const KernelSystem& spectrum, double rotation_constant, double noise);
  /// Validates the rotation for every eigenvalue-register value, so c may not
  /// exceed noise (register value 0 decodes to lambda~ = 0).
  static InversionUnitary qpe(std::shared_ptr<const EvolutionOracle> oracle, const QpeConfig& cfg, double noise);

  Mode mode() const noexcept { return mode_; }
  int system_width() const noexcept { return system_width_; }
  int eigen_width() const noexcept { return mode_ == Mode::qpe ? cfg_.n_bits : 0; }
  double rotation_constant() const noexcept { return cfg_.rotation_constant; }
  double noise() const noexcept { return noise_; }
  const QpeConfig& config() const noexcept { return cfg_; }

  /// Registers (system, [eigen], flag) in that order.
  Layout layout(const InversionRegisters& regs = {}) const;

  StateVector apply(StateVector s, const InversionRegisters& regs = {}, const Controls& controls = {}) const;

  /// Dense matrix on layout(); refused above 4096 dimensions.
  UnitaryOp to_unitary(const InversionRegisters& regs = {}) const;

 private:
  InversionUnitary() = default;

  Mode mode_ = Mode::exact;
  int system_width_ = 0;
  double noise_ = 0.0;
  QpeConfig cfg_;
  Eigen::MatrixXcd exact_matrix_;               // exact mode, on (system, flag)
  std::shared_ptr<const EvolutionOracle> oracle_;
  std::vector<Eigen::MatrixXcd> powers_;        // e^{-iKtx}, x = 0 .. 2^n - 1
  std::vector<Eigen::MatrixXcd> inverse_powers_;
  std::vector<Eigen::MatrixXcd> rotations_;
};

/// Convenience wrapper mirroring the single-unitary view of the pipeline.
InversionUnitary build_inversion(std::shared_ptr<const EvolutionOracle> oracle, const QpeConfig& cfg, double noise);

}  // namespace qgpr
