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

// Truncated coherent states and the training superposition whose reduced
// density operator on the index register is K / M for the squared-exponential
// kernel: <phi_x|phi_x'> = exp(-|x - x'|^2 / 2) for real coordinates.

#pragma once

#include <Eigen/Dense>

#include "qgpr/classical_gpr.hpp"
#include "qgpr/statevector.hpp"

namespace qgpr {

/// Largest |r| accepted before e^{-r^2/2} underflows.
inline constexpr double kMaxCoherentAmplitudeSq = 700.0;

struct TruncatedCoherentState {
  double r = 0.0;
  Eigen::VectorXd fock_amplitudes;  ///< T renormalized amplitudes
  int truncation = 1;
  double tail_bound = 0.0;    ///< r^{2T} / T!
  double error_budget = 0.0;  ///< sqrt(tail_bound)
};

/// Harmonic-oscillator ladder operators on the first `dimension` Fock levels.
struct LadderOperators {
  int dimension = 0;
  Eigen::MatrixXd annihilation;  ///< a|n> = sqrt(n)|n-1>
  Eigen::MatrixXd creation;      ///< transpose of a

  explicit LadderOperators(int dim);
};

/// r^{2T} / T!, the bound on the squared truncation error.
double tail_bound(double r, int truncation);
/// sum_{k >= T} e^{-r^2} r^{2k} / k!, summed term by term.
double exact_tail(double r, int truncation);

/// Smallest T >= 1 with r^{2T} / T! <= delta^2.
int truncation_level(double r, double delta);
/// truncation_level at the largest |coordinate| of all rows of `points`.
int truncation_for_points(const Eigen::MatrixXd& points, double delta);

TruncatedCoherentState coherent_state(double r, int truncation);

/// Applies exp(r (a^dagger - a)) at Fock cutoff truncation + 4 to |0> and keeps
/// the first `truncation` levels, renormalized.
TruncatedCoherentState displacement_prepare(double r, int truncation);

/// Width of one Fock register holding `truncation` levels.
int fock_register_width(int truncation);

/// N-fold product of per-coordinate truncated coherent states on registers
/// fock_0 ... fock_{N-1}.
StateVector encode_point(const Eigen::VectorXd& x, int truncation);

/// (1/sqrt(M)) sum_p |p>_index |phi_{x_p}> for the rows of `points`: a Fourier
/// transform on the index register (a uniform-superposition preparation when M
/// is not a power of two) followed by index-controlled Fock-state preparation.
StateVector training_superposition(const Eigen::MatrixXd& points, int truncation);
StateVector training_superposition(const Dataset& d, int truncation);

/// Reduced state of the index register.
DensityOperator kernel_density(const StateVector& psi);

/// M * rho restricted to the first M indices.
Eigen::MatrixXd kernel_from_density(const DensityOperator& rho, Eigen::Index m);

/// Rigorous bound 2 N sqrt(2 b_max) on |<phi~_p|phi~_q> - k(x_p, x_q)|, where
/// b_max is the largest per-coordinate tail bound.
double kernel_entry_error_bound(const Eigen::MatrixXd& points, int truncation);

/// Uniformly rescales inputs and test point so that max |coordinate| <= bound.
/// The kernel of the rescaled data differs from the original one.
struct RescaledDataset {
  Dataset data;
  double scale = 1.0;
};
RescaledDataset rescale_inputs(const Dataset& d, double bound = 2.0);

/// Unitary Householder reflection mapping |0> to the unit vector v.
Eigen::MatrixXcd householder_from_zero(const Eigen::VectorXcd& v);

}  // namespace qgpr
